"""Exception hierarchy shared by all csetkit modules."""


class CSetKitError(Exception):
    """Base class; the CLI maps every subclass to exit code 2."""


class CategoryError(CSetKitError):
    pass


class MissingIdentity(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class CompositionGap(CategoryError):
    pass


class EndpointMismatch(CategoryError):
    pass


class NotAGroup(CategoryError):
    pass


class NotClosed(CategoryError):
    pass


class NotAFunctor(CategoryError):
    pass


class NotConnected(CategoryError):
    pass


class EmptyCategory(CategoryError):
    pass


class CSetError(CSetKitError):
    pass


class IdentityNotIdentity(CSetError):
    pass


class CompositionMismatch(CSetError):
    pass


class NonTotalFunction(CSetError):
    pass


class BaseMismatch(CSetError):
    pass


class EmptyCSet(CSetError):
    pass


class TooLarge(CSetKitError):
    pass


class NotASubcategory(CSetError):
    pass


class NotNatural(CSetError):
    pass


class MiddleMismatch(CSetKitError):
    pass


class IllDefinedAction(CSetKitError):
    """A map on equivalence classes depended on the chosen representative."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class IllDefinedOnClasses(IllDefinedAction):
    pass


class IncompleteRegistry(CSetKitError):
    pass


class NotNonInvertible(CSetKitError):
    pass


class InjectivityFailed(CSetKitError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TheoremViolation(CSetKitError):
    """The four audited conditions disagreed; carries the partial report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SchemaError(CSetKitError):
    def __init__(self, message, location=None):
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location
