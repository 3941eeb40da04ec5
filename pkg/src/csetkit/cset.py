"""C-sets: functors from a finite category to finite sets.

A C-set stores one ordered carrier per object and one total function per
morphism. Elements are addressed as ``Elem(at, token)`` since tokens need
only be unique within a single carrier.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import (
    BaseMismatch,
    CompositionMismatch,
    CSetError,
    EmptyCSet,
    IdentityNotIdentity,
    NonTotalFunction,
    NotASubcategory,
    NotNatural,
    TooLarge,
)
from .fincat import Category, Walk, is_subcategory

SUBFUNCTOR_BOUND = 12


class Elem(NamedTuple):
    at: str
    token: str


class CSet:
    """A validated functor ``base -> FinSet``."""

    def __init__(self, base: Category, carrier: Mapping[str, Sequence[str]],
                 action: Mapping[str, Mapping[str, str]], *, check: bool = True):
        self.base = base
        self.carrier = {x: tuple(carrier.get(x, ())) for x in base.objects}
        self.action = {}
        for f in base.morphisms:
            if f in action:
                self.action[f] = dict(action[f])
            elif base.is_identity(f):
                self.action[f] = {a: a for a in self.carrier[base.src[f]]}
            else:
                self.action[f] = None
        if check:
            self._validate()
        self._index = {x: {a: i for i, a in enumerate(toks)} for x, toks in self.carrier.items()}
        self._pre = None

    def _validate(self):
        C = self.base
        for x, toks in self.carrier.items():
            if len(set(toks)) != len(toks):
                raise CSetError(f"duplicate element token in carrier of {x!r}")
        for f in C.morphisms:
            fn = self.action[f]
            if fn is None:
                raise NonTotalFunction(f"no action given for morphism {f!r}")
            dom, cod = self.carrier[C.src[f]], set(self.carrier[C.tgt[f]])
            if set(fn) != set(dom):
                raise NonTotalFunction(f"action of {f!r} is not defined exactly on the carrier of {C.src[f]!r}")
            bad = [b for b in fn.values() if b not in cod]
            if bad:
                raise NonTotalFunction(f"action of {f!r} leaves the carrier of {C.tgt[f]!r}: {bad[0]!r}")
        for x in C.objects:
            fn = self.action[C.identity[x]]
            if any(fn[a] != a for a in self.carrier[x]):
                raise IdentityNotIdentity(f"identity of {x!r} does not act as the identity")
        for (f, g), h in C.table.items():
            af, ag, ah = self.action[f], self.action[g], self.action[h]
            for a in self.carrier[C.src[f]]:
                if ag[af[a]] != ah[a]:
                    raise CompositionMismatch(f"action of {f!r} then {g!r} differs from {h!r} at {a!r}")

    # element access

    def __call__(self, f: str, token: str) -> str:
        return self.action[f][token]

    def elements(self) -> Iterator[Elem]:
        for x in self.base.objects:
            for a in self.carrier[x]:
                yield Elem(x, a)

    def size(self) -> int:
        return sum(len(t) for t in self.carrier.values())

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(self.carrier[x]) for x in self.base.objects)

    def is_empty(self) -> bool:
        return self.size() == 0

    def elem_key(self, e: Elem) -> tuple[int, int]:
        return (self.base.obj_index(e.at), self._index[e.at][e.token])

    def preimage(self, f: str, token: str) -> list[str]:
        if self._pre is None:
            pre = {f: {} for f in self.base.morphisms}
            for g, fn in self.action.items():
                for a, b in fn.items():
                    pre[g].setdefault(b, []).append(a)
            self._pre = pre
        return self._pre[f].get(token, [])

    def whole(self) -> "SubCSet":
        return SubCSet(self, {x: frozenset(t) for x, t in self.carrier.items()})

    def __eq__(self, other):
        if not isinstance(other, CSet):
            return NotImplemented
        return self.base == other.base and self.carrier == other.carrier and self.action == other.action

    def __hash__(self):
        return hash((self.base, tuple(self.carrier.items())))

    def __repr__(self):
        sizes = ", ".join(f"{x}:{len(t)}" for x, t in self.carrier.items())
        return f"CSet({sizes})"


def validate_cset(C: Category, carrier: Mapping[str, Sequence[str]],
                  action: Mapping[str, Mapping[str, str]]) -> CSet:
    """Check functoriality exhaustively; identity actions may be omitted."""
    unknown = [x for x in carrier if x not in C.identity]
    if unknown:
        raise CSetError(f"carrier given for unknown object {unknown[0]!r}")
    unknown = [f for f in action if f not in C.src]
    if unknown:
        raise CSetError(f"action given for unknown morphism {unknown[0]!r}")
    return CSet(C, carrier, action)


class SubCSet:
    """A per-object subset family of a parent C-set, closed under the action."""

    def __init__(self, parent: CSet, subset: Mapping[str, Iterable[str]], *, check: bool = True):
        self.parent = parent
        self.subset = {x: frozenset(subset.get(x, ())) for x in parent.base.objects}
        if check and not self.is_closed():
            raise CSetError("subset family is not closed under the action")

    def is_closed(self) -> bool:
        C, P = self.parent.base, self.parent
        for f in C.morphisms:
            tgt = self.subset[C.tgt[f]]
            if any(P(f, a) not in tgt for a in self.subset[C.src[f]]):
                return False
        return True

    def __contains__(self, e: Elem) -> bool:
        return e.token in self.subset[e.at]

    def size(self) -> int:
        return sum(len(s) for s in self.subset.values())

    def is_empty(self) -> bool:
        return self.size() == 0

    def is_whole(self) -> bool:
        return self.size() == self.parent.size()

    def issubset(self, other: "SubCSet") -> bool:
        return all(self.subset[x] <= other.subset[x] for x in self.subset)

    def as_cset(self) -> CSet:
        P = self.parent
        carrier = {x: [a for a in P.carrier[x] if a in self.subset[x]] for x in P.base.objects}
        action = {f: {a: P(f, a) for a in carrier[P.base.src[f]]} for f in P.base.morphisms}
        return CSet(P.base, carrier, action, check=False)

    def elements(self) -> list[Elem]:
        return [e for e in self.parent.elements() if e in self]

    def _frozen(self):
        return tuple(sorted((x, tuple(sorted(s))) for x, s in self.subset.items()))

    def __eq__(self, other):
        if not isinstance(other, SubCSet):
            return NotImplemented
        return self.subset == other.subset

    def __hash__(self):
        return hash(self._frozen())

    def __repr__(self):
        body = ", ".join(f"{x}:{sorted(s)}" for x, s in self.subset.items())
        return f"SubCSet({body})"


class NatTrans:
    """A natural transformation given by per-object component functions."""

    def __init__(self, src: CSet, tgt: CSet, component: Mapping[str, Mapping[str, str]], *, check: bool = True):
        if src.base != tgt.base:
            raise BaseMismatch("natural transformation between C-sets over different categories")
        self.src, self.tgt = src, tgt
        self.component = {x: dict(component.get(x, {})) for x in src.base.objects}
        if check:
            self.validate()

    def validate(self):
        C = self.src.base
        for x in C.objects:
            comp = self.component[x]
            if set(comp) != set(self.src.carrier[x]):
                raise NotNatural(f"component at {x!r} is not total")
            if any(b not in self.tgt._index[x] for b in comp.values()):
                raise NotNatural(f"component at {x!r} leaves the target carrier")
        for f in C.morphisms:
            x, y = C.src[f], C.tgt[f]
            for a in self.src.carrier[x]:
                if self.component[y][self.src(f, a)] != self.tgt(f, self.component[x][a]):
                    raise NotNatural(f"naturality square for {f!r} fails at {a!r}")

    def __call__(self, x: str, token: str) -> str:
        return self.component[x][token]

    def is_injective_at(self, x: str) -> bool:
        vals = list(self.component[x].values())
        return len(set(vals)) == len(vals)

    def injective_components(self) -> dict[str, bool]:
        return {x: self.is_injective_at(x) for x in self.src.base.objects}

    def is_injective(self) -> bool:
        return all(self.injective_components().values())

    def is_bijective(self) -> bool:
        return self.is_injective() and self.src.sizes() == self.tgt.sizes()

    def then(self, other: "NatTrans") -> "NatTrans":
        comp = {x: {a: other.component[x][b] for a, b in c.items()} for x, c in self.component.items()}
        return NatTrans(self.src, other.tgt, comp, check=False)

    def inverse(self) -> "NatTrans":
        if not self.is_bijective():
            raise NotNatural("only bijective transformations can be inverted")
        comp = {x: {b: a for a, b in c.items()} for x, c in self.component.items()}
        return NatTrans(self.tgt, self.src, comp)

    def image(self) -> SubCSet:
        return SubCSet(self.tgt, {x: set(c.values()) for x, c in self.component.items()})

    def key(self) -> tuple:
        return tuple((x, tuple(sorted(c.items()))) for x, c in self.component.items())

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return self.src == other.src and self.tgt == other.tgt and self.component == other.component

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"NatTrans({self.component})"


def identity_nat(A: CSet) -> NatTrans:
    return NatTrans(A, A, {x: {a: a for a in t} for x, t in A.carrier.items()}, check=False)


# constructors

def empty_cset(C: Category) -> CSet:
    return CSet(C, {}, {f: {} for f in C.morphisms})


def point_cset(C: Category, token: str = "*") -> CSet:
    """Terminal C-set: a singleton at every object."""
    return CSet(C, {x: [token] for x in C.objects}, {f: {token: token} for f in C.morphisms})


def representable(C: Category, x: str) -> CSet:
    """Hom(x, -) with morphisms acting by post-composition."""
    carrier = {y: list(C.hom(x, y)) for y in C.objects}
    action = {f: {g: C.compose(g, f) for g in carrier[C.src[f]]} for f in C.morphisms}
    return CSet(C, carrier, action, check=False)


def _same_base(A: CSet, B: CSet):
    if A.base != B.base:
        raise BaseMismatch("C-sets live over different categories")


def disjoint_union(A: CSet, B: CSet) -> CSet:
    _same_base(A, B)
    C = A.base
    carrier = {x: [f"L:{a}" for a in A.carrier[x]] + [f"R:{b}" for b in B.carrier[x]] for x in C.objects}
    action = {}
    for f in C.morphisms:
        fn = {f"L:{a}": f"L:{A(f, a)}" for a in A.carrier[C.src[f]]}
        fn.update({f"R:{b}": f"R:{B(f, b)}" for b in B.carrier[C.src[f]]})
        action[f] = fn
    return CSet(C, carrier, action, check=False)


def disjoint_union_all(parts: Sequence[CSet], base: Category | None = None) -> CSet:
    if not parts:
        if base is None:
            raise CSetError("empty union needs a base category")
        return empty_cset(base)
    out = parts[0]
    for p in parts[1:]:
        out = disjoint_union(out, p)
    return out


def pointwise_product(A: CSet, B: CSet) -> CSet:
    _same_base(A, B)
    C = A.base
    carrier, pairs = {}, {}
    for x in C.objects:
        toks = [f"({a},{b})" for a in A.carrier[x] for b in B.carrier[x]]
        if len(set(toks)) != len(toks):
            raise CSetError(f"product tokens collide at {x!r}")
        carrier[x] = toks
        pairs[x] = [(a, b) for a in A.carrier[x] for b in B.carrier[x]]
    action = {}
    for f in C.morphisms:
        x = C.src[f]
        action[f] = {t: f"({A(f, a)},{B(f, b)})" for t, (a, b) in zip(carrier[x], pairs[x])}
    return CSet(C, carrier, action, check=False)


def relabel(A: CSet, prefix: str = "", start: int = 1) -> CSet:
    """Rename tokens to consecutive integers per object (optionally prefixed)."""
    ren = {x: {a: f"{prefix}{i}" for i, a in enumerate(t, start)} for x, t in A.carrier.items()}
    C = A.base
    carrier = {x: list(ren[x].values()) for x in C.objects}
    action = {f: {ren[C.src[f]][a]: ren[C.tgt[f]][b] for a, b in A.action[f].items()} for f in C.morphisms}
    return CSet(C, carrier, action, check=False)


# sub-C-sets

def _check_elem(O: CSet, u: Elem):
    if u.at not in O.carrier or u.token not in O._index[u.at]:
        raise CSetError(f"{u!r} is not an element of the C-set")


def generated_subset(O: CSet, u: Elem) -> SubCSet:
    """Everything reachable from ``u`` by applying single morphisms."""
    _check_elem(O, u)
    C = O.base
    sub = {y: {O(f, u.token) for f in C.hom(u.at, y)} for y in C.objects}
    return SubCSet(O, sub, check=False)


def walk_orbit(O: CSet, u: Elem) -> SubCSet:
    """Closure of ``{u}`` under images and full preimages of every morphism."""
    _check_elem(O, u)
    C = O.base
    seen = {x: set() for x in C.objects}
    seen[u.at].add(u.token)
    queue = deque([u])
    while queue:
        x, a = queue.popleft()
        nbrs = [(C.tgt[f], O(f, a)) for f in C.out_of(x)]
        nbrs += [(C.src[f], b) for f in C.into(x) for b in O.preimage(f, a)]
        for y, b in nbrs:
            if b not in seen[y]:
                seen[y].add(b)
                queue.append(Elem(y, b))
    return SubCSet(O, seen, check=False)


def walk_image(O: CSet, w: Walk, tokens: Iterable[str]) -> set[str]:
    """Set-valued action of a walk: forward steps map, backward steps take preimages."""
    C = O.base
    w.end(C)
    here = set(tokens)
    for f, forward in w.steps:
        if forward:
            here = {O(f, a) for a in here}
        else:
            here = {b for a in here for b in O.preimage(f, a)}
        if not here:
            break
    return here


def decompose(O: CSet) -> list[CSet]:
    """Indecomposable components, ordered by their least element."""
    comps = []
    covered = {x: set() for x in O.base.objects}
    for e in O.elements():
        if e.token in covered[e.at]:
            continue
        orb = walk_orbit(O, e)
        for x, s in orb.subset.items():
            covered[x] |= s
        comps.append(orb.as_cset())
    return comps


def component_subsets(O: CSet) -> list[SubCSet]:
    comps = []
    covered = {x: set() for x in O.base.objects}
    for e in O.elements():
        if e.token not in covered[e.at]:
            orb = walk_orbit(O, e)
            for x, s in orb.subset.items():
                covered[x] |= s
            comps.append(orb)
    return comps


def is_indecomposable(O: CSet) -> bool:
    first = next(O.elements(), None)
    if first is None:
        return False
    return walk_orbit(O, first).is_whole()


def is_simple(O: CSet) -> bool:
    if O.is_empty():
        raise EmptyCSet("simplicity is only defined for non-empty C-sets")
    return all(generated_subset(O, e).is_whole() for e in O.elements())


def enumerate_subfunctors(O: CSet, bound: int = SUBFUNCTOR_BOUND) -> list[SubCSet]:
    """Every closed per-object subset family, found by brute force over all families."""
    if O.size() > bound:
        raise TooLarge(f"C-set has {O.size()} elements, over the bound {bound}")
    elems = list(O.elements())
    C = O.base
    found = []
    for mask in range(1 << len(elems)):
        sub = {x: set() for x in C.objects}
        for i, e in enumerate(elems):
            if mask >> i & 1:
                sub[e.at].add(e.token)
        if all(O(f, a) in sub[C.tgt[f]] for f in C.morphisms for a in sub[C.src[f]]):
            found.append(SubCSet(O, sub, check=False))
    return found


def restrict(O: CSet, D: Category) -> CSet:
    """Restriction of a C-set along a subcategory inclusion."""
    if not is_subcategory(D, O.base):
        raise NotASubcategory("target category is not a subcategory of the base")
    carrier = {x: O.carrier[x] for x in D.objects}
    action = {f: O.action[f] for f in D.morphisms}
    return CSet(D, carrier, action, check=False)


# isomorphism

def _element_profile(O: CSet, e: Elem) -> tuple:
    C = O.base
    pre = tuple(len(O.preimage(f, e.token)) for f in C.into(e.at))
    fixed = tuple(O(f, e.token) == e.token for f in C.hom(e.at, e.at))
    return (pre, fixed)


def invariant(O: CSet) -> tuple:
    """Isomorphism invariant: carrier sizes, image sizes and element profiles."""
    C = O.base
    images = tuple(len(set(O.action[f].values())) for f in C.morphisms)
    profiles = tuple(
        tuple(sorted(Counter(_element_profile(O, Elem(x, a)) for a in O.carrier[x]).items()))
        for x in C.objects
    )
    return (O.sizes(), images, profiles)


def are_isomorphic(A: CSet, B: CSet) -> NatTrans | None:
    """A natural isomorphism A -> B, or None; backtracking with forward propagation."""
    _same_base(A, B)
    if A.sizes() != B.sizes():
        return None
    if invariant(A) != invariant(B):
        return None
    C = A.base
    prof_a = {e: _element_profile(A, e) for e in A.elements()}
    prof_b = {e: _element_profile(B, e) for e in B.elements()}
    order = list(A.elements())
    fwd: dict[Elem, Elem] = {}
    used: set[Elem] = set()

    def assign(a: Elem, b: Elem, trail: list) -> bool:
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            if a in fwd:
                if fwd[a] != b:
                    return False
                continue
            if b in used or prof_a[a] != prof_b[b]:
                return False
            fwd[a] = b
            used.add(b)
            trail.append(a)
            for f in C.out_of(a.at):
                y = C.tgt[f]
                stack.append((Elem(y, A(f, a.token)), Elem(y, B(f, b.token))))
        return True

    def undo(trail):
        for a in trail:
            used.discard(fwd.pop(a))

    def search(i: int) -> bool:
        while i < len(order) and order[i] in fwd:
            i += 1
        if i == len(order):
            return True
        a = order[i]
        for tok in B.carrier[a.at]:
            b = Elem(a.at, tok)
            if b in used:
                continue
            trail: list = []
            if assign(a, b, trail) and search(i + 1):
                return True
            undo(trail)
        return False

    if not search(0):
        return None
    comp = {x: {} for x in C.objects}
    for a, b in fwd.items():
        comp[a.at][a.token] = b.token
    return NatTrans(A, B, comp)


def natural_transformations(A: CSet, B: CSet, limit: int | None = None) -> list[NatTrans]:
    """All natural transformations A -> B.

    Elements of A are assigned in canonical order; each assignment forces the
    images of everything it generates. Raises TooLarge past ``limit`` results.
    """
    _same_base(A, B)
    C = A.base
    order = list(A.elements())
    fwd: dict[Elem, str] = {}
    out: list[NatTrans] = []

    def assign(a: Elem, b: str, trail: list) -> bool:
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            if a in fwd:
                if fwd[a] != b:
                    return False
                continue
            fwd[a] = b
            trail.append(a)
            for f in C.out_of(a.at):
                stack.append((Elem(C.tgt[f], A(f, a.token)), B(f, b)))
        return True

    def search(i: int):
        while i < len(order) and order[i] in fwd:
            i += 1
        if i == len(order):
            comp = {x: {} for x in C.objects}
            for a, b in fwd.items():
                comp[a.at][a.token] = b
            out.append(NatTrans(A, B, comp, check=False))
            if limit is not None and len(out) > limit:
                raise TooLarge(f"more than {limit} natural transformations")
            return
        a = order[i]
        for b in B.carrier[a.at]:
            trail: list = []
            if assign(a, b, trail):
                search(i + 1)
            for e in trail:
                del fwd[e]

    search(0)
    return out


def iso_classes(items: Iterable[CSet]) -> list[list[CSet]]:
    """Group C-sets into isomorphism classes, preserving first-seen order."""
    classes: list[list[CSet]] = []
    keys: list[tuple] = []
    for O in items:
        inv = invariant(O)
        for k, cls in zip(keys, classes):
            if k == inv and are_isomorphic(cls[0], O) is not None:
                cls.append(O)
                break
        else:
            classes.append([O])
            keys.append(inv)
    return classes


def multiset_of_classes(parts: Sequence[CSet], reps: Sequence[CSet]) -> list[int]:
    """Multiplicity of each representative's class among ``parts``."""
    counts = [0] * len(reps)
    for p in parts:
        for i, r in enumerate(reps):
            if are_isomorphic(p, r) is not None:
                counts[i] += 1
                break
        else:
            raise CSetError("part matches no representative")
    return counts
