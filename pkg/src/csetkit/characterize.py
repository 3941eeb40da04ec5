"""Audit of the groupoid characterization on a finite connected category.

The four conditions checked are: (i) semisimple, (ii) finite type,
(iii) groupoid, (iv) the subset generated by any element equals its walk
orbit. On a finite connected category they must agree; a disagreement is
raised as TheoremViolation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .adjunction import AdjunctionContext, evaluation, induce_functor, unit, unit_class
from .cset import (
    CSet,
    Elem,
    SubCSet,
    are_isomorphic,
    component_subsets,
    decompose,
    disjoint_union,
    generated_subset,
    is_indecomposable,
    is_simple,
    pointwise_product,
    representable,
    restrict,
    walk_orbit,
)
from .errors import (
    CSetKitError,
    EmptyCategory,
    InjectivityFailed,
    NotConnected,
    NotNonInvertible,
    TheoremViolation,
)
from .fincat import (
    Category,
    connected_components,
    full_subcategory,
    generated_subcategory,
    inverse_of,
    is_connected,
    is_groupoid,
    left_inverses,
    right_inverses,
)


class EmptyCorpus(CSetKitError):
    pass


@dataclass(frozen=True)
class NonInvertible:
    morphism: str
    side: str  # "no-left-inverse" or "no-right-inverse"
    no_left_inverse: bool
    no_right_inverse: bool


def find_noninvertible(C: Category) -> NonInvertible | None:
    """First non-isomorphism, preferring one without a left inverse.

    A non-groupoid always has such a morphism: if f has a left inverse g but
    is not invertible, then g itself has no left inverse.
    """
    fallback = None
    for f in C.morphisms:
        if inverse_of(C, f) is not None:
            continue
        no_left = not left_inverses(C, f)
        no_right = not right_inverses(C, f)
        side = "no-left-inverse" if no_left else "no-right-inverse"
        hit = NonInvertible(f, side, no_left, no_right)
        if no_left:
            return hit
        fallback = fallback or hit
    return fallback


# condition (iv)

@dataclass
class ConditionIVResult:
    passed: bool
    checked_csets: int
    checked_elements: int
    counterexample: dict | None = None


def default_corpus(C: Category) -> list[CSet]:
    """Representables Hom(x, -) plus their pairwise disjoint unions and products."""
    reps = [representable(C, x) for x in C.objects]
    corpus = list(reps)
    for i in range(len(reps)):
        for j in range(i, len(reps)):
            corpus.append(disjoint_union(reps[i], reps[j]))
            corpus.append(pointwise_product(reps[i], reps[j]))
    return corpus


def check_condition_iv(C: Category, corpus: Sequence[CSet]) -> ConditionIVResult:
    """Compare generated subsets with walk orbits element by element."""
    if not corpus:
        raise EmptyCorpus("condition (iv) needs at least one C-set to examine")
    n_elems = 0
    for idx, O in enumerate(corpus):
        for e in O.elements():
            n_elems += 1
            gen, orb = generated_subset(O, e), walk_orbit(O, e)
            if gen != orb:
                y = next(y for y in C.objects if gen.subset[y] != orb.subset[y])
                missing = sorted(orb.subset[y] - gen.subset[y], key=O._index[y].get)
                return ConditionIVResult(False, idx + 1, n_elems, {
                    "corpus_index": idx,
                    "object": e.at,
                    "element": e.token,
                    "differs_at": y,
                    "generated": sorted(gen.subset[y], key=O._index[y].get),
                    "orbit": sorted(orb.subset[y], key=O._index[y].get),
                    "orbit_not_generated": missing,
                })
    return ConditionIVResult(True, len(corpus), n_elems)


# infinite-type witness

def omega_family(D: Category, alpha: str, n: int) -> CSet:
    """The n-th indecomposable D-set of the witness family.

    For alpha: x -> y with x != y: n points over x all sent to one point over y.
    For a loop: n points, every non-identity morphism sending all of them to point 1.
    """
    x, y = D.src[alpha], D.tgt[alpha]
    pts = [str(i) for i in range(1, n + 1)]
    if x != y:
        return CSet(D, {x: pts, y: ["1"]}, {alpha: {p: "1" for p in pts}})
    action = {f: {p: "1" for p in pts} for f in D.morphisms if not D.is_identity(f)}
    return CSet(D, {x: pts}, action)


@dataclass
class WitnessEntry:
    n: int
    omega: CSet
    component: CSet
    restriction_size: int
    embedding: dict


@dataclass
class InfiniteTypeCertificate:
    category: Category
    morphism: str
    requested_morphism: str
    subcategory: Category
    entries: list[WitnessEntry] = field(default_factory=list)

    def restriction_sizes(self) -> list[int]:
        return [e.restriction_size for e in self.entries]

    def components(self) -> list[CSet]:
        return [e.component for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "morphism": self.morphism,
            "requested_morphism": self.requested_morphism,
            "subcategory_morphisms": list(self.subcategory.morphisms),
            "entries": [
                {"n": e.n, "component_sizes": dict(zip(self.category.objects, e.component.sizes())),
                 "restriction_size": e.restriction_size, "embedding": e.embedding}
                for e in self.entries
            ],
        }


def _witness_entry(ctx: AdjunctionContext, alpha: str, n: int) -> WitnessEntry:
    D = ctx.D
    Om = omega_family(D, alpha, n)
    eta = unit(ctx, Om)
    inj = eta.injective_components()
    if not all(inj.values()):
        bad = next(x for x, ok in inj.items() if not ok)
        raise InjectivityFailed(f"unit of Ω_{n} is not injective at {bad!r}", witness=(n, bad))
    iO = induce_functor(ctx, Om)
    # Ω -> r(i(Ω)) -> i(Ω)|_D, all elements of Ω land in one C-component
    into = eta.then(evaluation(ctx, iO))
    x = D.src[alpha]
    seed = Elem(x, unit_class(ctx, Om, x, Om.carrier[x][0]))
    comp = next(c for c in component_subsets(iO) if seed in c)
    Psi = comp.as_cset()
    PsiD = restrict(Psi, D)
    image = SubCSet(PsiD, {z: set(m.values()) for z, m in into.component.items()})
    if not image.is_closed() or are_isomorphic(image.as_cset(), Om) is None:
        raise InjectivityFailed(f"no copy of Ω_{n} inside the chosen component")
    if not is_indecomposable(Psi):
        raise InjectivityFailed("chosen component is not indecomposable")
    return WitnessEntry(n, Om, Psi, PsiD.size(), {z: dict(m) for z, m in into.component.items()})


def witness_infinite_type(C: Category, alpha: str, n_max: int = 3) -> InfiniteTypeCertificate:
    """Pairwise non-isomorphic indecomposable C-sets of strictly growing size over ⟨alpha⟩.

    Each Ω_n over the subcategory generated by alpha is induced up to C; the
    component of i(Ω_n) holding the unit image restricts to something
    containing Ω_n. If a restriction does not grow, n is raised past the
    largest size seen so far.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    requested = alpha
    if inverse_of(C, alpha) is not None:
        raise NotNonInvertible(f"{alpha!r} is an isomorphism")
    lefts = left_inverses(C, alpha)
    if lefts:
        # a left inverse of a non-isomorphism has no left inverse itself
        alpha = lefts[0]
    D = generated_subcategory(C, [alpha])
    ctx = AdjunctionContext(C, D)
    cert = InfiniteTypeCertificate(C, alpha, requested, D)
    n, largest = 1, 0
    while len(cert.entries) < n_max:
        entry = _witness_entry(ctx, alpha, max(n, largest))
        if entry.restriction_size <= largest:
            n = entry.n + 1
            continue
        cert.entries.append(entry)
        largest = entry.restriction_size
        n = entry.n + 1
    comps = cert.components()
    for i in range(len(comps)):
        for j in range(i):
            if are_isomorphic(comps[i], comps[j]) is not None:
                raise InjectivityFailed(f"witness components {j} and {i} are isomorphic")
    return cert


# the audit

VERDICT_KEYS = ("semisimple", "finite_type", "groupoid", "orbit_equals_generated")


@dataclass
class AuditReport:
    verdicts: dict[str, bool]
    routes: dict[str, str]
    witnesses: dict[str, object]
    corpus_size: int
    consistent: bool

    def to_dict(self) -> dict:
        wit = {}
        for k, v in self.witnesses.items():
            wit[k] = v.to_dict() if hasattr(v, "to_dict") else v
        return {
            "verdicts": self.verdicts,
            "routes": self.routes,
            "witnesses": wit,
            "corpus_size": self.corpus_size,
            "consistent": self.consistent,
        }

    @property
    def all_true(self) -> bool:
        return all(self.verdicts.values())

    @property
    def all_false(self) -> bool:
        return not any(self.verdicts.values())

    def render(self) -> str:
        labels = {
            "semisimple": "(i)   semisimple",
            "finite_type": "(ii)  finite type",
            "groupoid": "(iii) groupoid",
            "orbit_equals_generated": "(iv)  generated = walk orbit",
        }
        lines = []
        for k in VERDICT_KEYS:
            lines.append(f"{labels[k]:<32} {'yes' if self.verdicts[k] else 'no':<4} {self.routes[k]}")
        lines.append(f"corpus size: {self.corpus_size}; consistent: {self.consistent}")
        for k, v in self.witnesses.items():
            if k == "infinite_type":
                lines.append(f"infinite-type witness along {v.morphism!r}: restriction sizes {v.restriction_sizes()}")
            else:
                lines.append(f"{k}: {v}")
        return "\n".join(lines)


def _first_non_simple(candidates: Sequence[CSet]):
    for k, O in enumerate(candidates):
        for part in decompose(O):
            if not is_simple(part):
                return k, part
    return None


def audit(C: Category, n_max: int = 3, corpus: Sequence[CSet] = ()) -> AuditReport:
    if not C.objects:
        raise EmptyCategory("the audit needs a non-empty category")
    if not is_connected(C):
        raise NotConnected("audit one connected component at a time (see audit_components)")
    from .burnside import enumerate_indecomposables

    base_corpus = default_corpus(C) + list(corpus)
    verdicts, routes, witnesses = {}, {}, {}
    verdicts["groupoid"] = is_groupoid(C)
    routes["groupoid"] = "direct inverse search over all morphisms"
    result = enumerate_indecomposables(C, n_max)
    if verdicts["groupoid"]:
        reps = result.reps
        verdicts["finite_type"] = True
        routes["finite_type"] = f"exhaustive enumeration: {len(reps)} indecomposable classes"
        found = _first_non_simple(list(reps) + base_corpus)
        verdicts["semisimple"] = found is None
        routes["semisimple"] = "every enumerated indecomposable and corpus component is simple" \
            if found is None else "an enumerated indecomposable is not simple"
        if found is not None:
            witnesses["indecomposable_not_simple"] = repr(found[1])
        iv = check_condition_iv(C, base_corpus + list(reps))
    else:
        nonin = find_noninvertible(C)
        witnesses["noninvertible"] = {"morphism": nonin.morphism, "side": nonin.side}
        verdicts["finite_type"] = False
        routes["finite_type"] = f"witness family of {len(result.entries)} growing indecomposables"
        witnesses["infinite_type"] = result
        found = _first_non_simple(result.components() + base_corpus)
        verdicts["semisimple"] = found is None
        if found is not None:
            src = "witness family" if found[0] < len(result.entries) else "corpus"
            routes["semisimple"] = f"indecomposable, non-simple member found in the {src}"
            witnesses["indecomposable_not_simple"] = {
                "sizes": dict(zip(C.objects, found[1].sizes())),
                "source": src,
            }
        else:
            routes["semisimple"] = "no non-simple indecomposable found"
        iv = check_condition_iv(C, base_corpus)
    verdicts["orbit_equals_generated"] = iv.passed
    routes["orbit_equals_generated"] = (
        f"all {iv.checked_elements} elements of {iv.checked_csets} corpus C-sets agree"
        if iv.passed else "counterexample in the representable corpus"
    )
    if iv.counterexample is not None:
        witnesses["condition_iv"] = iv.counterexample
    verdicts = {k: verdicts[k] for k in VERDICT_KEYS}
    consistent = len(set(verdicts.values())) == 1
    report = AuditReport(verdicts, routes, witnesses, len(base_corpus), consistent)
    if not consistent:
        raise TheoremViolation(f"audited conditions disagree: {verdicts}", report=report)
    return report


def audit_components(C: Category, n_max: int = 3) -> list[tuple[list[str], AuditReport]]:
    """Split into connected components and audit each one."""
    return [(objs, audit(full_subcategory(C, objs), n_max)) for objs in connected_components(C)]
