"""Induction and restriction along a subcategory inclusion, realised by biset
composition, with the explicit hom-set bijections and the unit."""

from __future__ import annotations

from dataclasses import dataclass, field

from .biset import (
    ComposedBiset,
    biset_as_cset,
    compose_bisets,
    cset_as_biset,
    induction_biset,
    restriction_biset,
)
from .cset import CSet, NatTrans, natural_transformations, restrict
from .errors import BaseMismatch, IllDefinedOnClasses
from .fincat import Category, inclusion

HOM_BOUND = 10_000


class AdjunctionContext:
    """A category C with a subcategory D; caches the two hom-bisets and composites."""

    def __init__(self, C: Category, D: Category):
        self.C, self.D = C, D
        self.iota = inclusion(D, C)
        self.res_biset = restriction_biset(D, C)
        self.ind_biset = induction_biset(C, D)
        self._r: dict[CSet, ComposedBiset] = {}
        self._i: dict[CSet, ComposedBiset] = {}

    def r_biset(self, Psi: CSet) -> ComposedBiset:
        if Psi.base != self.C:
            raise BaseMismatch("restriction expects a C-set over the ambient category")
        if Psi not in self._r:
            self._r[Psi] = compose_bisets(self.res_biset, cset_as_biset(Psi))
        return self._r[Psi]

    def i_biset(self, Om: CSet) -> ComposedBiset:
        if Om.base != self.D:
            raise BaseMismatch("induction expects a D-set over the subcategory")
        if Om not in self._i:
            self._i[Om] = compose_bisets(self.ind_biset, cset_as_biset(Om))
        return self._i[Om]


_STAR = "*"


def restrict_functor(ctx: AdjunctionContext, Psi: CSet) -> CSet:
    """r(Ψ) = (D C C) ×_C Ψ."""
    return biset_as_cset(ctx.r_biset(Psi))


def plain_restriction(ctx: AdjunctionContext, Psi: CSet) -> CSet:
    return restrict(Psi, ctx.D)


def induce_functor(ctx: AdjunctionContext, Om: CSet) -> CSet:
    """i(Ω) = (C C D) ×_D Ω; elements are classes [f, b] with f: z -> y in C and b ∈ Ω(z)."""
    return biset_as_cset(ctx.i_biset(Om))


def evaluation(ctx: AdjunctionContext, Psi: CSet) -> NatTrans:
    """The comparison r(Ψ) -> Ψ|_D sending [g, c] to g·c."""
    rb = ctx.r_biset(Psi)
    comp = {}
    for x in ctx.D.objects:
        comp[x] = {}
        for cl in rb.classes[x, _STAR]:
            vals = {Psi(g, c) for _, g, c in cl.members}
            if len(vals) != 1:
                raise IllDefinedOnClasses(f"evaluation is not constant on {cl.token}", witness=cl)
            comp[x][cl.token] = vals.pop()
    return NatTrans(restrict_functor(ctx, Psi), plain_restriction(ctx, Psi), comp)


def coevaluation(ctx: AdjunctionContext, Psi: CSet, x: str, c: str) -> str:
    """The element [1_x, c] of r(Ψ)(x)."""
    return ctx.r_biset(Psi).class_of(x, _STAR, x, ctx.C.identity[x], c)


def unit_class(ctx: AdjunctionContext, Om: CSet, y: str, a: str) -> str:
    """The element [1_y, a] of i(Ω)(y)."""
    return ctx.i_biset(Om).class_of(y, _STAR, y, ctx.C.identity[y], a)


def alpha_transport(ctx: AdjunctionContext, Om: CSet, Psi: CSet, zeta: NatTrans) -> NatTrans:
    """Hom(i(Ω), Ψ) -> Hom(Ω, r(Ψ)): α(ζ)_x(a) = ζ_x([1_x, a])."""
    comp = {
        x: {a: coevaluation(ctx, Psi, x, zeta(x, unit_class(ctx, Om, x, a))) for a in Om.carrier[x]}
        for x in ctx.D.objects
    }
    return NatTrans(Om, restrict_functor(ctx, Psi), comp)


def beta_transport(ctx: AdjunctionContext, Om: CSet, Psi: CSet, theta: NatTrans) -> NatTrans:
    """Hom(Ω, r(Ψ)) -> Hom(i(Ω), Ψ): β(θ)_y([f, b]) = Ψ(f)(θ_z(b)).

    θ_z(b) lives in r(Ψ)(z) and is read in Ψ(z) through the evaluation map.
    Every representative of every class is evaluated.
    """
    ev = evaluation(ctx, Psi)
    ib = ctx.i_biset(Om)
    comp = {}
    for y in ctx.C.objects:
        comp[y] = {}
        for cl in ib.classes[y, _STAR]:
            vals = {Psi(f, ev(z, theta(z, b))) for z, f, b in cl.members}
            if len(vals) != 1:
                raise IllDefinedOnClasses(f"β(θ) depends on the representative of {cl.token}",
                                          witness=(cl.token, sorted(vals)))
            comp[y][cl.token] = vals.pop()
    return NatTrans(induce_functor(ctx, Om), Psi, comp)


def unit(ctx: AdjunctionContext, Om: CSet) -> NatTrans:
    """η: Ω -> r(i(Ω)), η_y(a) = [1_y, a]."""
    iO = induce_functor(ctx, Om)
    comp = {y: {a: coevaluation(ctx, iO, y, unit_class(ctx, Om, y, a)) for a in Om.carrier[y]}
            for y in ctx.D.objects}
    return NatTrans(Om, restrict_functor(ctx, iO), comp)


@dataclass
class AdjunctionReport:
    left_count: int
    right_count: int
    alpha_lands: bool
    beta_lands: bool
    beta_alpha_id: bool
    alpha_beta_id: bool
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.left_count == self.right_count and self.alpha_lands and self.beta_lands
                and self.beta_alpha_id and self.alpha_beta_id)

    def to_dict(self) -> dict:
        return {
            "hom_i_omega_psi": self.left_count,
            "hom_omega_r_psi": self.right_count,
            "alpha_lands": self.alpha_lands,
            "beta_lands": self.beta_lands,
            "beta_after_alpha_is_identity": self.beta_alpha_id,
            "alpha_after_beta_is_identity": self.alpha_beta_id,
            "passed": self.passed,
            "failures": self.failures,
        }


def verify_adjunction(ctx: AdjunctionContext, Om: CSet, Psi: CSet, bound: int = HOM_BOUND) -> AdjunctionReport:
    """Enumerate both hom-sets and check α and β are mutually inverse bijections."""
    iO, rP = induce_functor(ctx, Om), restrict_functor(ctx, Psi)
    left = natural_transformations(iO, Psi, limit=bound)
    right = natural_transformations(Om, rP, limit=bound)
    left_keys = {z.key() for z in left}
    right_keys = {t.key() for t in right}
    failures = []
    alpha_lands = beta_lands = ba = ab = True
    for z in left:
        t = alpha_transport(ctx, Om, Psi, z)
        if t.key() not in right_keys:
            alpha_lands = False
            failures.append(f"α(ζ) not among enumerated θ for ζ={z.component}")
        if beta_transport(ctx, Om, Psi, t).key() != z.key():
            ba = False
            failures.append(f"β(α(ζ)) ≠ ζ for ζ={z.component}")
    for t in right:
        z = beta_transport(ctx, Om, Psi, t)
        if z.key() not in left_keys:
            beta_lands = False
            failures.append(f"β(θ) not among enumerated ζ for θ={t.component}")
        if alpha_transport(ctx, Om, Psi, z).key() != t.key():
            ab = False
            failures.append(f"α(β(θ)) ≠ θ for θ={t.component}")
    return AdjunctionReport(len(left), len(right), alpha_lands, beta_lands, ba, ab, failures)
