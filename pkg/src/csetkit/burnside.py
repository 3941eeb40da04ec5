"""Burnside rings of finite categories over a registry of indecomposable classes."""

from __future__ import annotations

from typing import Iterable, Mapping

from .cset import (
    CSet,
    are_isomorphic,
    decompose,
    disjoint_union,
    invariant,
    is_indecomposable,
    point_cset,
    pointwise_product,
)
from .errors import CSetError, EmptyCategory, IncompleteRegistry, NotConnected
from .fincat import Category, is_connected, is_groupoid
from .search import enumerate_cyclic


class IsoClassRegistry:
    """Representatives of indecomposable isomorphism classes, indexed in first-seen order.

    Single writer: only the owner should call ``classify``; a frozen
    registry refuses new classes and is safe to share.
    """

    def __init__(self, base: Category, reps: Iterable[CSet] = (), complete: bool = False):
        self.base = base
        self.reps: list[CSet] = []
        self._inv: list[tuple] = []
        self.complete = complete
        self.frozen = False
        self._products: dict[tuple[int, int], BurnsideElt] = {}
        for r in reps:
            self.classify(r)

    def __len__(self):
        return len(self.reps)

    def find(self, O: CSet) -> int | None:
        inv = invariant(O)
        for i, (k, r) in enumerate(zip(self._inv, self.reps)):
            if k == inv and are_isomorphic(r, O) is not None:
                return i
        return None

    def classify(self, O: CSet) -> int:
        """Index of O's class, registering O as a new representative if unseen."""
        if O.base != self.base:
            raise CSetError("C-set lives over a different category than the registry")
        i = self.find(O)
        if i is not None:
            return i
        if self.frozen:
            raise IncompleteRegistry("frozen registry has no class for this C-set")
        if not is_indecomposable(O):
            raise CSetError("only indecomposable C-sets can be registered")
        self.reps.append(O)
        self._inv.append(invariant(O))
        return len(self.reps) - 1

    def freeze(self) -> "IsoClassRegistry":
        self.frozen = True
        return self


class BurnsideElt:
    """Finitely supported integer combination of registry classes."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {k: v for k, v in sorted((coeffs or {}).items()) if v != 0}

    @classmethod
    def basis(cls, i: int) -> "BurnsideElt":
        return cls({i: 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BurnsideElt(out)

    def __neg__(self):
        return BurnsideElt({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n: int) -> "BurnsideElt":
        return BurnsideElt({k: n * v for k, v in self.coeffs.items()})

    def __rmul__(self, n: int):
        return self.scale(n)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, BurnsideElt):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}·[{k}]" for k, v in self.coeffs.items())

    def terms(self) -> list[dict]:
        return [{"class": k, "coeff": v} for k, v in self.coeffs.items()]


def decompose_to_element(reg: IsoClassRegistry, O: CSet) -> BurnsideElt:
    out: dict[int, int] = {}
    for part in decompose(O):
        k = reg.classify(part)
        out[k] = out.get(k, 0) + 1
    return BurnsideElt(out)


def basis_product(reg: IsoClassRegistry, i: int, j: int) -> BurnsideElt:
    key = (min(i, j), max(i, j))
    if key not in reg._products:
        reg._products[key] = decompose_to_element(reg, pointwise_product(reg.reps[i], reg.reps[j]))
    return reg._products[key]


def ring_multiply(reg: IsoClassRegistry, a: BurnsideElt, b: BurnsideElt) -> BurnsideElt:
    out = BurnsideElt()
    for i, ci in a.coeffs.items():
        for j, cj in b.coeffs.items():
            out = out + basis_product(reg, i, j).scale(ci * cj)
    return out


def ring_identity(reg: IsoClassRegistry) -> BurnsideElt:
    if not reg.base.objects:
        raise EmptyCategory("the empty category has no point C-set")
    return decompose_to_element(reg, point_cset(reg.base))


def realize(reg: IsoClassRegistry, a: BurnsideElt) -> tuple[CSet, CSet]:
    """A pair (P, N) of C-sets with a = [P] - [N]."""
    from .cset import empty_cset

    pos, neg = empty_cset(reg.base), empty_cset(reg.base)
    for k, v in a.coeffs.items():
        for _ in range(abs(v)):
            if v > 0:
                pos = disjoint_union(pos, reg.reps[k])
            else:
                neg = disjoint_union(neg, reg.reps[k])
    return pos, neg


class InfiniteRank:
    """Verdict for a non-groupoid: the ring has infinite rank, with a certificate."""

    is_finite = False

    def __init__(self, certificate):
        self.certificate = certificate

    def __repr__(self):
        return "InfiniteRank()"


def enumerate_indecomposables(C: Category, n_max: int = 3):
    """All indecomposable classes of a connected groupoid, else an infinite-type certificate.

    Over a connected groupoid every indecomposable is generated by one element
    at the first object, so its carriers are bounded by the hom-sets out of
    that object; the cyclic search covers all of them.
    """
    if not is_connected(C):
        raise NotConnected("Burnside rank is computed per connected component")
    if not is_groupoid(C):
        from .characterize import find_noninvertible, witness_infinite_type

        nonin = find_noninvertible(C)
        return witness_infinite_type(C, nonin.morphism, n_max)
    reg = IsoClassRegistry(C)
    if C.objects:
        x0 = C.objects[0]
        caps = {y: len(C.hom(x0, y)) for y in C.objects}
        for O in enumerate_cyclic(C, x0, caps):
            if is_indecomposable(O):
                reg.classify(O)
    reg.complete = True
    return reg.freeze()


def multiplication_table(reg: IsoClassRegistry) -> list[list[BurnsideElt]]:
    if not reg.complete:
        raise IncompleteRegistry("multiplication table needs a complete registry")
    n = len(reg)
    return [[basis_product(reg, i, j) for j in range(n)] for i in range(n)]


def rank(C: Category, n_max: int = 3):
    """Number of indecomposable classes, or an InfiniteRank verdict."""
    result = enumerate_indecomposables(C, n_max)
    if isinstance(result, IsoClassRegistry):
        return len(result)
    return InfiniteRank(result)


def table_to_dict(reg: IsoClassRegistry, table: list[list[BurnsideElt]]) -> dict:
    from .io import cset_to_dict

    basis = [{"class": k, "sizes": dict(zip(reg.base.objects, r.sizes())), "cset": cset_to_dict(r, inline=False)}
             for k, r in enumerate(reg.reps)]
    return {"basis": basis, "table": [[cell.terms() for cell in row] for row in table]}


def render_table(reg: IsoClassRegistry, table: list[list[BurnsideElt]]) -> str:
    n = len(reg)
    cells = [[repr(c) for c in row] for row in table]
    width = max([len(c) for row in cells for c in row] + [3])
    head = " " * 5 + " ".join(f"[{j}]".ljust(width) for j in range(n))
    lines = [head]
    for i, row in enumerate(cells):
        lines.append(f"[{i}]".ljust(5) + " ".join(c.ljust(width) for c in row))
    return "\n".join(lines)
