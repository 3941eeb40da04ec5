"""(C, D)-bisets as C×D^op-sets, their composition over a middle category,
and the bisets induced by pairs of functors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cset import CSet, walk_image
from .errors import CSetError, EndpointMismatch, IllDefinedAction, MiddleMismatch
from .fincat import (
    Category,
    Functor,
    ProductCategory,
    Walk,
    identity_functor,
    inclusion,
    opposite,
    product_category,
    terminal_category,
)


class BElem(NamedTuple):
    """Element ``token`` of the fiber over (left object, right object)."""

    x: str
    y: str
    token: str


class Biset:
    def __init__(self, left: Category, right: Category, underlying: CSet,
                 product: ProductCategory | None = None):
        self.left, self.right = left, right
        self.product = product if product is not None else product_category(left, opposite(right))
        if underlying.base != self.product:
            raise CSetError("underlying C-set must live over left × right^op")
        self.underlying = underlying

    def fiber(self, x: str, y: str) -> tuple[str, ...]:
        return self.underlying.carrier[self.product.obj(x, y)]

    def fiber_sizes(self) -> dict[tuple[str, str], int]:
        return {(x, y): len(self.fiber(x, y)) for x in self.left.objects for y in self.right.objects}

    def elements(self):
        for x in self.left.objects:
            for y in self.right.objects:
                for t in self.fiber(x, y):
                    yield BElem(x, y, t)

    def size(self) -> int:
        return self.underlying.size()

    def act(self, f: str, g: str, u: BElem) -> BElem:
        """Apply ``f`` on the left and ``g`` on the right at once."""
        C, D = self.left, self.right
        if C.src[f] != u.x or D.tgt[g] != u.y:
            raise EndpointMismatch(f"({f}, {g}) does not act on the fiber over {(u.x, u.y)}")
        return BElem(C.tgt[f], D.src[g], self.underlying(self.product.mor(f, g), u.token))

    def __repr__(self):
        return f"Biset(size={self.size()})"


def left_action(B: Biset, alpha: str, u: BElem) -> BElem:
    """alpha·u for alpha: x -> x1 in the left category."""
    return B.act(alpha, B.right.identity[u.y], u)


def right_action(B: Biset, u: BElem, beta: str) -> BElem:
    """u·beta for beta: y1 -> y in the right category."""
    return B.act(B.left.identity[u.x], beta, u)


def walk_action(B: Biset, side: str, w: Walk, u: BElem) -> set[str]:
    """Set-valued action of a walk on one element.

    ``side="left"``: ``w`` runs in the left category from ``u.x``; the result
    lies over ``(w.end, u.y)``.
    ``side="right"``: ``w: y ⇝ y'`` runs in the right category and ``u`` must
    lie over ``y'``; the result ``u·w`` lies over ``(u.x, y)``. Right actions
    are contravariant, so the steps are applied from last to first.
    """
    P = B.product
    if side == "left":
        if w.start != u.x:
            raise EndpointMismatch(f"walk starts at {w.start!r}, element sits over {u.x!r}")
        w.end(B.left)
        idy = B.right.identity[u.y]
        pw = Walk(P.obj(u.x, u.y), tuple((P.mor(f, idy), fw) for f, fw in w.steps))
    elif side == "right":
        if w.end(B.right) != u.y:
            raise EndpointMismatch(f"walk ends at {w.end(B.right)!r}, element sits over {u.y!r}")
        idx = B.left.identity[u.x]
        pw = Walk(P.obj(u.x, u.y), tuple((P.mor(idx, f), fw) for f, fw in reversed(w.steps)))
    else:
        raise ValueError("side must be 'left' or 'right'")
    return walk_image(B.underlying, pw, [u.token])


@dataclass(frozen=True)
class BisetClass:
    """One element of a composed biset: an equivalence class of pairs."""

    at: tuple[str, str]
    token: str
    members: tuple[tuple[str, str, str], ...]  # (middle object, left token, right token)


class ComposedBiset(Biset):
    """Result of ``compose_bisets``; remembers which pairs make up each class."""

    def __init__(self, left, right, underlying, product, classes, member_class):
        super().__init__(left, right, underlying, product)
        self.classes: dict[tuple[str, str], list[BisetClass]] = classes
        self._member_class = member_class

    def class_of(self, x: str, z: str, y: str, u: str, b: str) -> str:
        """Token of the class [u, b] with u over (x, y) and b over (y, z)."""
        return self._member_class[x, z, y, u, b]

    def members(self, x: str, z: str, token: str) -> tuple[tuple[str, str, str], ...]:
        for cl in self.classes[x, z]:
            if cl.token == token:
                return cl.members
        raise KeyError(token)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, a):
        self.parent.setdefault(a, a)

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def compose_bisets(L: Biset, R: Biset) -> ComposedBiset:
    """L ×_D R for a (C, D)-biset L and a (D, E)-biset R.

    Pairs (u, b) over a middle object are identified by the equivalence
    generated by (u·β, b) ~ (u, β·b) for each morphism β of D; walk-related
    pairs are exactly the chains of such one-step identifications.
    """
    if L.right != R.left:
        raise MiddleMismatch("right category of the left biset differs from left category of the right biset")
    C, D, E = L.left, L.right, R.right
    uf = _UnionFind()
    for x in C.objects:
        for z in E.objects:
            for y in D.objects:
                for u in L.fiber(x, y):
                    for b in R.fiber(y, z):
                        uf.add((x, z, y, u, b))
            for beta in D.morphisms:
                y, y2 = D.src[beta], D.tgt[beta]
                for a in L.fiber(x, y2):
                    ab = right_action(L, BElem(x, y2, a), beta).token
                    for b in R.fiber(y, z):
                        bb = left_action(R, beta, BElem(y, z, b)).token
                        uf.union((x, z, y, ab, b), (x, z, y2, a, bb))

    lidx = {(x, y): {t: i for i, t in enumerate(L.fiber(x, y))} for x in C.objects for y in D.objects}
    ridx = {(y, z): {t: i for i, t in enumerate(R.fiber(y, z))} for y in D.objects for z in E.objects}

    def member_key(m):
        x, z, y, u, b = m
        return (D.obj_index(y), lidx[x, y][u], ridx[y, z][b])

    groups: dict[tuple, list] = {}
    for m in uf.parent:
        groups.setdefault(uf.find(m), []).append(m)
    classes: dict[tuple[str, str], list[BisetClass]] = {(x, z): [] for x in C.objects for z in E.objects}
    member_class = {}
    for ms in groups.values():
        ms.sort(key=member_key)
        x, z, y, u, b = ms[0]
        cl = BisetClass((x, z), f"[{u}@{y}|{b}]", tuple((m[2], m[3], m[4]) for m in ms))
        classes[x, z].append(cl)
        for m in ms:
            member_class[m] = cl.token
    for key, cls in classes.items():
        cls.sort(key=lambda c: member_key((key[0], key[1]) + c.members[0]))
        if len({c.token for c in cls}) != len(cls):
            raise CSetError(f"class tokens collide over {key}")

    P = product_category(C, opposite(E))
    carrier = {P.obj(x, z): [c.token for c in classes[x, z]] for x in C.objects for z in E.objects}
    action = {}
    for gamma in C.morphisms:
        for delta in E.morphisms:
            x, x1 = C.src[gamma], C.tgt[gamma]
            z, z1 = E.tgt[delta], E.src[delta]
            fn = {}
            for cl in classes[x, z]:
                images = set()
                for y, u, b in cl.members:
                    gu = left_action(L, gamma, BElem(x, y, u)).token
                    bd = right_action(R, BElem(y, z, b), delta).token
                    images.add(member_class[x1, z1, y, gu, bd])
                if len(images) != 1:
                    raise IllDefinedAction(
                        f"({gamma}, {delta}) sends class {cl.token} to several classes",
                        witness=(cl.token, sorted(images)),
                    )
                fn[cl.token] = images.pop()
            action[P.mor(gamma, delta)] = fn
    underlying = CSet(P, carrier, action)
    return ComposedBiset(C, E, underlying, P, classes, member_class)


def hom_biset(F: Functor, G: Functor) -> Biset:
    """The (C, D)-biset (x, y) ↦ Hom_E(G(y), F(x)) for F: C -> E and G: D -> E."""
    if F.cod != G.cod:
        raise CSetError("functors must share a codomain")
    C, D, E = F.dom, G.dom, F.cod
    P = product_category(C, opposite(D))
    carrier = {P.obj(x, y): list(E.hom(G(y), F(x))) for x in C.objects for y in D.objects}
    action = {}
    for gamma in C.morphisms:
        for delta in D.morphisms:
            # (gamma, delta) : (x, y) -> (x1, y1) with delta: y1 -> y in D
            x, y = C.src[gamma], D.tgt[delta]
            Fg, Gd = F.mor_map[gamma], G.mor_map[delta]
            action[P.mor(gamma, delta)] = {
                h: E.compose(E.compose(Gd, h), Fg) for h in carrier[P.obj(x, y)]
            }
    return Biset(C, D, CSet(P, carrier, action), P)


def identity_biset(C: Category) -> Biset:
    """C C C: (x, y) ↦ Hom_C(y, x)."""
    idf = identity_functor(C)
    return hom_biset(idf, idf)


def restriction_biset(D: Category, C: Category) -> Biset:
    """D C C for a subcategory D of C."""
    return hom_biset(inclusion(D, C), identity_functor(C))


def induction_biset(C: Category, D: Category) -> Biset:
    """C C D for a subcategory D of C."""
    return hom_biset(identity_functor(C), inclusion(D, C))


_ONE = terminal_category()


def cset_as_biset(O: CSet) -> Biset:
    """View a C-set as a (C, 1)-biset."""
    C = O.base
    P = product_category(C, opposite(_ONE))
    (star,) = _ONE.objects
    one = _ONE.identity[star]
    carrier = {P.obj(x, star): O.carrier[x] for x in C.objects}
    action = {P.mor(f, one): O.action[f] for f in C.morphisms}
    return Biset(C, _ONE, CSet(P, carrier, action, check=False), P)


def biset_as_cset(B: Biset) -> CSet:
    """Forget the trivial right side of a (C, 1)-biset."""
    R = B.right
    if len(R.objects) != 1 or len(R.morphisms) != 1:
        raise CSetError("right category is not the one-morphism category")
    (star,) = R.objects
    one = R.identity[star]
    C = B.left
    carrier = {x: B.fiber(x, star) for x in C.objects}
    action = {f: B.underlying.action[B.product.mor(f, one)] for f in C.morphisms}
    return CSet(C, carrier, action, check=False)


def biset_from_actions(left: Category, right: Category, carrier, left_act, right_act) -> Biset:
    """Build a biset from fibers and separate left and right actions.

    ``carrier[x][y]`` lists the fiber over (x, y); ``left_act[f][y]`` maps the
    fiber over (src f, y) to (tgt f, y); ``right_act[g][x]`` maps the fiber
    over (x, tgt g) to (x, src g). Identities may be omitted. The two actions
    must commute; this is checked by validating the underlying C-set.
    """
    P = product_category(left, opposite(right))
    fib = {P.obj(x, y): list(carrier.get(x, {}).get(y, [])) for x in left.objects for y in right.objects}

    def lmap(f, y, t):
        if left.is_identity(f):
            return t
        return left_act[f][y][t]

    def rmap(g, x, t):
        if right.is_identity(g):
            return t
        return right_act[g][x][t]

    action = {}
    try:
        for f in left.morphisms:
            for g in right.morphisms:
                x, y = left.src[f], right.tgt[g]
                action[P.mor(f, g)] = {t: rmap(g, left.tgt[f], lmap(f, y, t)) for t in fib[P.obj(x, y)]}
    except KeyError as exc:
        raise CSetError(f"biset action is missing an entry: {exc}") from None
    return Biset(left, right, CSet(P, fib, action), P)
