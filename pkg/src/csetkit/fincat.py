"""Finite categories given by explicit composition tables.

Composition is written in diagrammatic order throughout: ``compose(f, g)``
is "f then g", i.e. the usual g∘f, defined when ``tgt(f) == src(g)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    CompositionGap,
    EndpointMismatch,
    MissingIdentity,
    NonAssociative,
    NotAFunctor,
    NotAGroup,
    NotClosed,
    CategoryError,
)


class Category:
    """A validated finite category.

    Objects and morphisms are string tokens kept in file order, which is the
    canonical iteration order everywhere in the package.
    """

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[tuple[str, str, str]],
        identity: Mapping[str, str],
        table: Mapping[tuple[str, str], str],
        *,
        check: bool = True,
    ):
        self.objects = tuple(objects)
        self.morphisms = tuple(m for m, _, _ in morphisms)
        self.src = {m: s for m, s, _ in morphisms}
        self.tgt = {m: t for m, _, t in morphisms}
        self.identity = dict(identity)
        self._table = dict(table)
        if check:
            self._validate()
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._mor_index = {m: i for i, m in enumerate(self.morphisms)}
        self._hom = {(x, y): [] for x in self.objects for y in self.objects}
        self._out = {x: [] for x in self.objects}
        self._in = {x: [] for x in self.objects}
        for m in self.morphisms:
            self._hom[self.src[m], self.tgt[m]].append(m)
            self._out[self.src[m]].append(m)
            self._in[self.tgt[m]].append(m)
        self._ids = frozenset(self.identity.values())
        self._factor = {m: [] for m in self.morphisms}
        for (f, g), h in self._table.items():
            self._factor[h].append((f, g))

    def _validate(self):
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise CategoryError("duplicate object token")
        if len(set(self.morphisms)) != len(self.morphisms):
            raise CategoryError("duplicate morphism token")
        for m in self.morphisms:
            if self.src[m] not in objs or self.tgt[m] not in objs:
                raise EndpointMismatch(f"morphism {m!r} has an endpoint outside the object set")
        mors = set(self.morphisms)
        for x in self.objects:
            e = self.identity.get(x)
            if e is None or e not in mors:
                raise MissingIdentity(f"no identity for object {x!r}")
            if self.src[e] != x or self.tgt[e] != x:
                raise EndpointMismatch(f"identity {e!r} of {x!r} is not an endomorphism of {x!r}")
        for (f, g), h in self._table.items():
            if f not in mors or g not in mors or h not in mors:
                raise CategoryError(f"composition entry {(f, g, h)!r} names an unknown morphism")
            if self.tgt[f] != self.src[g]:
                raise EndpointMismatch(f"{f!r} then {g!r} is not composable")
            if self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                raise EndpointMismatch(
                    f"{f!r} then {g!r} = {h!r} has wrong endpoints "
                    f"({self.src[h]}->{self.tgt[h]}, expected {self.src[f]}->{self.tgt[g]})"
                )
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt[f] == self.src[g] and (f, g) not in self._table:
                    raise CompositionGap(f"missing composite of {f!r} then {g!r}")
        for f in self.morphisms:
            if self._table[self.identity[self.src[f]], f] != f:
                raise MissingIdentity(f"left identity law fails at {f!r}")
            if self._table[f, self.identity[self.tgt[f]]] != f:
                raise MissingIdentity(f"right identity law fails at {f!r}")
        t = self._table
        for f in self.morphisms:
            for g in self.morphisms:
                if self.tgt[f] != self.src[g]:
                    continue
                fg = t[f, g]
                for h in self.morphisms:
                    if self.tgt[g] == self.src[h] and t[fg, h] != t[f, t[g, h]]:
                        raise NonAssociative(f"associativity fails on {(f, g, h)!r}")

    # structure access

    def compose(self, f: str, g: str) -> str:
        """``f`` then ``g``."""
        try:
            return self._table[f, g]
        except KeyError:
            raise EndpointMismatch(f"{f!r} then {g!r} is not composable") from None

    def compose_path(self, path: Iterable[str]) -> str:
        path = list(path)
        result = path[0]
        for g in path[1:]:
            result = self.compose(result, g)
        return result

    def hom(self, x: str, y: str) -> list[str]:
        return self._hom[x, y]

    def out_of(self, x: str) -> list[str]:
        return self._out[x]

    def into(self, y: str) -> list[str]:
        return self._in[y]

    def is_identity(self, f: str) -> bool:
        return f in self._ids

    def factorizations(self, h: str) -> list[tuple[str, str]]:
        """All pairs ``(f, g)`` with ``f`` then ``g`` equal to ``h``."""
        return self._factor[h]

    def obj_index(self, x: str) -> int:
        return self._obj_index[x]

    def mor_index(self, f: str) -> int:
        return self._mor_index[f]

    @property
    def table(self) -> dict[tuple[str, str], str]:
        return dict(self._table)

    def morphism_records(self) -> list[tuple[str, str, str]]:
        return [(m, self.src[m], self.tgt[m]) for m in self.morphisms]

    def __len__(self):
        return len(self.morphisms)

    def _key(self):
        return (
            self.objects,
            tuple(self.morphism_records()),
            tuple(sorted(self.identity.items())),
            tuple(sorted(self._table.items())),
        )

    def __eq__(self, other):
        if not isinstance(other, Category):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"Category(objects={len(self.objects)}, morphisms={len(self.morphisms)})"


def validate_category(
    objects: Sequence[str],
    morphisms: Sequence[tuple[str, str, str]],
    identity: Mapping[str, str],
    compose: Iterable[tuple[str, str, str]],
) -> Category:
    """Build a category from raw lists, checking every axiom exhaustively.

    ``compose`` holds triples ``(f, g, h)`` meaning ``f`` then ``g`` is ``h``.
    Entries involving an identity may be left out; they are filled in.
    """
    table: dict[tuple[str, str], str] = {}
    for entry in compose:
        f, g, h = entry
        if (f, g) in table and table[f, g] != h:
            raise CategoryError(f"conflicting composition entries for {(f, g)!r}")
        table[f, g] = h
    for m, s, t in morphisms:
        if s in identity:
            table.setdefault((identity[s], m), m)
        if t in identity:
            table.setdefault((m, identity[t]), m)
    return Category(objects, morphisms, identity, table)


@dataclass(frozen=True)
class Walk:
    """A zig-zag of morphisms; ``forward=False`` traverses a morphism tgt -> src."""

    start: str
    steps: tuple[tuple[str, bool], ...] = ()

    def end(self, C: Category) -> str:
        here = self.start
        for f, forward in self.steps:
            if forward:
                if C.src[f] != here:
                    raise EndpointMismatch(f"forward step {f!r} does not start at {here!r}")
                here = C.tgt[f]
            else:
                if C.tgt[f] != here:
                    raise EndpointMismatch(f"backward step {f!r} does not end at {here!r}")
                here = C.src[f]
        return here

    def opposite(self, C: Category) -> "Walk":
        return Walk(self.end(C), tuple((f, not fw) for f, fw in reversed(self.steps)))

    def then(self, other: "Walk") -> "Walk":
        return Walk(self.start, self.steps + other.steps)

    def __pow__(self, t: int) -> "Walk":
        return Walk(self.start, self.steps * t)

    def is_reduced(self, C: Category) -> bool:
        """No two consecutive steps can be composed into one."""
        for (f, a), (g, b) in zip(self.steps, self.steps[1:]):
            if a == b and (a and C.tgt[f] == C.src[g] or not a and C.src[f] == C.tgt[g]):
                return False
        return True


def is_groupoid(C: Category) -> bool:
    return all(inverse_of(C, f) is not None for f in C.morphisms)


def inverse_of(C: Category, f: str) -> str | None:
    x, y = C.src[f], C.tgt[f]
    for g in C.hom(y, x):
        if C.compose(f, g) == C.identity[x] and C.compose(g, f) == C.identity[y]:
            return g
    return None


def left_inverses(C: Category, f: str) -> list[str]:
    """Morphisms g with g∘f = 1, i.e. ``f`` then ``g`` is the identity of src(f)."""
    x, y = C.src[f], C.tgt[f]
    return [g for g in C.hom(y, x) if C.compose(f, g) == C.identity[x]]


def right_inverses(C: Category, f: str) -> list[str]:
    """Morphisms g with f∘g = 1."""
    x, y = C.src[f], C.tgt[f]
    return [g for g in C.hom(y, x) if C.compose(g, f) == C.identity[y]]


def connected_components(C: Category) -> list[list[str]]:
    """Object sets of the connected components, in canonical order."""
    seen: set[str] = set()
    comps = []
    for x in C.objects:
        if x in seen:
            continue
        comp, stack = [], [x]
        seen.add(x)
        while stack:
            y = stack.pop()
            comp.append(y)
            for f in C.out_of(y) + C.into(y):
                for z in (C.src[f], C.tgt[f]):
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
        comps.append(sorted(comp, key=C.obj_index))
    return comps


def is_connected(C: Category) -> bool:
    # the empty category has zero components and counts as connected
    return len(connected_components(C)) <= 1


def delooping(table: Sequence[Sequence[int]], identity: int = 0, names: Sequence[str] | None = None,
              obj: str = "*") -> Category:
    """One-object category of a finite group given by its multiplication table.

    ``table[a][b]`` is the product a·b; composition "f then g" is g·f so the
    category's composition matches function composition of a left action.
    """
    n = len(table)
    if any(len(row) != n for row in table):
        raise NotAGroup("table is not square")
    if not 0 <= identity < n:
        raise NotAGroup("identity index out of range")
    for row in table:
        for v in row:
            if not 0 <= v < n:
                raise NotAGroup(f"entry {v} out of range")
    for a in range(n):
        if table[identity][a] != a or table[a][identity] != a:
            raise NotAGroup(f"element {a} breaks the identity law")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NotAGroup(f"associativity fails on {(a, b, c)}")
    for a in range(n):
        if not any(table[a][b] == identity and table[b][a] == identity for b in range(n)):
            raise NotAGroup(f"element {a} has no inverse")
    if names is None:
        names = ["e" if a == identity else f"g{a}" for a in range(n)]
    names = list(names)
    morphisms = [(names[a], obj, obj) for a in range(n)]
    compose = {(names[f], names[g]): names[table[g][f]] for f in range(n) for g in range(n)}
    C = Category([obj], morphisms, {obj: names[identity]}, compose)
    return C


def opposite(C: Category) -> Category:
    morphisms = [(m, C.tgt[m], C.src[m]) for m in C.morphisms]
    table = {(g, f): h for (f, g), h in C.table.items()}
    return Category(C.objects, morphisms, C.identity, table, check=False)


def pair_token(a: str, b: str) -> str:
    return f"({a},{b})"


class ProductCategory(Category):
    """Category whose objects and morphisms are pairs; remembers the factors."""

    def __init__(self, left: Category, right: Category):
        self.left, self.right = left, right
        objects = []
        self.obj_pair: dict[str, tuple[str, str]] = {}
        self._obj_tok: dict[tuple[str, str], str] = {}
        for x in left.objects:
            for y in right.objects:
                tok = pair_token(x, y)
                objects.append(tok)
                self.obj_pair[tok] = (x, y)
                self._obj_tok[x, y] = tok
        morphisms = []
        self.mor_pair: dict[str, tuple[str, str]] = {}
        self._mor_tok: dict[tuple[str, str], str] = {}
        for f in left.morphisms:
            for g in right.morphisms:
                tok = pair_token(f, g)
                morphisms.append(
                    (tok, self._obj_tok[left.src[f], right.src[g]], self._obj_tok[left.tgt[f], right.tgt[g]])
                )
                self.mor_pair[tok] = (f, g)
                self._mor_tok[f, g] = tok
        if len(self.obj_pair) != len(objects) or len(self.mor_pair) != len(morphisms):
            raise CategoryError("pair tokens collide; rename objects or morphisms")
        identity = {self._obj_tok[x, y]: self._mor_tok[left.identity[x], right.identity[y]]
                    for x in left.objects for y in right.objects}
        table = {}
        for (f1, f2), h1 in left.table.items():
            for (g1, g2), h2 in right.table.items():
                table[self._mor_tok[f1, g1], self._mor_tok[f2, g2]] = self._mor_tok[h1, h2]
        super().__init__(objects, morphisms, identity, table, check=False)

    def obj(self, x: str, y: str) -> str:
        return self._obj_tok[x, y]

    def mor(self, f: str, g: str) -> str:
        return self._mor_tok[f, g]


def product_category(C: Category, D: Category) -> ProductCategory:
    return ProductCategory(C, D)


def terminal_category(obj: str = "*", mor: str = "1*") -> Category:
    return Category([obj], [(mor, obj, obj)], {obj: mor}, {(mor, mor): mor})


def subcategory(C: Category, objs: Iterable[str], mors: Iterable[str]) -> Category:
    """The subcategory on the given selection, in C's canonical order."""
    objs, mors = set(objs), set(mors)
    for x in objs:
        if x not in C.identity:
            raise CategoryError(f"unknown object {x!r}")
        if C.identity[x] not in mors:
            raise MissingIdentity(f"selection lacks the identity of {x!r}")
    for f in mors:
        if f not in C.src:
            raise CategoryError(f"unknown morphism {f!r}")
        if C.src[f] not in objs or C.tgt[f] not in objs:
            raise EndpointMismatch(f"morphism {f!r} leaves the selected objects")
    table = {}
    for f in mors:
        for g in mors:
            if C.tgt[f] == C.src[g]:
                h = C.compose(f, g)
                if h not in mors:
                    raise NotClosed(f"{f!r} then {g!r} = {h!r} is not selected")
                table[f, g] = h
    objects = [x for x in C.objects if x in objs]
    morphisms = [(m, C.src[m], C.tgt[m]) for m in C.morphisms if m in mors]
    return Category(objects, morphisms, {x: C.identity[x] for x in objects}, table, check=False)


def generated_subcategory(C: Category, mors: Iterable[str]) -> Category:
    """Smallest subcategory containing the given morphisms."""
    sel = set(mors)
    objs = {C.src[f] for f in sel} | {C.tgt[f] for f in sel}
    sel |= {C.identity[x] for x in objs}
    frontier = list(sel)
    while frontier:
        new = []
        for f in list(sel):
            for g in frontier:
                for a, b in ((f, g), (g, f)):
                    if C.tgt[a] == C.src[b]:
                        h = C.compose(a, b)
                        if h not in sel:
                            sel.add(h)
                            new.append(h)
        frontier = new
    return subcategory(C, objs, sel)


def is_subcategory(D: Category, C: Category) -> bool:
    """True if D's tokens sit inside C with the same endpoints and composites."""
    if any(x not in C.identity or C.identity[x] != D.identity[x] for x in D.objects):
        return False
    for f in D.morphisms:
        if f not in C.src or C.src[f] != D.src[f] or C.tgt[f] != D.tgt[f]:
            return False
    return all(C.compose(f, g) == h for (f, g), h in D.table.items())


@dataclass(frozen=True)
class Functor:
    """A functor between finite categories given by its object and morphism maps."""

    dom: Category
    cod: Category
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]

    def __post_init__(self):
        validate_functor(self)

    def __call__(self, token: str) -> str:
        if token in self.mor_map:
            return self.mor_map[token]
        return self.obj_map[token]


def validate_functor(F: Functor) -> None:
    C, E = F.dom, F.cod
    for x in C.objects:
        if x not in F.obj_map or F.obj_map[x] not in E.identity:
            raise NotAFunctor(f"object {x!r} is not sent to an object of the codomain")
    for f in C.morphisms:
        if f not in F.mor_map or F.mor_map[f] not in E.src:
            raise NotAFunctor(f"morphism {f!r} is not sent to a morphism of the codomain")
        Ff = F.mor_map[f]
        if E.src[Ff] != F.obj_map[C.src[f]] or E.tgt[Ff] != F.obj_map[C.tgt[f]]:
            raise NotAFunctor(f"image of {f!r} has the wrong endpoints")
    for x in C.objects:
        if F.mor_map[C.identity[x]] != E.identity[F.obj_map[x]]:
            raise NotAFunctor(f"identity of {x!r} is not preserved")
    for (f, g), h in C.table.items():
        if E.compose(F.mor_map[f], F.mor_map[g]) != F.mor_map[h]:
            raise NotAFunctor(f"composite {f!r} then {g!r} is not preserved")


def identity_functor(C: Category) -> Functor:
    return Functor(C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms})


def inclusion(D: Category, C: Category) -> Functor:
    if not is_subcategory(D, C):
        raise NotAFunctor("not a subcategory: tokens, endpoints or composites disagree")
    return Functor(D, C, {x: x for x in D.objects}, {f: f for f in D.morphisms})


def full_subcategory(C: Category, objs: Iterable[str]) -> Category:
    objs = set(objs)
    return subcategory(C, objs, [f for f in C.morphisms if C.src[f] in objs and C.tgt[f] in objs])
