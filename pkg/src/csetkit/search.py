"""Backtracking search for C-set structures on given or growing carriers.

Each variable is one value ``f(a)``. Assigning it propagates the
composition law ``(f then g)(a) = g(f(a))`` in all three directions, so a
complete assignment is functorial by construction.
"""

from __future__ import annotations

import random
from typing import Iterator, Mapping

from .cset import CSet
from .fincat import Category


class _Dead(Exception):
    pass


class _ActionSearch:
    def __init__(self, C: Category, carrier: dict[str, list[str]], caps: Mapping[str, int] | None = None,
                 grow: bool = False, rng: random.Random | None = None, node_limit: int | None = None):
        self.C = C
        self.carrier = carrier
        self.caps = caps or {}
        self.grow = grow
        self.rng = rng
        self.node_limit = node_limit
        self.nodes = 0
        self.val: dict[tuple[str, str], str] = {}
        self.pre: dict[tuple[str, str], list[str]] = {}
        self.nonid = [f for f in C.morphisms if not C.is_identity(f)]
        self.out = {x: [g for g in C.out_of(x) if not C.is_identity(g)] for x in C.objects}
        self.inn = {x: [k for k in C.into(x) if not C.is_identity(k)] for x in C.objects}
        self.fac = {
            h: [(p, q) for p, q in C.factorizations(h) if not C.is_identity(p) and not C.is_identity(q)]
            for h in C.morphisms
        }

    def get(self, f, a):
        if self.C.is_identity(f):
            return a
        return self.val.get((f, a))

    def assign(self, f, a, b, trail):
        C = self.C
        queue = [(f, a, b)]
        while queue:
            f, a, b = queue.pop()
            if C.is_identity(f):
                if a != b:
                    raise _Dead
                continue
            old = self.val.get((f, a))
            if old is not None:
                if old != b:
                    raise _Dead
                continue
            self.val[f, a] = b
            self.pre.setdefault((f, b), []).append(a)
            trail.append((f, a, b))
            for g in self.out[C.tgt[f]]:
                h = C.compose(f, g)
                gb = self.get(g, b)
                if gb is not None:
                    queue.append((h, a, gb))
                else:
                    ha = self.get(h, a)
                    if ha is not None:
                        queue.append((g, b, ha))
            for k in self.inn[C.src[f]]:
                h = C.compose(k, f)
                for d in self.pre.get((k, a), ()):
                    queue.append((h, d, b))
            for p, q in self.fac[f]:
                pa = self.get(p, a)
                if pa is not None:
                    queue.append((q, pa, b))

    def undo(self, trail):
        for f, a, b in reversed(trail):
            del self.val[f, a]
            self.pre[f, b].pop()

    def next_var(self):
        C = self.C
        for x in C.objects:
            for a in self.carrier[x]:
                for f in self.out[x]:
                    if (f, a) not in self.val:
                        return f, a
        return None

    def snapshot(self) -> CSet:
        C = self.C
        action = {f: {a: self.get(f, a) for a in self.carrier[C.src[f]]} for f in C.morphisms}
        return CSet(C, {x: list(t) for x, t in self.carrier.items()}, action, check=False)

    def run(self) -> Iterator[CSet]:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            return
        var = self.next_var()
        if var is None:
            yield self.snapshot()
            return
        f, a = var
        y = self.C.tgt[f]
        choices = list(self.carrier[y])
        if self.rng is not None:
            self.rng.shuffle(choices)
        fresh = self.grow and len(self.carrier[y]) < self.caps.get(y, len(self.carrier[y]) + 1)
        if fresh:
            choices.append(None)
        for b in choices:
            created = b is None
            if created:
                b = str(len(self.carrier[y]) + 1)
                self.carrier[y].append(b)
            trail: list = []
            try:
                self.assign(f, a, b, trail)
            except _Dead:
                self.undo(trail)
                if created:
                    self.carrier[y].pop()
                continue
            yield from self.run()
            self.undo(trail)
            if created:
                self.carrier[y].pop()


def enumerate_csets(C: Category, sizes: Mapping[str, int]) -> Iterator[CSet]:
    """Every C-set with carriers ``{"1", ..., str(n)}`` of the given sizes (labeled, not up to iso)."""
    carrier = {x: [str(i) for i in range(1, sizes.get(x, 0) + 1)] for x in C.objects}
    yield from _ActionSearch(C, carrier).run()


def size_vectors(C: Category, max_total: int, min_total: int = 0) -> Iterator[dict[str, int]]:
    """All per-object size assignments with total in ``[min_total, max_total]``."""
    objs = C.objects

    def rec(i, left):
        if i == len(objs):
            yield {}
            return
        for n in range(left + 1):
            for rest in rec(i + 1, left - n):
                yield {objs[i]: n, **rest}

    for v in rec(0, max_total):
        if sum(v.values()) >= min_total:
            yield v


def all_csets(C: Category, max_total: int) -> Iterator[CSet]:
    for sizes in size_vectors(C, max_total):
        yield from enumerate_csets(C, sizes)


def random_cset(C: Category, sizes: Mapping[str, int], rng: random.Random,
                node_limit: int = 10_000) -> CSet | None:
    """A random C-set with the given carrier sizes, or None if none was found."""
    carrier = {x: [str(i) for i in range(1, sizes.get(x, 0) + 1)] for x in C.objects}
    for O in _ActionSearch(C, carrier, rng=rng, node_limit=node_limit).run():
        return O
    return None


def enumerate_cyclic(C: Category, x0: str, caps: Mapping[str, int] | None = None) -> Iterator[CSet]:
    """C-sets generated by a single element ``"1"`` at ``x0``.

    New tokens are introduced in order of first use, so each pair
    (C-set, generator) appears exactly once up to isomorphism fixing the
    generator.
    """
    if caps is None:
        caps = {y: len(C.hom(x0, y)) for y in C.objects}
    carrier = {x: [] for x in C.objects}
    carrier[x0].append("1")
    yield from _ActionSearch(C, carrier, caps=caps, grow=True).run()
