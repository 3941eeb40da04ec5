"""Built-in categories and C-set families used by tests, scripts and the CLI."""

from __future__ import annotations

import itertools
from typing import Callable

from .cset import CSet, representable
from .fincat import Category, delooping, validate_category


def arrow_category() -> Category:
    """x --a--> y."""
    return validate_category(["x", "y"], [("1x", "x", "x"), ("1y", "y", "y"), ("a", "x", "y")],
                             {"x": "1x", "y": "1y"}, [])


def path_category() -> Category:
    """x --a--> y --b--> z with composite ab."""
    return validate_category(
        ["x", "y", "z"],
        [("1x", "x", "x"), ("1y", "y", "y"), ("1z", "z", "z"),
         ("a", "x", "y"), ("b", "y", "z"), ("ab", "x", "z")],
        {"x": "1x", "y": "1y", "z": "1z"},
        [("a", "b", "ab")],
    )


def _power(k: int) -> str:
    return "a" if k == 1 else f"a{k}"


def loop_category(index: int = 1, period: int = 2) -> Category:
    """One object with a loop a subject to a^(index+period) = a^index.

    ``index >= 1`` makes a non-invertible; index 0 gives the cyclic group.
    """
    if period < 1 or index < 0:
        raise ValueError("need period >= 1 and index >= 0")
    top = index + period

    def red(k):
        return k if k < top else index + (k - index) % period

    powers = list(range(top))
    name = {k: "1x" if k == 0 else _power(k) for k in powers}
    morphisms = [(name[k], "x", "x") for k in powers]
    compose = [(name[i], name[j], name[red(i + j)]) for i in powers for j in powers]
    return validate_category(["x"], morphisms, {"x": "1x"}, compose)


def idempotent_loop_category() -> Category:
    """One object with a loop a such that a∘a = a."""
    return loop_category(index=1, period=1)


def arrow_omega(n: int, C: Category | None = None) -> CSet:
    """The indecomposable n-to-1 arrow set: n points at x all sent to the single point of y."""
    C = C or arrow_category()
    xs = [str(i) for i in range(1, n + 1)]
    return CSet(C, {"x": xs, "y": ["1"]}, {"a": {i: "1" for i in xs}})


def loop_omega(n: int, C: Category | None = None, cycle: int = 1) -> CSet:
    """n points: a ``cycle``-cycle on the first points, every other point sent to point 1."""
    C = C or loop_category()
    if n < cycle:
        raise ValueError("need n >= cycle")
    pts = [str(i) for i in range(1, n + 1)]

    def step(i):
        return i % cycle + 1 if i <= cycle else 1

    action = {}
    for f in C.morphisms:
        k = 0 if f == "1x" else (1 if f == "a" else int(f[1:]))
        fn = {}
        for i in range(1, n + 1):
            j = i
            for _ in range(k):
                j = step(j)
            fn[str(i)] = str(j)
        action[f] = fn
    return CSet(C, {"x": pts}, action)


# groups

def cyclic_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def direct_product_table(t1, t2) -> list[list[int]]:
    n1, n2 = len(t1), len(t2)
    return [[t1[a // n2][b // n2] * n2 + t2[a % n2][b % n2] for b in range(n1 * n2)] for a in range(n1 * n2)]


def symmetric_table(k: int) -> list[list[int]]:
    perms = list(itertools.permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    # (p·q)(i) = p(q(i))
    return [[idx[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]


def cyclic_group(n: int) -> Category:
    return delooping(cyclic_table(n))


def klein_group() -> Category:
    return delooping(direct_product_table(cyclic_table(2), cyclic_table(2)))


def symmetric_group(k: int = 3) -> Category:
    return delooping(symmetric_table(k))


def regular(C: Category) -> CSet:
    """Regular action of a one-object category on its own morphisms."""
    (x,) = C.objects
    return representable(C, x)


GROUP_TABLES: dict[str, Callable[[], list[list[int]]]] = {
    "c1": lambda: cyclic_table(1),
    "c2": lambda: cyclic_table(2),
    "c3": lambda: cyclic_table(3),
    "c4": lambda: cyclic_table(4),
    "c2xc2": lambda: direct_product_table(cyclic_table(2), cyclic_table(2)),
    "c5": lambda: cyclic_table(5),
    "c6": lambda: cyclic_table(6),
    "s3": lambda: symmetric_table(3),
}

CATEGORIES: dict[str, tuple[str, Callable[[], Category]]] = {
    "arrow": ("x -a-> y", arrow_category),
    "path": ("x -a-> y -b-> z", path_category),
    "loop": ("one loop a with a^3 = a", lambda: loop_category(1, 2)),
    "idempotent-loop": ("one loop a with a^2 = a", idempotent_loop_category),
}
for _name, _table in GROUP_TABLES.items():
    CATEGORIES[f"delooping-{_name}"] = (f"delooping of {_name.upper()}", (lambda t=_table: delooping(t())))

CSET_FAMILIES: dict[str, tuple[str, Callable[[int], CSet]]] = {
    "arrow-omega": ("n points over x sent to one point over y", arrow_omega),
    "loop-omega": ("n-point tail into a fixed point, over the loop a^3 = a", lambda n: loop_omega(n)),
    "loop-omega-cycle": ("2-cycle with an (n-2)-point tail, over the loop a^3 = a",
                         lambda n: loop_omega(n, cycle=2)),
    "idempotent-omega": ("n-point tail into a fixed point, over a^2 = a",
                         lambda n: loop_omega(n, idempotent_loop_category())),
}


def category(name: str) -> Category:
    try:
        return CATEGORIES[name][1]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; try one of {sorted(CATEGORIES)}") from None


def groups_up_to_order(n: int) -> dict[str, list[list[int]]]:
    """Every group of order <= 6 up to isomorphism, by table."""
    if n > 6:
        raise ValueError("library only covers orders up to 6")
    order = {"c1": 1, "c2": 2, "c3": 3, "c4": 4, "c2xc2": 4, "c5": 5, "c6": 6, "s3": 6}
    return {k: GROUP_TABLES[k]() for k, o in order.items() if o <= n}
