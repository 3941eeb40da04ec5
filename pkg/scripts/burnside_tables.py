"""Burnside ring tables for the small groups, checked against the subgroup count."""

import argparse
import itertools
from dataclasses import dataclass

from csetkit import library
from csetkit.burnside import (
    BurnsideElt,
    enumerate_indecomposables,
    multiplication_table,
    render_table,
    ring_identity,
    ring_multiply,
)
from csetkit.fincat import delooping


@dataclass
class TableConfig:
    max_order: int = 6
    groups: tuple[str, ...] = ()  # empty means every group up to max_order


def subgroup_classes(table) -> int:
    n = len(table)
    inv = [next(b for b in range(n) if table[a][b] == 0) for a in range(n)]
    subs = [frozenset(S) for r in range(1, n + 1) for S in itertools.combinations(range(n), r)
            if 0 in S and all(table[a][b] in S for a in S for b in S)]
    reps = []
    for H in subs:
        conj = {frozenset(table[table[g][h]][inv[g]] for h in H) for g in range(n)}
        if not any(c in conj for c in reps):
            reps.append(H)
    return len(reps)


def check_axioms(reg) -> bool:
    basis = [BurnsideElt.basis(i) for i in range(len(reg))]
    one = ring_identity(reg)
    mul = lambda a, b: ring_multiply(reg, a, b)  # noqa: E731
    comm = all(mul(a, b) == mul(b, a) for a, b in itertools.product(basis, repeat=2))
    assoc = all(mul(mul(a, b), c) == mul(a, mul(b, c)) for a, b, c in itertools.product(basis, repeat=3))
    unit = all(mul(one, a) == a for a in basis)
    return comm and assoc and unit


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("groups", nargs="*")
    a = ap.parse_args()
    cfg = TableConfig(a.max_order, tuple(a.groups))
    tables = library.groups_up_to_order(cfg.max_order)
    for name in cfg.groups or tables:
        reg = enumerate_indecomposables(delooping(tables[name]))
        T = multiplication_table(reg)
        sizes = [r.size() for r in reg.reps]
        print(f"== {name}: rank {len(reg)} (subgroup classes {subgroup_classes(tables[name])}), "
              f"orbit sizes {sizes}, axioms {'ok' if check_axioms(reg) else 'FAIL'}")
        print(render_table(reg, T))
        print()


if __name__ == "__main__":
    main()
