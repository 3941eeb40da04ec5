"""Grow the infinite-type witness family for the non-groupoid examples."""

import argparse
import time
from dataclasses import dataclass

from csetkit import library
from csetkit.characterize import find_noninvertible, witness_infinite_type


@dataclass
class GrowthConfig:
    n_max: int = 5
    categories: tuple[str, ...] = ("arrow", "path", "loop", "idempotent-loop")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=5)
    ap.add_argument("categories", nargs="*")
    a = ap.parse_args()
    cfg = GrowthConfig(a.nmax, tuple(a.categories) or GrowthConfig.categories)
    for name in cfg.categories:
        C = library.category(name)
        alpha = find_noninvertible(C).morphism
        t0 = time.perf_counter()
        cert = witness_infinite_type(C, alpha, cfg.n_max)
        dt = time.perf_counter() - t0
        ns = [e.n for e in cert.entries]
        print(f"{name:<16} along {cert.morphism!r:<6} n={ns} restriction sizes {cert.restriction_sizes()} "
              f"({dt:.2f}s)")


if __name__ == "__main__":
    main()
