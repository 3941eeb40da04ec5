"""Audit every built-in category and a few extra ones; print the verdict table."""

import argparse
import json
from dataclasses import asdict, dataclass

from csetkit import library
from csetkit.characterize import audit
from csetkit.errors import TheoremViolation


@dataclass
class AuditConfig:
    n_max: int = 3
    extra_loops: tuple[tuple[int, int], ...] = ((2, 3), (1, 4))
    as_json: bool = False


def run(cfg: AuditConfig) -> dict:
    cats = {name: library.category(name) for name in library.CATEGORIES}
    for index, period in cfg.extra_loops:
        cats[f"loop-{index}-{period}"] = library.loop_category(index, period)
    rows, violations = {}, 0
    for name, C in cats.items():
        try:
            rep = audit(C, cfg.n_max)
        except TheoremViolation as exc:
            violations += 1
            rows[name] = {"violation": str(exc)}
            continue
        wit = rep.witnesses.get("infinite_type")
        rows[name] = {**rep.verdicts, "restriction_sizes": wit.restriction_sizes() if wit else None}
    return {"config": asdict(cfg), "rows": rows, "violations": violations}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    a = ap.parse_args()
    out = run(AuditConfig(n_max=a.nmax, as_json=a.json))
    if a.json:
        print(json.dumps(out, indent=2))
        return
    print(f"{'category':<22} {'(i)':<5} {'(ii)':<5} {'(iii)':<5} {'(iv)':<5} witness sizes")
    for name, r in out["rows"].items():
        if "violation" in r:
            print(f"{name:<22} VIOLATION {r['violation']}")
            continue
        flags = [r[k] for k in ("semisimple", "finite_type", "groupoid", "orbit_equals_generated")]
        print(f"{name:<22} " + " ".join(f"{'yes' if f else 'no':<5}" for f in flags)
              + f" {r['restriction_sizes'] or '-'}")
    print(f"theorem violations: {out['violations']}")


if __name__ == "__main__":
    main()
