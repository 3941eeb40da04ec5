"""``csetkit`` command line.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import library
from .adjunction import AdjunctionContext, induce_functor, restrict_functor, plain_restriction, unit, verify_adjunction
from .biset import BElem, compose_bisets, hom_biset, walk_action
from .burnside import (
    IsoClassRegistry,
    enumerate_indecomposables,
    multiplication_table,
    render_table,
    ring_identity,
    table_to_dict,
)
from .characterize import audit, audit_components
from .cset import (
    SUBFUNCTOR_BOUND,
    Elem,
    are_isomorphic,
    decompose,
    enumerate_subfunctors,
    generated_subset,
    is_indecomposable,
    is_simple,
    restrict,
    walk_orbit,
)
from .errors import CSetKitError
from .fincat import Walk, is_connected, is_groupoid
from .io import (
    biset_to_dict,
    category_to_dict,
    cset_from_dict,
    cset_to_dict,
    dump_json,
    group_table_from_dict,
    load_biset,
    load_category,
    load_cset,
    load_functor,
    load_subcategory,
    read_json,
    resolve_category,
)


class Out:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, text: str, payload):
        if self.as_json:
            print(dump_json(payload), file=self.stream)
        else:
            print(text, file=self.stream)


def _category(args):
    if getattr(args, "example", None):
        return library.category(args.example)
    path = getattr(args, "file", None) or getattr(args, "cat", None)
    if not path:
        raise CSetKitError("give a category file or --example NAME")
    return load_category(path)


def _cset_lines(O) -> str:
    lines = []
    for x in O.base.objects:
        lines.append(f"  {x}: {{{', '.join(O.carrier[x])}}}")
    return "\n".join(lines)


def _sub_lines(S) -> str:
    P = S.parent
    return "\n".join(f"  {x}: {{{', '.join(a for a in P.carrier[x] if a in S.subset[x])}}}"
                     for x in P.base.objects)


def _sub_payload(S) -> dict:
    P = S.parent
    return {x: [a for a in P.carrier[x] if a in S.subset[x]] for x in P.base.objects}


# cat

def cmd_cat(args, out: Out) -> int:
    if args.cmd == "deloop":
        C = group_table_from_dict(read_json(args.table), str(args.table))
        out.emit(dump_json(category_to_dict(C)), category_to_dict(C))
        return 0
    C = _category(args)
    if args.cmd == "validate":
        summary = {"valid": True, "objects": len(C.objects), "morphisms": len(C.morphisms)}
        out.emit(f"valid category: {len(C.objects)} objects, {len(C.morphisms)} morphisms", summary)
        return 0
    if args.cmd == "show":
        out.emit(dump_json(category_to_dict(C)), category_to_dict(C))
        return 0
    if args.cmd == "is-groupoid":
        v = is_groupoid(C)
        out.emit("groupoid" if v else "not a groupoid", {"groupoid": v})
        return 0 if v else 1
    if args.cmd == "is-connected":
        v = is_connected(C)
        out.emit("connected" if v else "not connected", {"connected": v})
        return 0 if v else 1
    raise CSetKitError(f"unknown cat command {args.cmd}")


# cset

def cmd_cset(args, out: Out) -> int:
    if args.cmd == "iso":
        A, B = load_cset(args.a), load_cset(args.b)
        eta = are_isomorphic(A, B)
        if eta is None:
            out.emit("not isomorphic", {"isomorphic": False})
            return 1
        out.emit("isomorphic via\n" + "\n".join(f"  {x}: {c}" for x, c in eta.component.items()),
                 {"isomorphic": True, "components": eta.component})
        return 0
    O = load_cset(args.file)
    if args.cmd == "validate":
        out.emit(f"valid C-set of size {O.size()}\n{_cset_lines(O)}", {"valid": True, "size": O.size()})
        return 0
    if args.cmd == "decompose":
        parts = decompose(O)
        text = [f"{len(parts)} indecomposable component(s)"]
        for i, p in enumerate(parts):
            text.append(f"component {i}:\n{_cset_lines(p)}")
        out.emit("\n".join(text), {"components": [cset_to_dict(p, inline=False) for p in parts]})
        return 0
    if args.cmd in ("orbit", "generated"):
        u = Elem(args.at, args.elem)
        S = walk_orbit(O, u) if args.cmd == "orbit" else generated_subset(O, u)
        out.emit(f"{args.cmd} of {args.elem} at {args.at}:\n{_sub_lines(S)}", {"subset": _sub_payload(S)})
        return 0
    if args.cmd == "is-simple":
        v = is_simple(O)
        out.emit("simple" if v else "not simple", {"simple": v})
        return 0 if v else 1
    if args.cmd == "is-indecomposable":
        v = is_indecomposable(O)
        out.emit("indecomposable" if v else "not indecomposable", {"indecomposable": v})
        return 0 if v else 1
    if args.cmd == "subfunctors":
        subs = enumerate_subfunctors(O, args.bound or SUBFUNCTOR_BOUND)
        out.emit(f"{len(subs)} subfunctor(s)\n" + "\n---\n".join(_sub_lines(s) for s in subs),
                 {"count": len(subs), "subfunctors": [_sub_payload(s) for s in subs]})
        return 0
    if args.cmd == "restrict":
        D = load_subcategory(args.sub, O.base)
        R = restrict(O, D)
        out.emit(f"restriction:\n{_cset_lines(R)}", cset_to_dict(R))
        return 0
    raise CSetKitError(f"unknown cset command {args.cmd}")


# biset

def _parse_steps(text: str) -> tuple:
    steps = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        steps.append((part[1:], False) if part.startswith("~") else (part, True))
    return tuple(steps)


def cmd_biset(args, out: Out) -> int:
    if args.cmd == "compose":
        B = compose_bisets(load_biset(args.left), load_biset(args.right))
    elif args.cmd == "hom":
        B = hom_biset(load_functor(args.f), load_functor(args.g))
    elif args.cmd == "walk-action":
        B = load_biset(args.file)
        w = Walk(args.start, _parse_steps(args.steps))
        res = walk_action(B, args.side, w, BElem(args.x, args.y, args.elem))
        ordered = sorted(res)
        out.emit("{" + ", ".join(ordered) + "}", {"result": ordered})
        return 0
    else:
        raise CSetKitError(f"unknown biset command {args.cmd}")
    d = biset_to_dict(B)
    sizes = "\n".join(f"  ({x},{y}): {n}" for (x, y), n in B.fiber_sizes().items())
    out.emit(f"biset fibers:\n{sizes}", d)
    return 0


# adj

def _load_over(path, C):
    d = read_json(path)
    if "category" in d:
        base = resolve_category(d["category"], Path(path).parent, f"{path}.category")
        if base != C:
            raise CSetKitError(f"{path} is not over the expected category")
    return cset_from_dict(d, Path(path).parent, str(path), category=C)


def cmd_adj(args, out: Out) -> int:
    C = load_category(args.cat)
    D = load_subcategory(args.sub, C)
    ctx = AdjunctionContext(C, D)
    if args.cmd == "restrict":
        Psi = _load_over(args.cset, C)
        R = restrict_functor(ctx, Psi)
        same = are_isomorphic(R, plain_restriction(ctx, Psi)) is not None
        out.emit(f"r(Psi):\n{_cset_lines(R)}\nisomorphic to plain restriction: {same}",
                 {"restriction": cset_to_dict(R, inline=False), "matches_plain_restriction": same})
        return 0
    Om = _load_over(args.cset, D)
    if args.cmd == "induce":
        I = induce_functor(ctx, Om)
        out.emit(f"i(Omega):\n{_cset_lines(I)}", {"induced": cset_to_dict(I, inline=False)})
        return 0
    if args.cmd == "unit":
        eta = unit(ctx, Om)
        inj = eta.injective_components()
        out.emit("unit:\n" + "\n".join(f"  {x}: {c}  injective={inj[x]}" for x, c in eta.component.items()),
                 {"components": eta.component, "injective": inj})
        return 0
    if args.cmd == "verify":
        if not args.target:
            raise CSetKitError("verify needs --target (a C-set over the ambient category)")
        Psi = _load_over(args.target, C)
        rep = verify_adjunction(ctx, Om, Psi, bound=args.bound or 10_000)
        out.emit(
            f"|Hom(i(Omega), Psi)| = {rep.left_count}, |Hom(Omega, r(Psi))| = {rep.right_count}, "
            f"alpha/beta mutually inverse: {rep.passed}",
            rep.to_dict(),
        )
        return 0 if rep.passed else 1
    raise CSetKitError(f"unknown adj command {args.cmd}")


# burnside

def cmd_burnside(args, out: Out) -> int:
    C = _category(args)
    result = enumerate_indecomposables(C, args.bound or 3)
    if not isinstance(result, IsoClassRegistry):
        sizes = result.restriction_sizes()
        out.emit(f"infinite rank: not a groupoid; witness along {result.morphism!r} with restriction sizes {sizes}",
                 {"rank": None, "finite": False, "certificate": result.to_dict()})
        return 1
    reg = result
    if args.cmd == "rank":
        out.emit(f"rank {len(reg)}", {"rank": len(reg), "finite": True})
        return 0
    if args.cmd == "classes":
        text = [f"{len(reg)} indecomposable classes"]
        for k, r in enumerate(reg.reps):
            text.append(f"[{k}] sizes {dict(zip(C.objects, r.sizes()))}")
        out.emit("\n".join(text), {"classes": [cset_to_dict(r, inline=False) for r in reg.reps]})
        return 0
    if args.cmd == "table":
        table = multiplication_table(reg)
        ident = ring_identity(reg) if C.objects else None
        text = render_table(reg, table) + (f"\nidentity: {ident}" if ident is not None else "")
        payload = table_to_dict(reg, table)
        out.emit(text, payload)
        return 0
    raise CSetKitError(f"unknown burnside command {args.cmd}")


# audit

def cmd_audit(args, out: Out) -> int:
    C = _category(args)
    corpus = [load_cset(p, C) for p in (args.corpus or [])]
    if not is_connected(C):
        results = audit_components(C, args.nmax)
        text = "\n\n".join(f"component {objs}:\n{r.render()}" for objs, r in results)
        out.emit(text, {"components": [{"objects": objs, **r.to_dict()} for objs, r in results]})
        return 0 if all(r.all_true for _, r in results) else 1
    report = audit(C, args.nmax, corpus)
    out.emit(report.render(), report.to_dict())
    return 0 if report.all_true else 1


# examples

def cmd_examples(args, out: Out) -> int:
    if args.cmd == "list":
        cats = {k: v[0] for k, v in library.CATEGORIES.items()}
        fams = {k: v[0] for k, v in library.CSET_FAMILIES.items()}
        text = ["categories:"] + [f"  {k:<18} {v}" for k, v in cats.items()]
        text += ["C-set families (use --n):"] + [f"  {k:<18} {v}" for k, v in fams.items()]
        out.emit("\n".join(text), {"categories": cats, "cset_families": fams})
        return 0
    if args.cmd == "show":
        if args.name in library.CATEGORIES:
            d = category_to_dict(library.category(args.name))
        elif args.name in library.CSET_FAMILIES:
            d = cset_to_dict(library.CSET_FAMILIES[args.name][1](args.n))
        else:
            raise CSetKitError(f"unknown example {args.name!r}")
        print(dump_json(d), file=out.stream)
        return 0
    raise CSetKitError(f"unknown examples command {args.cmd}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS, help="enumeration bound")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for any random sampling")
    common.add_argument("--example", default=argparse.SUPPRESS, help="use a built-in category")

    p = argparse.ArgumentParser(prog="csetkit", description="Finite categories and their C-sets.")
    p.add_argument("--json", action="store_true", default=False)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--example", default=None)
    groups = p.add_subparsers(dest="group", required=True)

    cat = groups.add_parser("cat", help="categories").add_subparsers(dest="cmd", required=True)
    for name in ("validate", "is-groupoid", "is-connected", "show"):
        sp = cat.add_parser(name, parents=[common])
        sp.add_argument("file", nargs="?")
    sp = cat.add_parser("deloop", parents=[common])
    sp.add_argument("--table", required=True, help="JSON group table {table, identity, names}")

    cs = groups.add_parser("cset", help="C-sets").add_subparsers(dest="cmd", required=True)
    for name in ("validate", "decompose", "is-simple", "is-indecomposable", "subfunctors"):
        cs.add_parser(name, parents=[common]).add_argument("file")
    for name in ("orbit", "generated"):
        sp = cs.add_parser(name, parents=[common])
        sp.add_argument("file")
        sp.add_argument("--at", required=True)
        sp.add_argument("--elem", required=True)
    sp = cs.add_parser("iso", parents=[common])
    sp.add_argument("a")
    sp.add_argument("b")
    sp = cs.add_parser("restrict", parents=[common])
    sp.add_argument("file")
    sp.add_argument("--sub", required=True)

    bs = groups.add_parser("biset", help="bisets").add_subparsers(dest="cmd", required=True)
    sp = bs.add_parser("compose", parents=[common])
    sp.add_argument("left")
    sp.add_argument("right")
    sp = bs.add_parser("hom", parents=[common])
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp = bs.add_parser("walk-action", parents=[common])
    sp.add_argument("file")
    sp.add_argument("--side", choices=("left", "right"), required=True)
    sp.add_argument("--start", required=True, help="object the walk starts at")
    sp.add_argument("--steps", default="", help="comma-separated morphisms, ~f for a backward step")
    sp.add_argument("--x", required=True, help="left object of the element")
    sp.add_argument("--y", required=True, help="right object of the element")
    sp.add_argument("--elem", required=True)

    adj = groups.add_parser("adj", help="restriction/induction").add_subparsers(dest="cmd", required=True)
    for name in ("restrict", "induce", "unit", "verify"):
        sp = adj.add_parser(name, parents=[common])
        sp.add_argument("--cat", required=True)
        sp.add_argument("--sub", required=True)
        sp.add_argument("--cset", required=True)
        sp.add_argument("--target")

    bu = groups.add_parser("burnside", help="Burnside rings").add_subparsers(dest="cmd", required=True)
    for name in ("rank", "table", "classes"):
        sp = bu.add_parser(name, parents=[common])
        sp.add_argument("--cat", dest="file")

    sp = groups.add_parser("audit", parents=[common], help="check the groupoid characterization")
    sp.add_argument("--cat", dest="file")
    sp.add_argument("--nmax", type=int, default=3)
    sp.add_argument("--corpus", nargs="*")

    ex = groups.add_parser("examples", help="built-in library").add_subparsers(dest="cmd", required=True)
    ex.add_parser("list", parents=[common])
    sp = ex.add_parser("show", parents=[common])
    sp.add_argument("name")
    sp.add_argument("--n", type=int, default=2)
    return p


HANDLERS = {
    "cat": cmd_cat,
    "cset": cmd_cset,
    "biset": cmd_biset,
    "adj": cmd_adj,
    "burnside": cmd_burnside,
    "audit": cmd_audit,
    "examples": cmd_examples,
}


def run(argv=None, stream=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    random.seed(args.seed)
    out = Out(args.json, stream)
    try:
        return HANDLERS[args.group](args, out)
    except (CSetKitError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
