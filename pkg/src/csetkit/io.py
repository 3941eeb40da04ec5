"""JSON reading and writing for categories, C-sets, functors and bisets.

A category reference inside another file may be an inline object, a path
relative to the referring file, or ``"example:NAME"`` for a built-in.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .biset import Biset, biset_from_actions
from .cset import CSet, validate_cset
from .errors import CategoryError, SchemaError
from .fincat import Category, Functor, delooping, is_subcategory, subcategory, validate_category


def read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(str(exc), location=str(path)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, location=f"{path}: line {exc.lineno} column {exc.colno}") from None


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def _need(d: dict, key: str, kind, where: str):
    if not isinstance(d, dict):
        raise SchemaError("expected an object", location=where)
    if key not in d:
        raise SchemaError(f"missing field {key!r}", location=where)
    if not isinstance(d[key], kind):
        raise SchemaError(f"field {key!r} has the wrong type", location=f"{where}.{key}")
    return d[key]


# categories

def category_to_dict(C: Category) -> dict:
    compose = [[f, g, C.compose(f, g)] for f in C.morphisms for g in C.morphisms if C.tgt[f] == C.src[g]]
    return {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "src": C.src[m], "tgt": C.tgt[m]} for m in C.morphisms],
        "identity": {x: C.identity[x] for x in C.objects},
        "compose": compose,
    }


def category_from_dict(d: dict, where: str = "category") -> Category:
    objects = _need(d, "objects", list, where)
    mors = _need(d, "morphisms", list, where)
    identity = _need(d, "identity", dict, where)
    compose = d.get("compose", [])
    if not isinstance(compose, list):
        raise SchemaError("field 'compose' must be a list", location=f"{where}.compose")
    records = []
    for i, m in enumerate(mors):
        loc = f"{where}.morphisms[{i}]"
        records.append((_need(m, "id", str, loc), _need(m, "src", str, loc), _need(m, "tgt", str, loc)))
    known = {r[0] for r in records}
    triples = []
    for i, entry in enumerate(compose):
        loc = f"{where}.compose[{i}]"
        if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(t, str) for t in entry)):
            raise SchemaError("compose entries are [f, g, h] string triples", location=loc)
        for t in entry:
            if t not in known:
                raise SchemaError(f"unknown morphism {t!r}", location=loc)
        triples.append(tuple(entry))
    for x, e in identity.items():
        if e not in known:
            raise SchemaError(f"unknown morphism {e!r}", location=f"{where}.identity.{x}")
    return validate_category(objects, records, identity, triples)


def resolve_category(ref: Any, base_dir: Path, where: str) -> Category:
    if isinstance(ref, Category):
        return ref
    if isinstance(ref, dict):
        return category_from_dict(ref, where)
    if isinstance(ref, str):
        if ref.startswith("example:"):
            from .library import category

            try:
                return category(ref[len("example:"):])
            except KeyError as exc:
                raise SchemaError(str(exc), location=where) from None
        return load_category(base_dir / ref)
    raise SchemaError("category reference must be an object or a path", location=where)


def load_category(path: str | Path) -> Category:
    return category_from_dict(read_json(path), str(path))


def load_subcategory(path: str | Path, C: Category) -> Category:
    """A subcategory file is either a full category or a selection {objects, morphisms}."""
    d = read_json(path)
    if isinstance(d, dict) and "compose" not in d and "identity" not in d:
        objs = _need(d, "objects", list, str(path))
        mors = _need(d, "morphisms", list, str(path))
        mors = [m["id"] if isinstance(m, dict) else m for m in mors]
        return subcategory(C, objs, mors)
    D = category_from_dict(d, str(path))
    if not is_subcategory(D, C):
        raise CategoryError(f"{path} is not a subcategory of the ambient category")
    return D


def group_table_from_dict(d: dict, where: str = "table") -> Category:
    if isinstance(d, list):
        d = {"table": d}
    table = _need(d, "table", list, where)
    identity = d.get("identity", 0)
    names = d.get("names")
    return delooping(table, identity, names)


# C-sets

def cset_to_dict(O: CSet, inline: bool = True, category_ref: str | None = None) -> dict:
    C = O.base
    out: dict[str, Any] = {}
    if category_ref is not None:
        out["category"] = category_ref
    elif inline:
        out["category"] = category_to_dict(C)
    out["carrier"] = {x: list(O.carrier[x]) for x in C.objects}
    out["action"] = {f: dict(O.action[f]) for f in C.morphisms if not C.is_identity(f)}
    return out


def cset_from_dict(d: dict, base_dir: Path = Path("."), where: str = "cset",
                   category: Category | None = None) -> CSet:
    if category is None:
        if "category" not in d:
            raise SchemaError("missing field 'category'", location=where)
        category = resolve_category(d["category"], base_dir, f"{where}.category")
    carrier = _need(d, "carrier", dict, where)
    action = d.get("action", {})
    if not isinstance(action, dict):
        raise SchemaError("field 'action' must be an object", location=f"{where}.action")
    for x, toks in carrier.items():
        if not isinstance(toks, list) or not all(isinstance(t, str) for t in toks):
            raise SchemaError("carriers are lists of string tokens", location=f"{where}.carrier.{x}")
    return validate_cset(category, carrier, action)


def load_cset(path: str | Path, category: Category | None = None) -> CSet:
    path = Path(path)
    return cset_from_dict(read_json(path), path.parent, str(path), category)


# functors

def functor_to_dict(F: Functor, dom_ref=None, cod_ref=None) -> dict:
    return {
        "dom": dom_ref if dom_ref is not None else category_to_dict(F.dom),
        "cod": cod_ref if cod_ref is not None else category_to_dict(F.cod),
        "objects": dict(F.obj_map),
        "morphisms": dict(F.mor_map),
    }


def functor_from_dict(d: dict, base_dir: Path = Path("."), where: str = "functor") -> Functor:
    dom = resolve_category(_need(d, "dom", (dict, str), where), base_dir, f"{where}.dom")
    cod = resolve_category(_need(d, "cod", (dict, str), where), base_dir, f"{where}.cod")
    objs = _need(d, "objects", dict, where)
    mors = dict(_need(d, "morphisms", dict, where))
    for x in dom.objects:
        e = dom.identity[x]
        if e not in mors and x in objs:
            mors[e] = cod.identity.get(objs[x], e)
    return Functor(dom, cod, objs, mors)


def load_functor(path: str | Path) -> Functor:
    path = Path(path)
    return functor_from_dict(read_json(path), path.parent, str(path))


# bisets

def biset_to_dict(B: Biset, left_ref=None, right_ref=None) -> dict:
    C, D = B.left, B.right
    carrier = {x: {y: list(B.fiber(x, y)) for y in D.objects} for x in C.objects}
    U, P = B.underlying, B.product
    left_act = {
        f: {y: dict(U.action[P.mor(f, D.identity[y])]) for y in D.objects}
        for f in C.morphisms if not C.is_identity(f)
    }
    right_act = {
        g: {x: dict(U.action[P.mor(C.identity[x], g)]) for x in C.objects}
        for g in D.morphisms if not D.is_identity(g)
    }
    return {
        "left": left_ref if left_ref is not None else category_to_dict(C),
        "right": right_ref if right_ref is not None else category_to_dict(D),
        "carrier": carrier,
        "left_action": left_act,
        "right_action": right_act,
    }


def biset_from_dict(d: dict, base_dir: Path = Path("."), where: str = "biset") -> Biset:
    left = resolve_category(_need(d, "left", (dict, str), where), base_dir, f"{where}.left")
    right = resolve_category(_need(d, "right", (dict, str), where), base_dir, f"{where}.right")
    carrier = _need(d, "carrier", dict, where)
    return biset_from_actions(left, right, carrier, d.get("left_action", {}), d.get("right_action", {}))


def load_biset(path: str | Path) -> Biset:
    path = Path(path)
    return biset_from_dict(read_json(path), path.parent, str(path))
