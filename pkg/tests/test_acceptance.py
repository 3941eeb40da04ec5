"""Acceptance criteria, one test per criterion; each records a PASS/FAIL line."""

import itertools
import random

from csetkit import library
from csetkit.adjunction import AdjunctionContext, unit, verify_adjunction
from csetkit.biset import BElem, identity_biset, walk_action
from csetkit.burnside import (
    BurnsideElt,
    InfiniteRank,
    decompose_to_element,
    enumerate_indecomposables,
    multiplication_table,
    rank,
    ring_identity,
    ring_multiply,
)
from csetkit.characterize import audit, witness_infinite_type
from csetkit.cset import (
    are_isomorphic,
    decompose,
    disjoint_union_all,
    enumerate_subfunctors,
    is_indecomposable,
    is_simple,
    pointwise_product,
)
from csetkit.errors import TheoremViolation
from csetkit.fincat import Walk, delooping, is_groupoid, left_inverses, subcategory, validate_category
from csetkit.search import all_csets, random_cset

from conftest import record_criterion
from oracles import element_graph_components, subgroup_conjugacy_classes

SEED = 20240601


def _split_mono_category():
    return validate_category(
        ["x", "y"],
        [("1x", "x", "x"), ("1y", "y", "y"), ("s", "x", "y"), ("r", "y", "x"), ("e", "y", "y")],
        {"x": "1x", "y": "1y"},
        [("s", "r", "1x"), ("r", "s", "e"), ("e", "e", "e"), ("s", "e", "s"), ("e", "r", "r")],
    )


def corpus_categories():
    cats = {name: library.category(name) for name in library.CATEGORIES}
    cats["loop-index2-period3"] = library.loop_category(2, 3)
    cats["split-mono"] = _split_mono_category()
    cats["klein"] = library.klein_group()
    return cats


def test_criterion_1_audit_corpus():
    violations, problems = 0, []
    groups = library.groups_up_to_order(6)
    for name, table in groups.items():
        try:
            rep = audit(delooping(table), n_max=3)
        except TheoremViolation:
            violations += 1
            continue
        if not rep.all_true:
            problems.append(f"{name} not all-true")
    for name in ("arrow", "path", "idempotent-loop"):
        try:
            rep = audit(library.category(name), n_max=3)
        except TheoremViolation:
            violations += 1
            continue
        if not rep.all_false:
            problems.append(f"{name} not all-false")
        if "condition_iv" not in rep.witnesses:
            problems.append(f"{name} has no (iv) counterexample")
        cert = rep.witnesses.get("infinite_type")
        if cert is None or len(cert.entries) != 3:
            problems.append(f"{name} has no n_max=3 certificate")
    ok = violations == 0 and not problems
    record_criterion(1, ok, f"{len(groups)} groups all-true, 3 non-groupoids all-false; "
                            f"theorem violations={violations}; problems={problems}")
    assert ok


def test_criterion_2_decomposition_oracle():
    rng = random.Random(SEED)
    bases = {
        "arrow": library.arrow_category(),
        "path": library.path_category(),
        "idempotent-loop": library.idempotent_loop_category(),
        "c3": library.cyclic_group(3),
        "s3": library.symmetric_group(),
    }
    checked, mismatches = 0, 0
    for name, C in itertools.cycle(bases.items()):
        if checked >= 250:
            break
        sizes = {x: rng.randint(0, 5) for x in C.objects}
        O = random_cset(C, sizes, rng)
        if O is None:
            continue
        checked += 1
        parts = decompose(O)
        ours = {frozenset((e.at, e.token) for e in p.elements()) for p in parts}
        if ours != set(element_graph_components(O)):
            mismatches += 1
        elif are_isomorphic(disjoint_union_all(parts, C), O) is None:
            mismatches += 1
    ok = checked >= 200 and mismatches == 0
    record_criterion(2, ok, f"{checked} seeded C-sets over {len(bases)} bases; mismatches={mismatches}")
    assert ok


def test_criterion_3_simplicity_oracle():
    disagreements, total = 0, 0
    for C in (library.arrow_category(), library.cyclic_group(2)):
        for O in all_csets(C, 8):
            if O.is_empty():
                continue
            total += 1
            if is_simple(O) != (len(enumerate_subfunctors(O)) == 2):
                disagreements += 1
    O0, O1, O2 = (library.arrow_omega(n) for n in range(3))
    named = is_simple(O0) and not is_simple(O1) and is_indecomposable(O2) and not is_simple(O2)
    ok = disagreements == 0 and named
    record_criterion(3, ok, f"{total} C-sets of size <= 8 checked, disagreements={disagreements}; "
                            "Ω_0 simple, Ω_1 not simple (proper subfunctor {y}), "
                            "Ω_2 indecomposable and not simple")
    assert ok


def test_criterion_4_burnside_rings():
    problems = []
    expected = {"c2": 2, "c3": 2, "s3": 4}
    tables = library.groups_up_to_order(6)
    for name, want in expected.items():
        C = delooping(tables[name])
        got, oracle = rank(C), subgroup_conjugacy_classes(tables[name])
        if not (got == want == oracle):
            problems.append(f"rank {name}: got {got}, oracle {oracle}, want {want}")
        reg = enumerate_indecomposables(C)
        T = multiplication_table(reg)
        n = len(reg)
        one = ring_identity(reg)
        basis = [BurnsideElt.basis(i) for i in range(n)]
        for i, j in itertools.product(range(n), repeat=2):
            if T[i][j] != T[j][i]:
                problems.append(f"{name}: not commutative at {i},{j}")
        for a, b, c in itertools.product(basis, repeat=3):
            if ring_multiply(reg, ring_multiply(reg, a, b), c) != ring_multiply(reg, a, ring_multiply(reg, b, c)):
                problems.append(f"{name}: not associative")
        for a in basis:
            if ring_multiply(reg, one, a) != a or ring_multiply(reg, a, one) != a:
                problems.append(f"{name}: unit law fails")
    for order in (2, 3):
        G = library.cyclic_group(order)
        reg = enumerate_indecomposables(G)
        R = library.regular(G)
        r = decompose_to_element(reg, R)
        sq = decompose_to_element(reg, pointwise_product(R, R))
        if sq != r.scale(order) or ring_multiply(reg, r, r) != sq:
            problems.append(f"[reg]^2 != {order}[reg] for C_{order}")
    ok = not problems
    record_criterion(4, ok, "ranks C2=2, C3=2, S3=4 match the subgroup oracle; ring axioms and "
                            f"[reg]^2 = |G|[reg] for C2, C3; problems={problems}")
    assert ok


def test_criterion_5_no_left_inverse_lemma():
    checked, failures = 0, []
    for name, C in corpus_categories().items():
        B = identity_biset(C)
        for alpha in C.morphisms:
            if left_inverses(C, alpha):
                continue
            x = C.src[alpha]
            for t in (1, 2, 3):
                w = Walk(x, ((alpha, True), (alpha, False)) * t)
                checked += 1
                if walk_action(B, "right", w, BElem(x, x, C.identity[x])):
                    failures.append((name, alpha, t))
    ok = checked > 0 and not failures
    record_criterion(5, ok, f"{checked} (morphism, t) pairs give the empty set; failures={failures}")
    assert ok


def test_criterion_6_adjunction():
    problems, pairs = [], 0
    P = library.path_category()
    D = subcategory(P, {"x", "y"}, {"1x", "1y", "a"})
    G = library.cyclic_group(2)
    for C, sub in ((P, D), (G, G)):
        ctx = AdjunctionContext(C, sub)
        targets = list(all_csets(C, 4))
        for Om in all_csets(sub, 4):
            for Psi in targets:
                pairs += 1
                rep = verify_adjunction(ctx, Om, Psi)
                if not rep.passed:
                    problems.append((Om, Psi, rep.failures[:1]))
    ctx = AdjunctionContext(P, D)
    for n in range(0, 5):
        if not unit(ctx, library.arrow_omega(n, D)).is_injective():
            problems.append(f"unit not injective on Ω_{n}")
    ok = not problems
    record_criterion(6, ok, f"{pairs} (Ω, Ψ) pairs: hom counts equal, α and β mutually inverse; "
                            f"η injective for Ω_0..Ω_4; problems={len(problems)}")
    assert ok


def test_criterion_7_witness_monotone():
    cert = witness_infinite_type(library.arrow_category(), "a", n_max=4)
    sizes = cert.restriction_sizes()
    comps = cert.components()
    increasing = all(a < b for a, b in zip(sizes, sizes[1:]))
    distinct = all(are_isomorphic(a, b) is None for a, b in itertools.combinations(comps, 2))
    ok = len(sizes) == 4 and increasing and distinct
    record_criterion(7, ok, f"restriction sizes {sizes}; pairwise non-isomorphic={distinct}")
    assert ok


def test_criterion_8_rank_vs_groupoid():
    mismatches = []
    cats = corpus_categories()
    for name, C in cats.items():
        r = rank(C)
        finite = not isinstance(r, InfiniteRank)
        if finite != is_groupoid(C):
            mismatches.append(name)
    ok = not mismatches
    record_criterion(8, ok, f"{len(cats)} categories; rank finite iff groupoid; mismatches={mismatches}")
    assert ok
