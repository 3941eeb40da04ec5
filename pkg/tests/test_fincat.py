import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from csetkit import library
from csetkit.errors import (
    CompositionGap,
    EndpointMismatch,
    MissingIdentity,
    NonAssociative,
    NotAGroup,
    NotAFunctor,
    NotClosed,
)
from csetkit.fincat import (
    Category,
    Functor,
    Walk,
    connected_components,
    delooping,
    full_subcategory,
    generated_subcategory,
    identity_functor,
    inclusion,
    is_connected,
    is_groupoid,
    opposite,
    product_category,
    subcategory,
    terminal_category,
    validate_category,
)

from conftest import BASES, base
from oracles import brute_has_inverse


ARROW_RAW = dict(
    objects=["x", "y"],
    morphisms=[("1x", "x", "x"), ("1y", "y", "y"), ("a", "x", "y")],
    identity={"x": "1x", "y": "1y"},
)


def test_arrow_category_is_valid():
    C = validate_category(**ARROW_RAW, compose=[("1x", "a", "a"), ("a", "1y", "a")])
    assert C.hom("x", "y") == ["a"]
    assert C.hom("y", "x") == []


def test_c2_delooping_is_valid():
    C = delooping([[0, 1], [1, 0]])
    assert len(C.morphisms) == 2
    assert C.compose("g1", "g1") == "e"


def test_bad_endpoint_in_table():
    with pytest.raises(EndpointMismatch):
        validate_category(**ARROW_RAW, compose=[("a", "1y", "1y")])


def test_identity_composite_pointing_elsewhere():
    # a then 1y recorded as 1y: endpoints x->y vs y->y disagree
    with pytest.raises(EndpointMismatch):
        Category(["x", "y"], ARROW_RAW["morphisms"], ARROW_RAW["identity"],
                 {("1x", "1x"): "1x", ("1y", "1y"): "1y", ("1x", "a"): "a", ("a", "1y"): "1y"})


def test_missing_identity():
    with pytest.raises(MissingIdentity):
        validate_category(["x"], [("f", "x", "x")], {}, [])


def test_composition_gap():
    with pytest.raises(CompositionGap):
        validate_category(["x"], [("1", "x", "x"), ("f", "x", "x")], {"x": "1"}, [])


def test_non_associative_table():
    # f·g with a table that is not a monoid: ff = g, fg = f, gf = g, gg = g
    ms = [("1", "x", "x"), ("f", "x", "x"), ("g", "x", "x")]
    comp = [("f", "f", "g"), ("f", "g", "f"), ("g", "f", "g"), ("g", "g", "g")]
    with pytest.raises(NonAssociative):
        validate_category(["x"], ms, {"x": "1"}, comp)


@pytest.mark.parametrize("name", list(BASES))
def test_library_categories_validate(name):
    C = base(name)
    # re-run full validation from the stored table
    Category(C.objects, C.morphism_records(), C.identity, C.table)


def test_groupoid_verdicts(arrow, c2):
    assert is_groupoid(c2)
    assert not is_groupoid(arrow)
    assert not is_groupoid(library.idempotent_loop_category())


@pytest.mark.parametrize("name", list(BASES))
def test_groupoid_matches_brute_inverse_search(name):
    C = base(name)
    assert is_groupoid(C) == all(brute_has_inverse(C, f) for f in C.morphisms)


@pytest.mark.parametrize("name", ["c2", "c3", "klein", "s3"])
def test_groupoid_hom_sets_biject_with_automorphisms(name):
    C = base(name)
    for x, y in itertools.product(C.objects, repeat=2):
        hom = C.hom(x, y)
        if hom:
            post = {C.compose(g, hom[0]) for g in C.hom(x, x)}
            assert post == set(hom)


def test_connectedness(arrow, c3):
    assert is_connected(arrow)
    assert is_connected(c3)
    two = validate_category(
        ["p", "q"], [("1p", "p", "p"), ("1q", "q", "q")], {"p": "1p", "q": "1q"}, []
    )
    assert not is_connected(two)
    assert connected_components(two) == [["p"], ["q"]]


def test_empty_category_counts_as_connected():
    assert is_connected(Category([], [], {}, {}))


def test_connected_matches_union_find():
    import networkx as nx

    for name in BASES:
        C = base(name)
        G = nx.Graph()
        G.add_nodes_from(C.objects)
        G.add_edges_from((C.src[f], C.tgt[f]) for f in C.morphisms)
        assert is_connected(C) == (nx.number_connected_components(G) == 1)


def test_delooping_s3():
    C = library.symmetric_group(3)
    assert len(C.morphisms) == 6
    assert is_groupoid(C)


def test_delooping_rejects_monoid():
    with pytest.raises(NotAGroup):
        delooping([[0, 1], [1, 1]])


def test_opposite(arrow, c2):
    op = opposite(arrow)
    assert op.src["a"] == "y" and op.tgt["a"] == "x"
    assert opposite(op) == arrow
    assert opposite(c2) == c2  # abelian: table is symmetric


@pytest.mark.parametrize("name", list(BASES))
def test_opposite_is_involution_and_valid(name):
    C = base(name)
    op = opposite(C)
    Category(op.objects, op.morphism_records(), op.identity, op.table)
    assert opposite(op) == C


def test_product_with_unit(arrow):
    one = terminal_category()
    P = product_category(arrow, opposite(one))
    assert len(P.objects) == 2 and len(P.morphisms) == 3
    F = Functor(arrow, P, {x: P.obj(x, "*") for x in arrow.objects},
                {f: P.mor(f, "1*") for f in arrow.morphisms})
    G = Functor(P, arrow, {t: p[0] for t, p in P.obj_pair.items()}, {t: p[0] for t, p in P.mor_pair.items()})
    assert all(G(F(f)) == f for f in arrow.morphisms)


def test_product_counts(arrow):
    P = product_category(arrow, arrow)
    assert len(P.morphisms) == 9
    assert P.identity[P.obj("x", "y")] == P.mor("1x", "1y")
    Category(P.objects, P.morphism_records(), P.identity, P.table)


def test_subcategory_selection(path):
    D = subcategory(path, {"x", "y"}, {"1x", "1y", "a"})
    assert D.morphisms == ("1x", "1y", "a")
    assert subcategory(path, path.objects, path.morphisms) == path
    with pytest.raises(MissingIdentity):
        subcategory(path, {"x", "y"}, {"a"})
    with pytest.raises(NotClosed):
        subcategory(path, {"x", "y", "z"}, {"1x", "1y", "1z", "a", "b"})


def test_inclusion_functor(path):
    D = subcategory(path, {"x", "y"}, {"1x", "1y", "a"})
    iota = inclusion(D, path)
    assert iota("a") == "a"
    with pytest.raises(NotAFunctor):
        inclusion(library.arrow_category(), library.cyclic_group(2))


def test_generated_subcategory_of_loop():
    L = library.loop_category(2, 3)
    D = generated_subcategory(L, ["a"])
    assert D == L
    assert generated_subcategory(library.path_category(), ["a"]).morphisms == ("1x", "1y", "a")


def test_full_subcategory(path):
    D = full_subcategory(path, ["y", "z"])
    assert D.morphisms == ("1y", "1z", "b")


def test_identity_functor_validates():
    for name in BASES:
        identity_functor(base(name))


def test_walk_endpoints_and_opposite(arrow):
    w = Walk("x", (("a", True), ("a", False)))
    assert w.end(arrow) == "x"
    assert w.opposite(arrow) == Walk("x", (("a", True), ("a", False)))
    assert (w ** 2).steps == w.steps * 2
    with pytest.raises(EndpointMismatch):
        Walk("y", (("a", True),)).end(arrow)


def test_reduced_walk(path):
    assert not Walk("x", (("a", True), ("b", True))).is_reduced(path)
    assert Walk("x", (("a", True), ("a", False))).is_reduced(path)


@given(st.sampled_from(list(BASES)), st.data())
def test_random_walk_opposite_round_trip(name, data):
    C = base(name)
    here = C.objects[0]
    steps = []
    for _ in range(data.draw(st.integers(0, 6))):
        options = [(f, True) for f in C.out_of(here)] + [(f, False) for f in C.into(here)]
        f, fw = data.draw(st.sampled_from(options))
        steps.append((f, fw))
        here = C.tgt[f] if fw else C.src[f]
    w = Walk(C.objects[0], tuple(steps))
    assert w.end(C) == here
    assert w.opposite(C).end(C) == C.objects[0]
    assert w.opposite(C).opposite(C) == w
