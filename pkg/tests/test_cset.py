import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csetkit import library
from csetkit.cset import (
    CSet,
    Elem,
    NatTrans,
    SubCSet,
    are_isomorphic,
    decompose,
    disjoint_union,
    disjoint_union_all,
    empty_cset,
    enumerate_subfunctors,
    generated_subset,
    identity_nat,
    invariant,
    is_indecomposable,
    is_simple,
    iso_classes,
    natural_transformations,
    point_cset,
    pointwise_product,
    relabel,
    representable,
    restrict,
    validate_cset,
    walk_image,
    walk_orbit,
)
from csetkit.errors import (
    BaseMismatch,
    CompositionMismatch,
    EmptyCSet,
    IdentityNotIdentity,
    NonTotalFunction,
    NotASubcategory,
    NotNatural,
    TooLarge,
)
from csetkit.fincat import Walk, subcategory
from csetkit.search import enumerate_csets

from conftest import base, csets
from oracles import (
    as_element_set,
    brute_isomorphic,
    brute_nat_count,
    brute_product_components,
    element_graph_components,
    orbit_by_walks,
)


def comp_sets(parts_as_subsets):
    return sorted(
        (frozenset((x, a) for x, s in p.subset.items() for a in s) for p in parts_as_subsets),
        key=sorted,
    )


# validation

def test_valid_arrow_set(arrow):
    O = validate_cset(arrow, {"x": ["1", "2"], "y": ["1"]}, {"a": {"1": "1", "2": "1"}})
    assert O.size() == 3
    assert O("a", "2") == "1"
    assert O("1x", "2") == "2"


def test_partial_function_rejected(arrow):
    with pytest.raises(NonTotalFunction):
        validate_cset(arrow, {"x": ["1", "2"], "y": ["1"]}, {"a": {"1": "1"}})


def test_value_outside_carrier_rejected(arrow):
    with pytest.raises(NonTotalFunction):
        validate_cset(arrow, {"x": ["1"], "y": ["1"]}, {"a": {"1": "9"}})


def test_identity_must_act_trivially(arrow):
    with pytest.raises(IdentityNotIdentity):
        validate_cset(arrow, {"x": ["1", "2"], "y": ["1"]},
                      {"1x": {"1": "2", "2": "1"}, "a": {"1": "1", "2": "1"}})


def test_composition_law_checked(c2):
    # the generator acting as a 3-cycle does not square to the identity
    with pytest.raises(CompositionMismatch):
        validate_cset(c2, {"*": ["1", "2", "3"]}, {"g1": {"1": "2", "2": "3", "3": "1"}})


def test_idempotent_law_checked():
    L = library.idempotent_loop_category()
    with pytest.raises(CompositionMismatch):
        validate_cset(L, {"x": ["1", "2"]}, {"a": {"1": "2", "2": "1"}})


def test_empty_and_point(arrow):
    E = empty_cset(arrow)
    assert E.is_empty() and E.size() == 0
    P = point_cset(arrow)
    assert P.sizes() == (1, 1)
    # the point over the arrow is Ω_1, which has {y} as a proper subfunctor
    assert not is_simple(P)
    assert is_simple(point_cset(base("c2")))


def test_representable_sizes(path):
    assert representable(path, "x").sizes() == (1, 1, 1)
    assert representable(path, "y").sizes() == (0, 1, 1)
    assert representable(base("s3"), "*").size() == 6


# Ω family on the arrow category

def test_omega_zero_is_simple():
    O0 = library.arrow_omega(0)
    assert O0.sizes() == (0, 1)
    assert is_simple(O0)


def test_omega_one_is_not_simple():
    O1 = library.arrow_omega(1)
    assert is_indecomposable(O1)
    assert not is_simple(O1)
    subs = enumerate_subfunctors(O1)
    assert len(subs) == 3
    assert any(s.subset == {"x": set(), "y": {"1"}} for s in subs)


def test_omega_two_indecomposable_not_simple():
    O2 = library.arrow_omega(2)
    assert is_indecomposable(O2)
    assert not is_simple(O2)


@pytest.mark.parametrize("n", range(1, 6))
def test_omega_family_pairwise_distinct(n):
    assert not are_isomorphic(library.arrow_omega(n), library.arrow_omega(n + 1))


def test_empty_is_neither_simple_nor_indecomposable(arrow):
    E = empty_cset(arrow)
    assert not is_indecomposable(E)
    with pytest.raises(EmptyCSet):
        is_simple(E)


# sub-C-sets

def test_subcset_closedness(arrow):
    O = library.arrow_omega(2)
    assert SubCSet(O, {"x": [], "y": ["1"]}).is_closed()
    with pytest.raises(Exception):
        SubCSet(O, {"x": ["1"], "y": []})
    S = SubCSet(O, {"x": [], "y": ["1"]})
    assert Elem("y", "1") in S and S.size() == 1 and not S.is_whole()
    assert S.issubset(O.whole())
    assert S.as_cset().sizes() == (0, 1)


def test_generated_subset_vs_orbit():
    O = library.arrow_omega(3)
    g = generated_subset(O, Elem("x", "2"))
    assert g.subset == {"x": {"2"}, "y": {"1"}}
    orb = walk_orbit(O, Elem("x", "2"))
    assert orb.is_whole()


def test_too_large_subfunctor_enumeration():
    with pytest.raises(TooLarge):
        enumerate_subfunctors(library.arrow_omega(12))


def test_restrict_to_subcategory(path):
    O = representable(path, "x")
    D = subcategory(path, {"x", "y"}, {"1x", "1y", "a"})
    R = restrict(O, D)
    assert R.sizes() == (1, 1)
    # the standalone arrow category has the same tables, so it counts as a subcategory
    assert restrict(O, library.arrow_category()) == R
    with pytest.raises(NotASubcategory):
        restrict(O, base("c2"))


# walk actions

def test_walk_image_backward_is_preimage():
    O = library.arrow_omega(3)
    w = Walk("y", (("a", False),))
    assert walk_image(O, w, ["1"]) == {"1", "2", "3"}
    zig = Walk("x", (("a", True), ("a", False)))
    assert walk_image(O, zig, ["1"]) == {"1", "2", "3"}


def test_walk_image_empties_out(arrow):
    O = validate_cset(arrow, {"x": ["1"], "y": ["1", "2"]}, {"a": {"1": "1"}})
    assert walk_image(O, Walk("y", (("a", False),)), ["2"]) == set()


# decomposition

def test_decompose_known():
    O = disjoint_union(library.arrow_omega(2), library.arrow_omega(0))
    parts = decompose(O)
    assert [p.sizes() for p in parts] == [(2, 1), (0, 1)]


@given(csets())
def test_decompose_matches_element_graph(O):
    ours = sorted(
        (frozenset((e.at, e.token) for e in p.elements()) for p in decompose(O)), key=sorted
    )
    theirs = sorted(element_graph_components(O), key=sorted)
    assert ours == theirs


@given(csets())
def test_decompose_reassembles(O):
    parts = decompose(O)
    assert all(is_indecomposable(p) for p in parts)
    assert sum(p.size() for p in parts) == O.size()
    back = disjoint_union_all(parts, O.base)
    assert are_isomorphic(back, O) is not None


@given(csets(), st.data())
def test_orbit_equals_walk_closure(O, data):
    if O.is_empty():
        return
    u = data.draw(st.sampled_from(list(O.elements())))
    orb = walk_orbit(O, u)
    reach = orbit_by_walks(O, u, max_len=2 * O.size() + 2)
    assert {(e.at, e.token) for e in orb.elements()} == reach


@given(csets())
def test_generated_subsets_are_closed(O):
    for e in O.elements():
        assert generated_subset(O, e).is_closed()


@settings(max_examples=40)
@given(csets(max_per_object=3))
def test_is_simple_matches_subfunctor_count(O):
    if O.is_empty() or O.size() > 10:
        return
    assert is_simple(O) == (len(enumerate_subfunctors(O)) == 2)


# products and unions

@given(csets(names=("arrow",)), csets(names=("arrow",)))
def test_union_sizes_add(A, B):
    U = disjoint_union(A, B)
    assert U.sizes() == tuple(a + b for a, b in zip(A.sizes(), B.sizes()))
    assert len(decompose(U)) == len(decompose(A)) + len(decompose(B))


@given(csets(names=("c2",)), csets(names=("c2",)))
def test_product_components_match_oracle(A, B):
    P = pointwise_product(A, B)
    assert P.sizes() == tuple(a * b for a, b in zip(A.sizes(), B.sizes()))
    assert len(decompose(P)) == len(brute_product_components(A, B))


def test_union_base_mismatch(arrow, c2):
    with pytest.raises(BaseMismatch):
        disjoint_union(point_cset(arrow), point_cset(c2))


def test_product_with_point_is_identity():
    O = library.arrow_omega(3)
    assert are_isomorphic(pointwise_product(O, point_cset(O.base)), O)


# natural transformations and isomorphism

def test_nat_trans_validation():
    O = library.arrow_omega(2)
    P = point_cset(O.base)
    t = NatTrans(O, P, {"x": {"1": "*", "2": "*"}, "y": {"1": "*"}})
    assert not t.is_injective()
    assert t.injective_components() == {"x": False, "y": True}
    with pytest.raises(NotNatural):
        NatTrans(P, O, {"x": {"*": "1"}, "y": {"*": "9"}})


def test_identity_and_inverse():
    O = library.arrow_omega(2)
    i = identity_nat(O)
    assert i.is_bijective() and i.inverse() == i and i.then(i) == i


@pytest.mark.parametrize("name", ["arrow", "c2", "idempotent-loop"])
def test_nat_count_matches_brute_force(name):
    C = base(name)
    small = [O for n in range(0, 3) for O in _sized(C, n)]
    for A, B in itertools.product(small[:6], repeat=2):
        assert len(natural_transformations(A, B)) == brute_nat_count(A, B)


def _sized(C, total):
    from csetkit.search import size_vectors

    for sv in size_vectors(C, total, total):
        yield from itertools.islice(enumerate_csets(C, sv), 3)


def test_nat_limit(c3):
    R = library.regular(c3)
    assert len(natural_transformations(R, R)) == 3
    assert len(natural_transformations(R, R, limit=3)) == 3
    with pytest.raises(TooLarge):
        natural_transformations(R, R, limit=2)


@given(csets(max_per_object=3), st.randoms(use_true_random=False))
def test_isomorphic_to_shuffled_copy(O, rnd):
    C = O.base
    perm = {x: dict(zip(O.carrier[x], rnd.sample(list(O.carrier[x]), len(O.carrier[x])))) for x in C.objects}
    carrier = {x: [perm[x][a] for a in O.carrier[x]] for x in C.objects}
    rnd.shuffle(carrier[C.objects[0]])
    action = {f: {perm[C.src[f]][a]: perm[C.tgt[f]][b] for a, b in O.action[f].items()} for f in C.morphisms}
    Q = CSet(C, carrier, action)
    iso = are_isomorphic(O, Q)
    assert iso is not None and iso.is_bijective()
    assert invariant(O) == invariant(Q)


@pytest.mark.parametrize("name", ["arrow", "c2", "loop"])
def test_isomorphism_matches_brute_force(name):
    C = base(name)
    from csetkit.search import all_csets

    items = list(all_csets(C, 3))
    for A, B in itertools.combinations(items[:40], 2):
        assert (are_isomorphic(A, B) is not None) == brute_isomorphic(A, B)


def test_iso_classes_of_c2_sets_on_two_points(c2):
    items = list(enumerate_csets(c2, {"*": 2}))
    assert len(items) == 2
    assert len(iso_classes(items)) == 2


def test_relabel_preserves_iso():
    O = disjoint_union(library.arrow_omega(2), library.arrow_omega(1))
    R = relabel(O, "p")
    assert list(R.carrier["x"]) == ["p1", "p2", "p3"]
    assert are_isomorphic(O, R)


def test_equality_is_structural():
    assert library.arrow_omega(2) == library.arrow_omega(2)
    assert hash(library.arrow_omega(2)) == hash(library.arrow_omega(2))
    assert library.arrow_omega(2) != library.arrow_omega(3)


def test_element_set_helper_roundtrip():
    O = library.arrow_omega(2)
    assert as_element_set(O) == {(e.at, e.token) for e in O.elements()}
