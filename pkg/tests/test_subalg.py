import pytest
from hypothesis import given, settings

from oracles import closed_subsets, is_congruence_labels, partitions, product_tables
from priestley import corpus
from priestley.cornish import E
from priestley.ockham import build_Cm
from priestley.subalg import (
    IDENTITY_GRAPH,
    NEITHER,
    PARTIAL_ISO_GRAPH,
    PRODUCT,
    ProductAlgebra,
    Subuniverse,
    all_congruences,
    all_subuniverse_masks,
    brute_force_partial_isomorphisms,
    brute_force_subuniverses,
    carrier,
    classify_sub_of_product,
    con_sub_duality_check,
    congruence_join,
    congruence_meet,
    is_congruence,
    is_simple,
    is_subuniverse,
    partial_isomorphisms,
    principal_congruence,
    quotient,
    refines,
    sg_mask,
)
from strategies import cornish_spaces


def _plain_tables(a):
    return ([a.lat.join.tolist(), a.lat.meet.tolist()], [list(op) for op in a.ops],
            [a.lat.bot, a.lat.top])


@pytest.mark.parametrize("m,count", [(1, 2), (2, 55), (3, 8), (4, 268)])
def test_square_of_ockham_cycle_subuniverse_counts(m, count):
    # frozen from an independent subset filter (m <= 2) and the worklist engine
    a = E(build_Cm(m))
    assert len(all_subuniverse_masks(ProductAlgebra(a, a))) == count


@pytest.mark.parametrize("key", ["C1", "C2", "Y2", "X2"])
def test_square_subuniverses_match_subset_filter(key):
    a = E(corpus.get(key))
    n, binary, unary, constants = product_tables(a, a)
    assert sorted(all_subuniverse_masks(ProductAlgebra(a, a))) == closed_subsets(n, binary, unary, constants)


def test_cross_product_matches_subset_filter():
    a, b = E(corpus.get("Y2")), E(corpus.get("X2"))
    n, binary, unary, constants = product_tables(a, b)
    assert sorted(all_subuniverse_masks(ProductAlgebra(a, b))) == closed_subsets(n, binary, unary, constants)


@settings(max_examples=25, deadline=None)
@given(cornish_spaces(max_n=3))
def test_plain_subuniverses_match_subset_filter(x):
    a = E(x)
    binary, unary, constants = _plain_tables(a)
    assert sorted(all_subuniverse_masks(a)) == closed_subsets(a.n, binary, unary, constants)
    if a.n <= 12:
        assert sorted(brute_force_subuniverses(carrier(a))) == sorted(all_subuniverse_masks(a))


def test_sg_closes_under_ops():
    a = E(corpus.get("Y3"))
    m = sg_mask(a, 0b0010)
    assert is_subuniverse(a, m)
    assert m == (1 << a.n) - 1   # Y3 has no proper substructure, so its dual is generated by any element


def test_classification_kinds_on_C2_square():
    a = E(build_Cm(2))
    prod = ProductAlgebra(a, a)
    kinds = {}
    for m in all_subuniverse_masks(prod):
        k = classify_sub_of_product(Subuniverse(prod, m)).kind
        kinds[k] = kinds.get(k, 0) + 1
    assert kinds == {PRODUCT: 16, IDENTITY_GRAPH: 4, PARTIAL_ISO_GRAPH: 3, NEITHER: 32}


def test_diagonal_is_identity_graph():
    a = corpus.get("A2")
    prod = ProductAlgebra(a, a)
    assert classify_sub_of_product(Subuniverse(prod, prod.diagonal())).kind == IDENTITY_GRAPH
    assert classify_sub_of_product(Subuniverse(prod, prod.full())).kind == PRODUCT


def test_neither_witness_is_checkable():
    a = E(build_Cm(2))
    prod = ProductAlgebra(a, a)
    for m in all_subuniverse_masks(prod):
        c = classify_sub_of_product(Subuniverse(prod, m))
        if c.kind != NEITHER:
            continue
        i, j = c.witness["missing"]
        assert (c.proj1 >> i) & 1 and (c.proj2 >> j) & 1 and not (m >> (i * prod.n2 + j)) & 1
        (p1, q1), (p2, q2) = c.witness["clash"]
        assert (m >> prod.index(p1, q1)) & 1 and (m >> prod.index(p2, q2)) & 1
        assert (p1 == p2) != (q1 == q2)


@pytest.mark.parametrize("key", ["C2", "C3", "Y2", "DM4"])
def test_partial_isos_match_bijection_search(key):
    a = corpus.get(key) if key == "DM4" else E(corpus.get(key))
    engine = sorted(s.members for s in partial_isomorphisms(a, a))
    assert engine == brute_force_partial_isomorphisms(a, a)


@pytest.mark.parametrize("key", ["A2", "A3", "DM4", "C2-algebra", "row3-plus", "plus-boolean"])
def test_congruences_match_partition_filter(key):
    a = corpus.get(key)
    binary, unary, _ = _plain_tables(a)
    expected = sorted(p for p in partitions(a.n) if is_congruence_labels(p, a.n, binary, unary))
    assert sorted(all_congruences(a)) == expected


def test_congruence_lattice_operations():
    a = corpus.get("plus-boolean")
    cons = all_congruences(a)
    for p in cons:
        for q in cons:
            assert is_congruence(a, congruence_join(p, q))
            assert is_congruence(a, congruence_meet(p, q))
            assert refines(congruence_meet(p, q), p)


def test_principal_congruence_is_least():
    a = corpus.get("plus-chain")
    th = principal_congruence(a, 0, 1)
    assert th[0] == th[1]
    assert all(refines(th, p) for p in all_congruences(a) if p[0] == p[1])


@pytest.mark.parametrize("key,simple", [("A2", True), ("A4", True), ("DM4", True), ("C2-algebra", True),
                                        ("plus-chain", False), ("plus-boolean", True)])
def test_is_simple(key, simple):
    assert is_simple(corpus.get(key)) == simple


def test_quotient_size():
    a = corpus.get("plus-boolean")
    cons = all_congruences(a)
    for th in cons:
        assert quotient(a, th).n == len(set(th))


@pytest.mark.parametrize("key", ["A3", "DM4", "plus-boolean", "row2-minus", "C4-algebra", "three-chain-witness"])
def test_con_sub_duality(key):
    a = corpus.get(key)
    a = a if hasattr(a, "lat") else E(a)
    assert con_sub_duality_check(a, literal=True)


@settings(max_examples=20, deadline=None)
@given(cornish_spaces(max_n=4))
def test_con_sub_duality_random(x):
    assert con_sub_duality_check(E(x), literal=True)
