import pytest

from priestley import corpus
from priestley.cornish import AlgebraHom, E, SpaceMorphism, product_algebra
from priestley.duality import (
    B_of,
    JointPair,
    canonical_pair,
    image_substructure,
    joint_embedding_transfer,
    pairs_equivalent,
    partial_map_criterion,
    product_criterion,
    subalgebra_of,
)
from priestley.errors import StructureError
from priestley.ockham import build_Cm
from priestley.primality import even_cycle_witness, three_chain_witness_space
from priestley.subalg import NEITHER, PRODUCT, ProductAlgebra, Subuniverse, all_subuniverses, classify_sub_of_product


@pytest.mark.parametrize("k1,k2", [("C2", "C2"), ("C1", "C2"), ("Y2", "X2"), ("X2", "X2")])
def test_canonical_pair_inverts_B(k1, k2):
    prod = ProductAlgebra(E(corpus.get(k1)), E(corpus.get(k2)))
    for s in all_subuniverses(prod):
        pair = canonical_pair(s)
        assert B_of(pair, prod).members == s.members
        product_criterion(pair, verify=True)
        partial_map_criterion(pair, verify=True)


def test_witness_pair_recovered_up_to_isomorphism():
    w = even_cycle_witness(2)
    back = canonical_pair(B_of(w.pair))
    assert pairs_equivalent(w.pair, back)


def test_B_size_is_number_of_up_sets():
    w = even_cycle_witness(4)
    assert len(w.subuniverse) == 4   # up-sets of the three-chain


def test_joint_surjectivity_required():
    c2 = build_Cm(2)
    y = three_chain_witness_space()
    phi = SpaceMorphism(c2, y, (0, 2))
    with pytest.raises(StructureError, match="jointly surjective"):
        JointPair(phi, phi)


def test_product_criterion_on_disjoint_union():
    from priestley.cornish import disjoint_union

    c1 = build_Cm(1)
    u, i1, i2 = disjoint_union(c1, c1)
    pair = JointPair(i1, i2)
    assert product_criterion(pair)
    assert not partial_map_criterion(pair)
    assert classify_sub_of_product(B_of(pair)).kind == PRODUCT


def test_identity_pair_gives_diagonal():
    x = corpus.get("Y2")
    ident = SpaceMorphism.identity(x)
    pair = JointPair(ident, ident)
    b = B_of(pair)
    assert b.members == b.parent.diagonal()
    assert partial_map_criterion(pair)


def test_subalgebra_of_witness():
    w = even_cycle_witness(2)
    sub, elems = subalgebra_of(w.subuniverse)
    assert sub.n == 4 and elems == sorted(elems)
    assert classify_sub_of_product(w.subuniverse).kind == NEITHER


def test_joint_embedding_transfer():
    a = corpus.get("A2")
    p = product_algebra(a, a)
    diag = AlgebraHom(a, p, tuple(i * a.n + i for i in range(a.n)))
    assert diag.is_injective()
    assert joint_embedding_transfer(diag, a, a)
    first = AlgebraHom(p, p, tuple((k // a.n) * a.n + k // a.n for k in range(p.n)))
    assert not first.is_injective()
    assert joint_embedding_transfer(first, a, a)


def test_image_substructure():
    w = even_cycle_witness(2)
    assert image_substructure(w.pair.phi2).n == 1


def test_canonical_pair_needs_product():
    a = E(corpus.get("Y2"))
    with pytest.raises(StructureError):
        canonical_pair(Subuniverse(a, (1 << a.n) - 1))
