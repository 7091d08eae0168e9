import pytest
from hypothesis import given, settings, strategies as st

from oracles import up_sets
from priestley.errors import GuardExceeded, StructureError
from priestley.order import (
    MonotoneMap,
    Poset,
    all_posets_up_to,
    all_up_sets,
    bits,
    brute_force_poset_count,
    canonical_form,
    connected_components,
    disjoint_union,
    extremal_profile,
    is_antichain,
    mask_of,
    poset_isomorphic,
    preimage,
)


@st.composite
def posets(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    # orient every pair upward in index order so the relation is acyclic
    return Poset.from_pairs(n, [(min(a, b), max(a, b)) for a, b in pairs if a != b])


def test_bits_roundtrip():
    assert bits(0b101101) == [0, 2, 3, 5]
    assert mask_of([5, 0, 3, 2]) == 0b101101


def test_from_pairs_closure():
    p = Poset.from_pairs(3, [(0, 1), (1, 2)])
    assert p.leq(0, 2) and not p.leq(2, 0)
    assert p.covers() == [(0, 1), (1, 2)]


def test_cycle_rejected():
    with pytest.raises(StructureError, match="cycle"):
        Poset.from_pairs(2, [(0, 1), (1, 0)])


def test_poset_counts_match_known_sequence():
    # unlabelled posets: 1, 2, 5, 16, 63, 318
    assert [sum(1 for _ in all_posets_up_to(n)) for n in range(1, 7)] == [1, 2, 5, 16, 63, 318]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_poset_counts_against_relation_filter(n):
    assert brute_force_poset_count(n) == sum(1 for _ in all_posets_up_to(n))


def test_enumeration_guard():
    with pytest.raises(GuardExceeded):
        list(all_posets_up_to(7))


@settings(max_examples=60, deadline=None)
@given(posets())
def test_up_sets_match_subset_filter(p):
    assert sorted(all_up_sets(p)) == up_sets(p)


@settings(max_examples=60, deadline=None)
@given(posets(5))
def test_canonical_form_is_isomorphic(p):
    q = canonical_form(p)
    iso = poset_isomorphic(p, q)
    assert iso is not None
    assert all(p.leq(i, j) == q.leq(iso[i], iso[j]) for i in range(p.n) for j in range(p.n))


def test_chain_and_antichain_not_isomorphic():
    assert poset_isomorphic(Poset.chain(3), Poset.antichain(3)) is None


def test_disjoint_union_components():
    u = disjoint_union(Poset.chain(2), Poset.chain(3))
    assert connected_components(u) == [(0, 1), (2, 3, 4)]


def test_extremal_profile_of_chain():
    mx, mn, all_extremal = extremal_profile(Poset.chain(3))
    assert (mx, mn, all_extremal) == (0b100, 0b001, False)


def test_antichain_check():
    p = Poset.from_pairs(3, [(0, 1)])
    assert is_antichain(0b101, p)
    assert not is_antichain(0b011, p)


def test_monotone_map_rejects_reversal():
    c = Poset.chain(2)
    MonotoneMap(c, c, (0, 1))
    with pytest.raises(StructureError):
        MonotoneMap(c, c, (1, 0))


def test_preimage():
    assert preimage((1, 1, 0), 0b10) == 0b011
