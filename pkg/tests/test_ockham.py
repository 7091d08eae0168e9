import pytest
from hypothesis import given, settings, strategies as st

from priestley.cornish import OCKHAM, CornishSpace, E
from priestley.errors import StructureError
from priestley.ockham import build_Cm, cycle_length, iso_to_Cm, ockham_discriminator_classification
from priestley.order import Poset
from priestley.primality import NO, YES, quasi_primal_pair


def test_build_Cm():
    c = build_Cm(3)
    assert c.n == 3 and c.maps[0] == (1, 2, 0)
    with pytest.raises(StructureError):
        build_Cm(0)


def test_E_of_Cm_has_two_to_the_m_elements():
    for m in range(1, 7):
        assert E(build_Cm(m)).n == 2 ** m


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.permutations(range(7)))
def test_relabelled_cycle_recognised(m, perm):
    perm = [p for p in perm if p < m]
    g = [0] * m
    for k in range(m):
        g[perm[k]] = perm[(k + 1) % m]
    x = CornishSpace(OCKHAM, Poset.antichain(m), (tuple(g),))
    assert cycle_length(x) == m
    iso = iso_to_Cm(x)
    assert all(iso[g[i]] == (iso[i] + 1) % m for i in range(m))


def test_not_a_cycle():
    x = CornishSpace(OCKHAM, Poset.antichain(3), ((1, 0, 2),))
    assert cycle_length(x) is None
    v = ockham_discriminator_classification([x])
    assert v.outcome == NO and v.witness["even_cycles"] == [[0, 1]]


@pytest.mark.parametrize("ms,outcome", [((1,), YES), ((3,), YES), ((1, 3, 5), YES), ((2,), NO), ((1, 4), NO)])
def test_classification(ms, outcome):
    v = ockham_discriminator_classification([build_Cm(m) for m in ms])
    assert v.outcome == outcome


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_classification_agrees_with_brute_force(m):
    a = E(build_Cm(m))
    assert ockham_discriminator_classification([build_Cm(m)]).outcome == quasi_primal_pair(a, a).outcome
