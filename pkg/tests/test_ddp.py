import pytest

from priestley import corpus
from priestley.birkhoff import K
from priestley.ddp import (
    condition_connected_extremal,
    ddp_from_lattice,
    ddp_quasi_primal_family,
    ddp_simplicity_triple,
    is_ddp_morphism,
)
from priestley.errors import StructureError
from priestley.order import MonotoneMap, Poset, all_posets_up_to
from priestley.primality import NO, YES
from priestley.subalg import all_congruences


def test_pseudocomplements_on_chain():
    a = ddp_from_lattice(K(Poset.chain(2)))   # 0 < m < 1
    assert a.star == (2, 0, 0)
    assert a.plus == (2, 2, 0)
    assert a.is_regular()


def test_bad_star_rejected():
    from priestley.ddp import DdpAlgebra

    lat = K(Poset.chain(1))
    with pytest.raises(StructureError):
        DdpAlgebra(lat, (0, 0), (1, 0))


@pytest.mark.parametrize("key,expected", [("ddp-2chain", True), ("ddp-3chain", False),
                                          ("ddp-crown4", True), ("ddp-N", True)])
def test_condition_on_corpus(key, expected):
    assert condition_connected_extremal(corpus.get(key)) == expected
    simple, triple = ddp_simplicity_triple(corpus.get(key))
    assert simple == expected and len(set(triple)) == 1


def test_triple_agrees_on_all_posets_up_to_four():
    for n in range(1, 5):
        for p in all_posets_up_to(n):
            ddp_simplicity_triple(p)


def test_two_element_antichain_is_not_simple():
    p = Poset.antichain(2)
    simple, _ = ddp_simplicity_triple(p)
    assert not simple
    assert len(all_congruences(ddp_from_lattice(K(p)))) == 4


def test_family():
    ps = [corpus.get("ddp-2chain"), corpus.get("ddp-crown4")]
    v = ddp_quasi_primal_family(ps)
    assert v.outcome == YES and "confirmed by pairwise subalgebra scan" in v.notes
    v = ddp_quasi_primal_family([corpus.get("ddp-3chain")])
    assert v.outcome == NO and v.witness["not_extremal"] == [1]


def test_ddp_morphism():
    c = Poset.chain(2)
    assert is_ddp_morphism(MonotoneMap(c, c, (0, 1)))
    one = Poset.chain(1)
    assert not is_ddp_morphism(MonotoneMap(one, c, (0,)))
