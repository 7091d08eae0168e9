import pytest

from priestley import corpus
from priestley.cornish import CornishAlgebra, CornishSpace, E
from priestley.order import Poset
from priestley.verify import golden_check


def test_keys_cover_figures():
    ks = corpus.keys()
    for k in ["X1", "X2", "X3", "Y2", "Y3", "Y4", "A2", "A3", "A4"] + [f"C{m}" for m in range(1, 7)]:
        assert k in ks
    assert all(f"row{r}-{s}" in ks for r in (1, 2, 3) for s in ("space", "plus", "minus"))


def test_X2_shape():
    x = corpus.get("X2")
    assert x.poset.covers() == [(0, 1), (1, 2)]
    assert x.map("f") == (1, 2, 2)
    assert x.map("g") == (2, 1, 0)


def test_A4_is_a_chain():
    a = corpus.get("A4")
    assert a.names == ("0", "a1", "a2", "a3", "1")
    assert all(a.lat.leq(i, i + 1) for i in range(4))


def test_X1_is_an_antichain():
    x = corpus.get("X1")
    assert x.n == 7 and x.poset.covers() == []


@pytest.mark.parametrize("row", ["row1", "row2", "row3"])
@pytest.mark.parametrize("pol", ["+", "-"])
def test_golden_rows(row, pol):
    assert golden_check(row, pol)


def test_golden_detects_a_wrong_table(monkeypatch):
    bad = dict(corpus.GOLDEN["row2"])
    bad["a"], bad["b"] = bad["b"], bad["a"]
    monkeypatch.setitem(corpus.GOLDEN, "row2", bad)
    # swapping the names of the atoms is harmless for the swap map but not for the identity
    monkeypatch.setitem(corpus.GOLDEN, "row3", bad)
    assert golden_check("row2", "+")
    assert golden_check("row3", "+")   # identity map is symmetric too
    monkeypatch.setitem(corpus.GOLDEN, "row1", {"bot": (), "a": ("p",), "top": ("p", "q")})
    with pytest.raises(KeyError):
        golden_check("row1", "+")


def test_algebra_keys_are_duals():
    assert corpus.get("C3-algebra") is E(corpus.get("C3"))
    assert "up_c0" in corpus.text("C2-algebra")


def test_types():
    assert isinstance(corpus.get("X3"), CornishSpace)
    assert isinstance(corpus.get("DM4"), CornishAlgebra)
    assert isinstance(corpus.get("ddp-N"), Poset)


def test_unknown_key():
    with pytest.raises(KeyError):
        corpus.get("nope")
