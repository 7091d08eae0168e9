import pytest

from priestley import corpus
from priestley.cornish import E, D
from priestley.errors import Guards, StructureError
from priestley.ockham import build_Cm
from priestley.primality import (
    NO,
    NOT_MET,
    UNKNOWN,
    YES,
    bounded_term_search,
    check_median_majority,
    discriminator,
    even_cycle_witness,
    internal_sufficient,
    internal_sufficient_semiprimal,
    median,
    order_preserving_refutation,
    pixley_preservation_check,
    projection,
    quasi_primal_family,
    quasi_primal_pair,
    semi_primal,
    subuniverse_preservation_check,
)
from priestley.subalg import NEITHER, ProductAlgebra, all_subuniverses, is_simple


def alg(key):
    return E(build_Cm(int(key[1:]))) if key.startswith("C") else corpus.get(key)


@pytest.mark.parametrize("m,outcome", [(1, YES), (2, NO), (3, YES), (4, NO)])
def test_ockham_squares(m, outcome):
    a = alg(f"C{m}")
    v = quasi_primal_pair(a, a)
    assert v.outcome == outcome
    if outcome == NO:
        assert v.witness["subuniverse"] == even_cycle_witness(m).subuniverse.members


def test_no_verdict_carries_readable_witness():
    v = quasi_primal_pair(alg("C2"), alg("C2"))
    w = v.witness
    assert w["missing"] not in w["pairs"]
    assert all(p in w["pairs"] for p in w["clash"])
    assert w["count_neither"] == 32


@pytest.mark.parametrize("key", ["A2", "A3", "A4", "C1"])
def test_semi_primal_yes(key):
    assert semi_primal(alg(key)).outcome == YES


def test_semi_primal_no_for_three_cycle():
    v = semi_primal(alg("C3"))
    assert v.outcome == NO
    assert "partial isomorphism" in v.witness["reason"]


def test_semi_primal_beyond_guard_uses_constant_term():
    v = semi_primal(corpus.get("A4"), Guards(product=4))
    assert v.outcome == YES and v.route == "internal-constant"


def test_guard_reports_unknown():
    a = E(corpus.get("X1"))
    assert quasi_primal_pair(a, a).outcome == UNKNOWN


def test_family_falls_back_to_orbit_criterion():
    a = E(corpus.get("X1"))
    v = quasi_primal_family([a])
    assert v.outcome == YES
    assert v.certificate["pairs"]["0,0"]["route"] == "internal"


def test_internal_examples():
    xs = [corpus.get(k) for k in ("X1", "X2", "X3")]
    assert internal_sufficient(xs, "f^2 g").outcome == YES
    assert internal_sufficient(xs, "f f").outcome == NOT_MET          # plus polarity
    assert internal_sufficient([build_Cm(2)], "g").outcome == NOT_MET
    for m in (1, 3, 5, 7, 9):
        assert internal_sufficient([build_Cm(m)], "g").outcome == YES


def test_internal_needs_no_proper_substructure():
    v = internal_sufficient([corpus.get("three-chain-witness")], "g")
    assert v.outcome == NOT_MET and "substructure" in v.notes[0]


def test_internal_semiprimal_examples():
    for n in (2, 3, 4):
        y = corpus.get(f"Y{n}")
        v = internal_sufficient_semiprimal([y], " ".join(["f"] * (n - 1)))
        assert v.outcome == YES
        assert v.certificate["values"] == [n - 1]   # every orbit lands on the top point
    assert internal_sufficient_semiprimal([corpus.get("Y2")], "eps").outcome == NOT_MET


def test_family_verdicts():
    assert quasi_primal_family([alg("C1"), alg("C3")]).outcome == YES
    v = quasi_primal_family([alg("C1"), alg("C2")])
    # the mixed pair already fails: C1 onto v, C2 onto u and w
    assert v.outcome == NO and v.witness["pair"] == (0, 1)
    assert quasi_primal_pair(alg("C2"), alg("C2")).outcome == NO


def test_family_rejects_mixed_signatures():
    with pytest.raises(StructureError):
        quasi_primal_family([alg("C1"), corpus.get("A2")])


@pytest.mark.parametrize("spaces", [["X2"], ["Y2"], ["Y3"], ["Y4"]])
def test_soundness_agreement(spaces):
    xs = [corpus.get(k) for k in spaces]
    words = ["f f g", "g", "f g", "f^2 g", "f^3 g"]
    if any(internal_sufficient(xs, w).outcome == YES for w in words):
        assert quasi_primal_family([E(x) for x in xs]).outcome == YES


@pytest.mark.parametrize("key", ["A2", "A3", "A4", "C1", "C3", "C5", "X2-algebra"])
def test_quasi_primal_implies_simple_subalgebras(key):
    a = corpus.get(key) if "-" in key else alg(key)
    assert quasi_primal_pair(a, a).outcome == YES
    assert is_simple(a)
    from priestley.duality import subalgebra_of
    from priestley.subalg import all_subuniverse_masks

    prod = ProductAlgebra(a, a)
    diag = prod.diagonal()
    for m in all_subuniverse_masks(prod):
        if m & ~diag == 0 and bin(m).count("1") > 1:
            from priestley.subalg import Subuniverse

            sub, _ = subalgebra_of(Subuniverse(prod, m))
            assert is_simple(sub)


@pytest.mark.parametrize("key", ["A2", "A3", "A4"])
def test_semi_implies_quasi(key):
    a = corpus.get(key)
    assert semi_primal(a).outcome == YES and quasi_primal_pair(a, a).outcome == YES


@pytest.mark.parametrize("key", ["plus-chain", "plus-boolean", "row1-plus", "row2-plus", "row3-plus"])
def test_plus_only_refuted(key):
    a = corpus.get(key)
    r = order_preserving_refutation(a)
    assert r is not None
    t = discriminator(a)
    assert a.lat.leq(r["a"], r["b"])
    assert t(r["a"], r["a"], r["b"]) == r["t(a,a,b)"] == r["b"]
    assert t(r["a"], r["b"], r["b"]) == r["t(a,b,b)"] == r["a"]
    assert quasi_primal_pair(a, a).outcome == NO


def test_refutation_absent_when_minus_present():
    assert order_preserving_refutation(corpus.get("A2")) is None


def test_median_is_majority():
    for key in ("A3", "DM4"):
        check_median_majority(corpus.get(key))
        m = median(corpus.get(key))
        assert m(0, 0, 1) == 0 and m(1, 0, 1) == 1


def test_discriminator_table():
    a = corpus.get("A2")
    t = discriminator(a)
    assert t(0, 1, 2) == 0 and t(1, 1, 2) == 2


def test_preservation_checks():
    a1 = alg("C1")
    assert pixley_preservation_check([a1], [discriminator(a1)])
    a2 = alg("C2")
    assert pixley_preservation_check([a2], [projection(a2, 0)])
    assert subuniverse_preservation_check([a2], [projection(a2, 2)])
    # the discriminator maps partial bijections to themselves, so it keeps
    # every partial-isomorphism graph; what it breaks is a "neither" subuniverse
    assert pixley_preservation_check([a2], [discriminator(a2)])
    assert not subuniverse_preservation_check([a2], [discriminator(a2)])


def test_term_search_finds_median():
    a = corpus.get("A2")
    r = bounded_term_search([a], [median(a)], budget=8)
    assert r.term is not None and r.size <= 8 and not r.exhausted


def test_term_search_boolean_discriminator():
    a = alg("C1")
    r = bounded_term_search([a], [discriminator(a)], budget=12)
    assert r.term is not None
    assert (a.lat.bot, a.lat.top) == (0, 1)
    J, M, g = a.lat.join, a.lat.meet, a.ops[0]

    class V:
        def __init__(self, v):
            self.v = int(v)

        def __or__(self, o):
            return V(J[self.v, V.of(o).v])

        def __and__(self, o):
            return V(M[self.v, V.of(o).v])

        __ror__, __rand__ = __or__, __and__

        @staticmethod
        def of(o):
            return o if isinstance(o, V) else V(o)

    t = discriminator(a)
    for x in range(2):
        for y in range(2):
            for z in range(2):
                env = {"x": V(x), "y": V(y), "z": V(z), "g": lambda u: V(g[V.of(u).v])}
                assert V.of(eval(r.term, {}, env)).v == t(x, y, z)


def test_term_search_budget_exhausted():
    a = alg("C3")
    r = bounded_term_search([a], [discriminator(a)], budget=3)
    assert r.term is None and r.exhausted


def test_even_cycle_witness_shape():
    w = even_cycle_witness(2)
    assert set(w.pair.phi1.img) == {0, 2} and set(w.pair.phi2.img) == {1}
    w4 = even_cycle_witness(4)
    assert w4.pair.phi1.img == (2, 0, 2, 0)
    assert w4.kind == NEITHER
    with pytest.raises(StructureError):
        even_cycle_witness(3)


def test_even_cycle_witness_any_start():
    for start in range(4):
        assert even_cycle_witness(4, start).kind == NEITHER


def test_X_pairs_within_guard():
    algs = {k: E(corpus.get(k)) for k in ("X1", "X2")}
    assert quasi_primal_pair(algs["X1"], algs["X2"]).outcome == YES
    assert quasi_primal_pair(algs["X2"], algs["X2"]).outcome == YES


def test_all_subuniverses_of_square_classified():
    a = alg("C3")
    subs = all_subuniverses(ProductAlgebra(a, a))
    assert len(subs) == 8


def test_dual_of_semi_primal_algebra_has_constant_term():
    x = D(corpus.get("A3"))
    assert internal_sufficient_semiprimal([x], "f f").outcome == YES
