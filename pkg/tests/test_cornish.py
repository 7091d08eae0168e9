import pytest
from hypothesis import given, settings

from oracles import up_sets
from priestley import corpus
from priestley.cornish import (
    MINUS,
    OCKHAM,
    PLUS,
    AlgebraHom,
    CornishAlgebra,
    CornishSpace,
    D,
    E,
    Signature,
    SpaceMorphism,
    TruncatedC,
    Word,
    algebra_isomorphism,
    check_phi_homomorphism,
    closure,
    cycles,
    disjoint_union,
    eval_e_cornish,
    eval_eps_cornish,
    factorize,
    has_no_proper_substructure,
    odd_cycle_union,
    odd_cycle_union_antichain_check,
    orbit,
    phi_x,
    product_algebra,
    space_isomorphism,
    substructures,
    word_action_algebra,
    word_action_space,
    word_polarity,
    words_up_to,
)
from priestley.errors import PolarityError, StructureError
from priestley.order import Poset
from strategies import cornish_spaces

SIG = Signature.of("f+ g-")


# signatures and words -------------------------------------------------------------


def test_signature_parts():
    assert SIG.plus == ("f",) and SIG.minus == ("g",)
    assert SIG.pol("g") == MINUS
    with pytest.raises(StructureError):
        Signature.of("f")


@pytest.mark.parametrize("text,letters", [
    ("f^2 g", ("f", "f", "g")),
    ("f f g", ("f", "f", "g")),
    ("ffg", ("f", "f", "g")),
    ("eps", ()),
    ("g^3", ("g", "g", "g")),
])
def test_word_parse(text, letters):
    assert Word.parse(SIG, text).letters == letters


def test_word_parse_unknown_symbol():
    with pytest.raises(StructureError):
        Word.parse(SIG, "h")


@pytest.mark.parametrize("text,pol", [("eps", PLUS), ("g", MINUS), ("f f g", MINUS), ("g g", PLUS), ("g f g", PLUS)])
def test_polarity_counts_minus_letters(text, pol):
    assert word_polarity(Word.parse(SIG, text)) == pol


def test_leftmost_letter_acts_last():
    x = corpus.get("X2")   # u<v<w; f: u->v->w->w; g: u<->w
    assert word_action_space(Word.parse(SIG, "f g"), x) == (2, 2, 1)   # f(g(u)) = f(w) = w
    assert word_action_space(Word.parse(SIG, "g f"), x) == (1, 0, 0)   # g(f(u)) = g(v) = v


def test_words_up_to_counts():
    assert len(words_up_to(SIG, 3)) == 1 + 2 + 4 + 8
    assert [str(w) for w in words_up_to(SIG, 1)] == ["eps", "f", "g"]


# spaces, algebras and E / D -------------------------------------------------------------


def test_space_rejects_wrong_polarity():
    with pytest.raises(PolarityError):
        CornishSpace(OCKHAM, Poset.chain(2), ((0, 1),))


def test_algebra_rejects_wrong_polarity():
    lat = E(CornishSpace(Signature.of("f+"), Poset.chain(1), ((0,),))).lat
    with pytest.raises(PolarityError):
        CornishAlgebra(OCKHAM, lat, [(0, 1)])


def test_corpus_sizes():
    assert E(corpus.get("X1")).n == 128      # antichain on 7 points
    assert E(corpus.get("X2")).n == 4
    assert E(corpus.get("X3")).n == 512
    for n in (2, 3, 4):
        assert E(corpus.get(f"Y{n}")).n == n + 1


def test_E_is_preimage_and_complement():
    x = corpus.get("Y2")
    a = E(x)
    f, g = x.map("f"), x.map("g")
    full = (1 << x.n) - 1
    for k, u in enumerate(a.lat.sets):
        pf = sum(1 << i for i in range(x.n) if (u >> f[i]) & 1)
        pg = full & ~sum(1 << i for i in range(x.n) if (u >> g[i]) & 1)
        assert a.lat.sets[a.op("f")[k]] == pf
        assert a.lat.sets[a.op("g")[k]] == pg


@pytest.mark.parametrize("key", ["X1", "X2", "X3", "Y2", "Y3", "Y4", "C1", "C2", "C5", "three-chain-witness"])
def test_eval_eps_on_corpus(key):
    x = corpus.get(key)
    m = eval_eps_cornish(x)
    assert m.is_surjective() and m.is_embedding()


@pytest.mark.parametrize("key", ["A2", "A3", "A4", "DM4", "plus-boolean", "row2-minus"])
def test_eval_e_on_corpus(key):
    hom = eval_e_cornish(corpus.get(key))
    assert hom.is_injective() and hom.is_surjective()


@settings(max_examples=40, deadline=None)
@given(cornish_spaces())
def test_round_trip_random_spaces(x):
    assert len(up_sets(x.poset)) == E(x).n
    m = eval_eps_cornish(x)
    assert space_isomorphism(x, D(E(x))) is not None
    assert m.is_embedding()
    eval_e_cornish(E(x))


def test_semi_primal_algebra_is_dual_of_Y():
    for n in (2, 3, 4):
        a = corpus.get(f"A{n}")
        assert algebra_isomorphism(a, E(corpus.get(f"Y{n}"))) is not None


def test_D_of_DM4():
    x = D(corpus.get("DM4"))
    assert x.n == 2 and x.poset.covers() == []
    # fixed atoms dualise to swapped prime filters
    assert x.maps[0] == (1, 0)


# morphisms ------------------------------------------------------------------------------


def test_space_morphism_checks_maps():
    c2 = corpus.get("C2")
    c1 = corpus.get("C1")
    SpaceMorphism(c2, c1, (0, 0))
    with pytest.raises(StructureError):
        SpaceMorphism(c1, c2, (1,))


def test_algebra_hom_checks_ops():
    a = E(corpus.get("C2"))
    AlgebraHom(a, a, tuple(range(a.n)))
    swap = tuple(a.lat.set_index[((s & 1) << 1) | (s >> 1)] for s in a.lat.sets)
    AlgebraHom(a, a, swap)


def test_factorize_and_disjoint_union():
    c2 = corpus.get("C2")
    u, i1, i2 = disjoint_union(c2, c2)
    assert u.n == 4 and i2.img == (2, 3)
    fold = SpaceMorphism(u, c2, (0, 1, 0, 1))
    mu, psi = factorize(fold)
    assert mu.is_surjective() and psi.is_embedding()


def test_product_algebra_size():
    a = corpus.get("A2")
    assert product_algebra(a, a).n == 9


# orbits and substructures -----------------------------------------------------------


def test_orbit_of_X2_under_ffg():
    x = corpus.get("X2")
    t = Word.parse(SIG, "f f g")
    o = orbit(x, 0, t)
    assert o.cycle == (2,) and o.odd


def test_cycles_canonical():
    assert cycles((1, 2, 0, 3)) == [(0, 1, 2), (3,)]
    assert odd_cycle_union((1, 0, 2)) == 0b100


def test_antichain_lemma_needs_minus_word():
    with pytest.raises(PolarityError):
        odd_cycle_union_antichain_check(corpus.get("X2"), Word.parse(SIG, "f"))


@settings(max_examples=60, deadline=None)
@given(cornish_spaces("g-", max_n=6))
def test_odd_cycles_form_antichain(x):
    assert odd_cycle_union_antichain_check(x, Word.parse(OCKHAM, "g"))


@settings(max_examples=40, deadline=None)
@given(cornish_spaces(max_n=5))
def test_substructures_match_subset_filter(x):
    expected = [m for m in range(1 << x.n) if closure(x, m) == m]
    assert substructures(x) == expected


@pytest.mark.parametrize("key,simple", [("X1", True), ("X2", True), ("X3", True), ("Y3", True),
                                        ("C4", True), ("three-chain-witness", False)])
def test_no_proper_substructure(key, simple):
    assert has_no_proper_substructure(corpus.get(key)) == simple


# truncated C ---------------------------------------------------------------------------


def test_truncated_apply_shifts_and_complements():
    c = TruncatedC(SIG, 2)
    a = tuple(range(len(c.words)))  # not a bit vector, shows which coordinate is read
    fa = c.apply("f", [v % 2 for v in a])
    assert len(fa) == 3   # words of length <= 1
    ga = c.apply("g", [0] * len(c.words))
    assert ga == (1, 1, 1)


def test_phi_reads_alpha_along_the_orbit():
    x = corpus.get("Y2")
    up_u2 = 0b10
    # eps: u1 not in; f: f(u1)=u2 in; g: g(u1)=u2 in
    assert phi_x(x, 0, up_u2, 1) == (0, 1, 1)


@pytest.mark.parametrize("key", ["X2", "Y3", "C3", "row2-space"])
def test_phi_homomorphism_depth_4(key):
    assert check_phi_homomorphism(corpus.get(key), 4)


def test_phi_compatible_with_apply_on_words():
    x = corpus.get("X2")
    a = E(x)
    c = TruncatedC(SIG, 3)
    w = Word.parse(SIG, "f g")
    wa = word_action_algebra(w, a)
    for p in range(x.n):
        for k, u in enumerate(a.lat.sets):
            lhs = phi_x(x, p, a.lat.sets[wa[k]], 1)
            rhs = c.apply_word(w, phi_x(x, p, u, 3))
            assert lhs == rhs
            assert rhs == TruncatedC(SIG, 2).apply("f", c.apply("g", phi_x(x, p, u, 3)))
