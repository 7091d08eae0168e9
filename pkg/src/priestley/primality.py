"""Quasi-primality, semi-primality and discriminator terms for finite families.

The brute-force route decides quasi-primality of a pair through its
binary product: every subuniverse must be a product of subuniverses or the
graph of a partial isomorphism (the median term is always a majority term
on lattice-based algebras, so the remaining hypothesis is free).  Above the
size guard, the orbit criteria on dual spaces take over; they are
sufficient only, and a failure there is reported as ``not_met``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .cornish import (
    MINUS,
    CornishAlgebra,
    CornishSpace,
    D,
    E,
    SpaceMorphism,
    Word,
    cycles,
    has_no_proper_substructure,
    orbit_of,
    word_action_space,
    word_polarity,
    words_up_to,
)
from .duality import JointPair, B_of, canonical_pair
from .errors import DEFAULT_GUARDS, GuardExceeded, Guards, StructureError, check
from .order import Poset, bits
from .subalg import (
    IDENTITY_GRAPH,
    NEITHER,
    PARTIAL_ISO_GRAPH,
    PRODUCT,
    ProductAlgebra,
    Subuniverse,
    all_subuniverse_masks,
    carrier,
    classify_sub_of_product,
)

YES, NO, UNKNOWN, NOT_MET = "yes", "no", "unknown_guard", "not_met"


@dataclass
class Verdict:
    """Outcome plus evidence.

    ``yes`` carries a certificate, ``no`` a witness.  ``not_met`` is the
    answer of a sufficient-condition route whose hypotheses fail; it says
    nothing about the property itself.
    """

    outcome: str
    certificate: dict | None = None
    witness: dict | None = None
    route: str = ""
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.outcome not in (YES, NO, UNKNOWN, NOT_MET):
            raise ValueError(f"bad outcome {self.outcome!r}")
        if self.outcome == YES and self.certificate is None:
            raise ValueError("a yes verdict needs a certificate")
        if self.outcome == NO and self.witness is None:
            raise ValueError("a no verdict needs a witness")

    def __bool__(self):
        return self.outcome == YES


# ternary operations -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TernaryOp:
    parent: Any
    table: np.ndarray

    def __call__(self, x: int, y: int, z: int) -> int:
        return int(self.table[x, y, z])


_TERNARY_CAP = 128


def _ternary_size(a) -> int:
    n = carrier(a).n
    if n > _TERNARY_CAP:
        raise GuardExceeded("ternary operation table", _TERNARY_CAP, n)
    return n


def discriminator(a) -> TernaryOp:
    n = _ternary_size(a)
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    return TernaryOp(a, np.where(x != y, x, z))


def median(a) -> TernaryOp:
    """``(x & y) | (y & z) | (z & x)``; asserted to be a majority operation."""
    n = _ternary_size(a)
    check_median_majority(a)
    J, M = a.lat.join, a.lat.meet
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    return TernaryOp(a, J[J[M[x, y], M[y, z]], M[z, x]])


def check_median_majority(a) -> None:
    """The median satisfies the majority identities (needs only pairs)."""
    J, M = a.lat.join, a.lat.meet
    i, j = np.meshgrid(np.arange(a.n), np.arange(a.n), indexing="ij")

    def med(x, y, z):
        return J[J[M[x, y], M[y, z]], M[z, x]]

    check((med(i, i, j) == i).all() and (med(i, j, i) == i).all() and (med(j, i, i) == i).all(),
          "median is not a majority operation")


def projection(a, k: int) -> TernaryOp:
    n = _ternary_size(a)
    grids = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    return TernaryOp(a, grids[k])


# brute force over the square ----------------------------------------------------


def _neither_witness(prod: ProductAlgebra, masks: list[int]) -> dict:
    """Smallest non-product, non-graph subuniverse (ties broken by bitset order)."""
    best = min(masks, key=lambda m: (bin(m).count("1"), m))
    s = Subuniverse(prod, best)
    cls = classify_sub_of_product(s)
    out = {
        "subuniverse": best,
        "pairs": [prod.pair(e) for e in s.elements],
        "proj1": cls.proj1,
        "proj2": cls.proj2,
        "missing": cls.witness["missing"],
        "clash": cls.witness["clash"],
        "count_neither": len(masks),
    }
    if isinstance(prod.left, CornishAlgebra) and isinstance(prod.right, CornishAlgebra):
        out["joint_pair"] = canonical_pair(s)
    return out


def _scan_square(a1, a2, guards: Guards, allow_partial: bool) -> tuple[Verdict, ProductAlgebra | None]:
    n = carrier(a1).n * carrier(a2).n
    if n > guards.product:
        return Verdict(UNKNOWN, route="brute-force", notes=[f"product size {n} exceeds guard {guards.product}"]), None
    prod = ProductAlgebra(a1, a2)
    try:
        masks = all_subuniverse_masks(prod, guards.product, guards.subuniverses)
    except GuardExceeded as exc:
        return Verdict(UNKNOWN, route="brute-force", notes=[str(exc)]), prod
    counts = {PRODUCT: 0, IDENTITY_GRAPH: 0, PARTIAL_ISO_GRAPH: 0, NEITHER: 0}
    bad = []
    bad_graphs = []
    for m in masks:
        kind = classify_sub_of_product(Subuniverse(prod, m)).kind
        counts[kind] += 1
        if kind == NEITHER:
            bad.append(m)
        elif kind == PARTIAL_ISO_GRAPH and not allow_partial:
            bad_graphs.append(m)
    if bad:
        return Verdict(NO, witness=_neither_witness(prod, bad), route="brute-force",
                       certificate=None, notes=[f"subuniverse kinds: {counts}"]), prod
    if bad_graphs:
        g = bad_graphs[0]
        return Verdict(NO, route="brute-force",
                       witness={"subuniverse": g, "pairs": [prod.pair(e) for e in bits(g)],
                                "reason": "graph of a partial isomorphism other than the identity"},
                       notes=[f"subuniverse kinds: {counts}"]), prod
    cert = {"subuniverses": len(masks), "kinds": counts, "majority_term": "median"}
    return Verdict(YES, certificate=cert, route="brute-force"), prod


def quasi_primal_pair(a1, a2, guards: Guards = DEFAULT_GUARDS) -> Verdict:
    """Every subuniverse of ``a1 x a2`` is a product or a partial-isomorphism graph."""
    for a in (a1, a2):
        if hasattr(a, "lat"):
            check_median_majority(a)
    return _scan_square(a1, a2, guards, allow_partial=True)[0]


def semi_primal(a, guards: Guards = DEFAULT_GUARDS, term: Word | str | None = None) -> Verdict:
    """Every subuniverse of ``a x a`` is a product or contained in the diagonal.

    Beyond the guard the constant-term criterion on ``D(a)`` is tried with
    ``term`` (or the shortest word that works).
    """
    if hasattr(a, "lat"):
        check_median_majority(a)
    v, _ = _scan_square(a, a, guards, allow_partial=False)
    if v.outcome != UNKNOWN or not isinstance(a, CornishAlgebra):
        return v
    x = a.space if a.space is not None else D(a)
    cand = [term] if term is not None else _plus_and_minus_words(x.sig, guards)
    for t in cand:
        w = internal_sufficient_semiprimal([x], t)
        if w.outcome == YES:
            w.notes = v.notes + w.notes
            return w
    v.notes.append("constant-term criterion not met")
    return v


# orbit criteria on dual spaces ----------------------------------------------------


def _as_word(sig, t: Word | str) -> Word:
    return t if isinstance(t, Word) else Word.parse(sig, t)


def _orbit_data(x: CornishSpace, act: Sequence[int]) -> dict:
    orbits = [orbit_of(act, p) for p in range(x.n)]
    return {
        "cycles": [list(c) for c in cycles(act)],
        "tails": [o.tail for o in orbits],
        "odd": all(o.odd for o in orbits),
    }


def internal_sufficient(xs: Sequence[CornishSpace], t: Word | str) -> Verdict:
    """Orbit criterion: ``t`` is a minus word, no space has proper substructures,
    and every orbit of ``t`` ends in an odd cycle.  Sufficient for the duals
    to be quasi-primal with a shared discriminator term."""
    if not xs:
        raise StructureError("empty family")
    sig = xs[0].sig
    if any(x.sig != sig for x in xs):
        raise StructureError("family members have different signatures")
    w = _as_word(sig, t)
    if word_polarity(w) != MINUS:
        return Verdict(NOT_MET, route="internal", notes=[f"word {w} has plus polarity"])
    per = []
    for k, x in enumerate(xs):
        if not has_no_proper_substructure(x):
            return Verdict(NOT_MET, route="internal", notes=[f"space {k} has a proper substructure"])
        data = _orbit_data(x, word_action_space(w, x))
        if not data["odd"]:
            bad = [list(c) for c in data["cycles"] if len(c) % 2 == 0]
            return Verdict(NOT_MET, route="internal",
                           notes=[f"space {k}: word {w} has even cycles {bad}"])
        per.append(data)
    return Verdict(YES, certificate={"term": str(w), "spaces": per}, route="internal")


def internal_sufficient_semiprimal(xs: Sequence[CornishSpace], t: Word | str) -> Verdict:
    """Constant-term criterion for semi-primality.

    Either ``t`` is a minus word acting as a constant on every space, or the
    signature has a minus symbol ``g`` and ``t`` acts as a constant, in which
    case ``t g`` is a minus word with the same property.
    """
    if not xs:
        raise StructureError("empty family")
    sig = xs[0].sig
    if any(x.sig != sig for x in xs):
        raise StructureError("family members have different signatures")
    w = _as_word(sig, t)
    for k, x in enumerate(xs):
        if not has_no_proper_substructure(x):
            return Verdict(NOT_MET, route="internal-constant", notes=[f"space {k} has a proper substructure"])
    if not all(len(set(word_action_space(w, x))) == 1 for x in xs):
        return Verdict(NOT_MET, route="internal-constant", notes=[f"word {w} is not constant"])
    if word_polarity(w) == MINUS:
        h = w
    elif sig.minus:
        h = w * Word(sig, (sig.minus[0],))
        check(all(len(set(word_action_space(h, x))) == 1 for x in xs), "t g is not constant")
    else:
        return Verdict(NOT_MET, route="internal-constant", notes=["no minus symbol in the signature"])
    consts = [word_action_space(h, x)[0] for x in xs]
    return Verdict(YES, certificate={"term": str(w), "minus_term": str(h), "values": consts},
                   route="internal-constant")


def _minus_words(sig, guards: Guards) -> list[Word]:
    return [w for w in words_up_to(sig, min(4, guards.c_depth)) if word_polarity(w) == MINUS]


def _plus_and_minus_words(sig, guards: Guards) -> list[Word]:
    return words_up_to(sig, min(4, guards.c_depth))


def quasi_primal_family(algs: Sequence, guards: Guards = DEFAULT_GUARDS,
                        term: Word | str | None = None) -> Verdict:
    """Pairwise check over all unordered pairs, self-pairs included.

    Pairs within the product guard are decided by brute force.  Larger pairs
    of Cornish algebras go through the orbit criterion on their dual spaces
    with ``term``, or with the first minus word of length at most 4 that
    works.  The certificate lists the route that settled each pair.
    """
    if not algs:
        raise StructureError("empty family")
    sig = getattr(algs[0], "sig", None)
    if any(getattr(a, "sig", None) != sig for a in algs):
        raise StructureError("family members have different signatures")
    routes = {}
    notes = []
    pending = []
    for i, j in itertools.combinations_with_replacement(range(len(algs)), 2):
        v = quasi_primal_pair(algs[i], algs[j], guards)
        if v.outcome == NO:
            v.witness["pair"] = (i, j)
            v.certificate = None
            v.notes.append(f"pair {(i, j)} fails")
            return v
        if v.outcome == YES:
            routes[f"{i},{j}"] = {"route": "brute-force", "subuniverses": v.certificate["subuniverses"]}
        else:
            pending.append((i, j))
            notes.extend(v.notes)
    for i, j in pending:
        a, b = algs[i], algs[j]
        if not (isinstance(a, CornishAlgebra) and isinstance(b, CornishAlgebra)):
            return Verdict(UNKNOWN, route="family", notes=notes + [f"pair {(i, j)} undecided"])
        xs = [a.space if a.space is not None else D(a), b.space if b.space is not None else D(b)]
        cands = [term] if term is not None else _minus_words(sig, guards)
        found = None
        for t in cands:
            v = internal_sufficient(xs, t)
            if v.outcome == YES:
                found = v
                break
        if found is None:
            return Verdict(UNKNOWN, route="family", notes=notes + [f"pair {(i, j)}: orbit criterion not met"])
        routes[f"{i},{j}"] = {"route": "internal", "term": found.certificate["term"]}
    return Verdict(YES, certificate={"pairs": routes}, route="family", notes=notes)


def order_preserving_refutation(a: CornishAlgebra) -> dict | None:
    """Refutation for signatures without minus symbols.

    Every fundamental operation is then monotone, hence so is every term
    operation; the discriminator is not: with ``a = 0 < b = 1`` it gives
    ``t(a, a, b) = b`` but ``t(a, b, b) = a``.
    """
    if a.sig.minus or a.trivial:
        return None
    L = a.lat
    leq = np.array([[L.leq(i, j) for j in range(a.n)] for i in range(a.n)])
    for name, op in zip(a.sig.symbols, a.ops):
        f = np.array(op)
        check(leq[f[:, None], f[None, :]][leq].all(), f"plus operation {name} is not monotone")
    lo, hi = L.bot, L.top
    tau = discriminator(a)
    check(tau(lo, lo, hi) == hi and tau(lo, hi, hi) == lo, "discriminator values unexpected")
    return {
        "reason": "all term operations are monotone but the discriminator is not",
        "a": lo,
        "b": hi,
        "t(a,a,b)": tau(lo, lo, hi),
        "t(a,b,b)": tau(lo, hi, hi),
    }


# preservation ---------------------------------------------------------------------


def _graph_arrays(prod: ProductAlgebra, mask: int) -> tuple[np.ndarray, np.ndarray]:
    es = np.array(bits(mask), dtype=np.int64)
    return np.divmod(es, prod.n2)


def _preserves(prod: ProductAlgebra, mask: int, u1: np.ndarray, u2: np.ndarray) -> bool:
    xs, ys = _graph_arrays(prod, mask)
    arity = u1.ndim
    inside = np.zeros(prod.n, dtype=bool)
    inside[xs * prod.n2 + ys] = True
    for combo in itertools.product(range(len(xs)), repeat=arity):
        c = list(combo)
        if not inside[u1[tuple(xs[c])] * prod.n2 + u2[tuple(ys[c])]]:
            return False
    return True


def _family_relations(family: Sequence, guards: Guards, kinds: tuple[str, ...] | None):
    for i, j in itertools.product(range(len(family)), repeat=2):
        prod = ProductAlgebra(family[i], family[j])
        masks = all_subuniverse_masks(prod, guards.product, guards.subuniverses)
        for m in masks:
            if kinds is None or classify_sub_of_product(Subuniverse(prod, m)).kind in kinds:
                yield i, j, prod, m


def pixley_preservation_check(family: Sequence, ops: Sequence, guards: Guards = DEFAULT_GUARDS) -> bool:
    """Whether ``(ops[i], ops[j])`` preserves the graph of every partial isomorphism
    between ``family[i]`` and ``family[j]``, over all ordered pairs ``(i, j)``."""
    tables = [getattr(o, "table", o) for o in ops]
    for i, j, prod, m in _family_relations(family, guards, (PARTIAL_ISO_GRAPH, IDENTITY_GRAPH)):
        if not _preserves(prod, m, tables[i], tables[j]):
            return False
    return True


def subuniverse_preservation_check(family: Sequence, ops: Sequence, guards: Guards = DEFAULT_GUARDS) -> bool:
    """Whether ``(ops[i], ops[j])`` preserves every subuniverse of ``family[i] x family[j]``.

    Term operations always do; a failure shows ``ops`` is not given by a term.
    """
    tables = [getattr(o, "table", o) for o in ops]
    for i, j, prod, m in _family_relations(family, guards, None):
        if not _preserves(prod, m, tables[i], tables[j]):
            return False
    return True


# bounded term search --------------------------------------------------------------


@dataclass
class TermSearchResult:
    term: str | None
    size: int | None
    exhausted: bool
    explored: int
    reason: str = ""


def bounded_term_search(family: Sequence, targets: Sequence, budget: int | None = None,
                        max_terms: int = 200_000) -> TermSearchResult:
    """Smallest-first search for a ternary term realising ``targets`` on every member.

    Terms are built over ``x, y, z, 0, 1``, join, meet and the unary symbols,
    ordered by DAG size (shared subterms counted once).  Only one term is kept
    per term function, so the search is best-effort: ``None`` is not a proof
    that no term exists.
    """
    budget = DEFAULT_GUARDS.term_budget if budget is None else budget
    cs = [a.operations() for a in family]
    sizes = [c.n for c in cs]
    grids = [np.meshgrid(*(np.arange(n),) * 3, indexing="ij") for n in sizes]
    target = np.concatenate([np.asarray(getattr(t, "table", t)).ravel() for t in targets])
    offsets = np.cumsum([0] + [n ** 3 for n in sizes])

    def split(v):
        return [v[offsets[k]:offsets[k + 1]] for k in range(len(cs))]

    nodes: list[tuple] = []       # node id -> (label, child ids)
    node_ids: dict[tuple, int] = {}

    def node(label, *kids):
        key = (label, kids)
        if key not in node_ids:
            node_ids[key] = len(nodes)
            nodes.append(key)
        return node_ids[key]

    def render(nid):
        label, kids = nodes[nid]
        if not kids:
            return label
        if label in ("|", "&"):
            return f"({render(kids[0])} {label} {render(kids[1])})"
        return f"{label}({render(kids[0])})"

    seen: dict[bytes, int] = {}
    terms: list[tuple[np.ndarray, frozenset, int]] = []   # value, node set, root

    def add(val, nset, root):
        key = val.tobytes()
        if key in seen:
            return False
        seen[key] = len(terms)
        terms.append((val, nset, root))
        return True

    leaves = []
    for k, name in enumerate("xyz"):
        leaves.append((np.concatenate([g[k].ravel() for g in grids]), name))
    for cname, idx in (("0", 0), ("1", 1)):
        leaves.append((np.concatenate([np.full(n ** 3, c.constants[idx]) for c, n in zip(cs, sizes)]), cname))
    for val, name in leaves:
        nid = node(name)
        add(val.astype(np.int64), frozenset([nid]), nid)
    for val, nset, root in terms:
        if np.array_equal(val, target):
            return TermSearchResult(render(root), 1, False, len(terms))
    unary_names = list(getattr(family[0], "sig").symbols) if hasattr(family[0], "sig") else \
        [f"u{k}" for k in range(len(cs[0].unary))]
    for size in range(2, budget + 1):
        fresh = []
        by_size = [t for t in terms if len(t[1]) == size - 1]
        for val, nset, root in by_size:
            for k, name in enumerate(unary_names):
                parts = split(val)
                nv = np.concatenate([c.unary[k][p] for c, p in zip(cs, parts)])
                fresh.append((nv, nset, (name, root)))
        for a_i in range(len(terms)):
            va, na, ra = terms[a_i]
            if len(na) > size - 1:
                continue
            for b_i in range(a_i + 1, len(terms)):
                vb, nb, rb = terms[b_i]
                if len(na) + len(nb) < size - 1 or len(nb) > size - 1:
                    continue
                u = na | nb
                if len(u) != size - 1:
                    continue
                pa, pb = split(va), split(vb)
                for k, label in enumerate(("|", "&")):
                    nv = np.concatenate([c.binary[k][p, q] for c, p, q in zip(cs, pa, pb)])
                    fresh.append((nv, u, (label, ra, rb)))
        for nv, nset, spec in fresh:
            if nv.tobytes() in seen:
                continue
            root = node(spec[0], *spec[1:])
            add(nv, nset | {root}, root)
            if np.array_equal(nv, target):
                return TermSearchResult(render(root), size, False, len(terms))
            if len(terms) > max_terms:
                return TermSearchResult(None, None, True, len(terms), "term table limit reached")
    return TermSearchResult(None, None, True, len(terms), f"no term of DAG size <= {budget}")


# the even-cycle witness --------------------------------------------------------------


def three_chain_witness_space(sig=None) -> CornishSpace:
    """``u < v < w`` with ``g`` swapping ``u`` and ``w`` and fixing ``v``."""
    from .cornish import OCKHAM

    return CornishSpace(sig or OCKHAM, Poset.chain(3), ((2, 1, 0),))


@dataclass(frozen=True, eq=False)
class EvenCycleWitness:
    pair: JointPair
    subuniverse: Subuniverse
    kind: str


def even_cycle_witness(m: int, start: int = 1) -> EvenCycleWitness:
    """Jointly surjective pair on ``C_m`` (``m`` even) whose subalgebra is neither kind.

    ``phi1`` sends the even iterates of ``start`` under ``g`` to ``u`` and
    the odd ones to ``w``; ``phi2`` is constant ``v``.  Any start point gives
    a witness; ``start = 1`` makes it the smallest one in bitset order.
    """
    from .ockham import build_Cm

    if m < 2 or m % 2:
        raise StructureError("even_cycle_witness needs an even m >= 2")
    x = build_Cm(m)
    y = three_chain_witness_space()
    img1 = [0] * m
    for k in range(m):
        img1[(start + k) % m] = 0 if k % 2 == 0 else 2
    phi1 = SpaceMorphism(x, y, tuple(img1))
    phi2 = SpaceMorphism(x, y, (1,) * m)
    pair = JointPair(phi1, phi2)
    check(not (phi1.is_surjective() and phi2.is_surjective()), "witness maps are both onto")
    check(phi1.image() & phi2.image() == 0, "witness images overlap")
    check(y.poset.comparable(0, 1), "witness images are not linked by the order")
    prod = ProductAlgebra(E(x), E(x))
    b = B_of(pair, prod)
    kind = classify_sub_of_product(b).kind
    check(kind == NEITHER, "even-cycle witness is not of the third kind")
    return EvenCycleWitness(pair, b, kind)
