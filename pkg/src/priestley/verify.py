"""The acceptance suite: twelve end-to-end checks over the built-in corpus.

Each ``criterion_N`` returns a :class:`Outcome`; :func:`run_all` times them
against their limits.  ``corpus verify`` on the command line and the test
suite both call into here.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import corpus
from .birkhoff import K, eval_e, eval_eps
from .cornish import (
    OCKHAM,
    CornishSpace,
    E,
    Signature,
    Word,
    check_phi_homomorphism,
    eval_e_cornish,
    eval_eps_cornish,
    odd_cycle_union_antichain_check,
)
from .ddp import condition_connected_extremal, ddp_quasi_primal_family, ddp_simplicity_triple
from .duality import canonical_pair, partial_map_criterion, product_criterion
from .errors import DEFAULT_GUARDS, TheoremViolation
from .ockham import build_Cm
from .order import Poset, all_posets_up_to
from .primality import (
    NO,
    YES,
    discriminator,
    even_cycle_witness,
    internal_sufficient,
    internal_sufficient_semiprimal,
    order_preserving_refutation,
    pixley_preservation_check,
    quasi_primal_pair,
    semi_primal,
)
from .subalg import ProductAlgebra, all_subuniverses, con_sub_duality_check


@dataclass
class Outcome:
    passed: bool
    detail: list[str] = field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.passed = False
        self.detail.append(msg)


def criterion_1() -> Outcome:
    out = Outcome(True)
    count = 0
    for n in range(1, 7):
        for p in all_posets_up_to(n):
            eval_eps(p)
            eval_e(K(p))
            count += 1
    out.detail.append(f"{count} posets")
    for key, x in corpus.spaces().items():
        eval_eps_cornish(x)
    for key, a in corpus.algebras().items():
        eval_e_cornish(a)
    out.detail.append(f"{len(corpus.spaces())} spaces, {len(corpus.algebras())} algebras")
    return out


def golden_check(row: str, polarity: str) -> bool:
    """``E`` of the row's space (its map read with ``polarity``) equals the golden algebra."""
    x = corpus.get(f"{row}-space")
    if polarity == "-":
        x = CornishSpace(Signature(x.sig.symbols, ("-",)), x.poset, x.maps)
    a = E(x)
    gold = corpus.get(f"{row}-{'plus' if polarity == '+' else 'minus'}")
    names = corpus.doc(f"{row}-space").names
    gnames = corpus.doc(f"{row}-{'plus' if polarity == '+' else 'minus'}").names
    to_e = []
    for g in gnames:
        pts = corpus.GOLDEN[row][g]
        to_e.append(a.lat.set_index[sum(1 << names.index(q) for q in pts)])
    if sorted(to_e) != list(range(a.n)) or gold.n != a.n:
        return False
    for i in range(a.n):
        for j in range(a.n):
            if gold.lat.leq(i, j) != a.lat.leq(to_e[i], to_e[j]):
                return False
        if a.ops[0][to_e[i]] != to_e[gold.ops[0][i]]:
            return False
    return True


def criterion_2() -> Outcome:
    out = Outcome(True)
    for row in ("row1", "row2", "row3"):
        for pol in "+-":
            if not golden_check(row, pol):
                out.fail(f"{row} {pol} differs")
    return out


def criterion_3() -> Outcome:
    out = Outcome(True)
    for m in (1, 2, 3, 4):
        a = E(build_Cm(m))
        v = quasi_primal_pair(a, a)
        want = YES if m % 2 else NO
        if v.outcome != want:
            out.fail(f"C{m}: {v.outcome}")
            continue
        if want == NO and v.witness["subuniverse"] != even_cycle_witness(m).subuniverse.members:
            out.fail(f"C{m}: witness differs from the even-cycle construction")
    for m in range(1, 10):
        v = internal_sufficient([build_Cm(m)], "g")
        if (v.outcome == YES) != (m % 2 == 1):
            out.fail(f"orbit criterion on C{m}: {v.outcome}")
    return out


def criterion_4() -> Outcome:
    out = Outcome(True)
    xs = [corpus.get(k) for k in ("X1", "X2", "X3")]
    if internal_sufficient(xs, "f f g").outcome != YES:
        out.fail("orbit criterion with f f g not met")
    algs = [E(x) for x in xs]
    checked = 0
    for i in range(3):
        for j in range(i, 3):
            if algs[i].n * algs[j].n <= DEFAULT_GUARDS.product:
                v = quasi_primal_pair(algs[i], algs[j])
                checked += 1
                if v.outcome != YES:
                    out.fail(f"pair X{i + 1}, X{j + 1}: {v.outcome}")
    for k, a in enumerate(algs):
        if order_preserving_refutation(a) is not None:
            out.fail(f"refutation fired on X{k + 1}")
    out.detail.append(f"{checked} pairs by brute force")
    return out


def criterion_5() -> Outcome:
    out = Outcome(True)
    for n in (2, 3, 4):
        v = semi_primal(corpus.get(f"A{n}"))
        if v.outcome != YES or v.route != "brute-force":
            out.fail(f"A{n}: {v.outcome} via {v.route}")
        w = internal_sufficient_semiprimal([corpus.get(f"Y{n}")], " ".join("f" * (n - 1)))
        if w.outcome != YES:
            out.fail(f"Y{n}: {w.outcome}")
    return out


def criterion_6() -> Outcome:
    out = Outcome(True)
    seen = 0
    for key, a in corpus.algebras().items():
        if a.sig.minus or a.n < 2:
            continue
        seen += 1
        if order_preserving_refutation(a) is None:
            out.fail(f"{key}: no refutation")
        if a.n * a.n <= DEFAULT_GUARDS.product and quasi_primal_pair(a, a).outcome != NO:
            out.fail(f"{key}: brute force does not say no")
    out.detail.append(f"{seen} plus-only algebras")
    if seen == 0:
        out.fail("no plus-only algebras in the corpus")
    return out


def criterion_7() -> Outcome:
    out = Outcome(True)
    good = []
    total = 0
    for n in range(1, 6):
        for p in all_posets_up_to(n):
            total += 1
            try:
                ddp_simplicity_triple(p)
            except TheoremViolation as exc:
                out.fail(str(exc))
            if condition_connected_extremal(p) and K(p).n <= 16:
                good.append(p)
    v = ddp_quasi_primal_family(good, cross_check=True)
    if v.outcome != YES or not any("confirmed" in s for s in v.notes):
        out.fail(f"family of {len(good)} posets: {v.outcome} {v.notes}")
    out.detail.append(f"{total} posets, {len(good)} in the family")
    return out


def criterion_8() -> Outcome:
    out = Outcome(True)
    names = ("C1", "C2", "Y2", "X2")
    total = 0
    for n1 in names:
        for n2 in names:
            x1, x2 = corpus.get(n1), corpus.get(n2)
            if x1.sig != x2.sig:
                continue
            prod = ProductAlgebra(E(x1), E(x2))
            for s in all_subuniverses(prod):
                pair = canonical_pair(s)
                product_criterion(pair, verify=True)
                partial_map_criterion(pair, verify=True)
                total += 1
    out.detail.append(f"{total} subuniverses")
    return out


def criterion_9() -> Outcome:
    out = Outcome(True)
    algs = dict(corpus.algebras())
    for key, x in corpus.spaces().items():
        algs.setdefault(f"{key}-algebra", E(x))
    checked = 0
    for key, a in algs.items():
        if a.n <= 16:
            con_sub_duality_check(a, literal=True)
            checked += 1
    out.detail.append(f"{checked} algebras")
    return out


def random_poset(rng: np.random.Generator, n: int) -> Poset:
    density = rng.uniform(0.0, 0.6)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    perm = rng.permutation(n)
    return Poset.from_pairs(n, [(int(perm[i]), int(perm[j])) for i, j in pairs])


def random_order_reversing(rng: np.random.Generator, p: Poset) -> tuple[int, ...]:
    """Random order-reversing self-map by randomized backtracking (a constant always fits)."""
    img: list[int] = [-1] * p.n

    def ok(i: int, v: int) -> bool:
        for j in range(i):
            if p.leq(i, j) and not p.leq(img[j], v):
                return False
            if p.leq(j, i) and not p.leq(v, img[j]):
                return False
        return True

    def go(i: int) -> bool:
        if i == p.n:
            return True
        for v in rng.permutation(p.n):
            if ok(i, int(v)):
                img[i] = int(v)
                if go(i + 1):
                    return True
        return False

    go(0)
    return tuple(img)


def criterion_10(samples: int = 1000, seed: int = 20240601) -> Outcome:
    out = Outcome(True)
    rng = np.random.default_rng(seed)
    g = Word(OCKHAM, ("g",))
    for k in range(samples):
        p = random_poset(rng, int(rng.integers(1, 9)))
        x = CornishSpace(OCKHAM, p, (random_order_reversing(rng, p),))
        if not odd_cycle_union_antichain_check(x, g):
            out.fail(f"sample {k}: odd cycles not an antichain")
            break
    out.detail.append(f"{samples} samples, seed {seed}")
    return out


def criterion_11() -> Outcome:
    out = Outcome(True)
    for key, x in corpus.spaces().items():
        if not check_phi_homomorphism(x, 4):
            out.fail(f"{key}: truncated check fails")
    return out


def criterion_12() -> Outcome:
    out = Outcome(True)
    a1, a2 = E(build_Cm(1)), E(build_Cm(2))
    if not pixley_preservation_check([a1], [discriminator(a1)]):
        out.fail("discriminator fails on E(C1)")
    if pixley_preservation_check([a2], [discriminator(a2)]):
        out.fail("discriminator preserves every partial-isomorphism graph of E(C2)")
    return out


CRITERIA: dict[int, tuple[str, float, Callable[[], Outcome]]] = {
    1: ("duality round-trip", 10, criterion_1),
    2: ("golden plus/minus outputs", 1, criterion_2),
    3: ("Ockham classification", 60, criterion_3),
    4: ("X1 X2 X3 orbit criterion", 30, criterion_4),
    5: ("semi-primal family", 10, criterion_5),
    6: ("plus-only refutation", 10, criterion_6),
    7: ("ddp equivalence", 120, criterion_7),
    8: ("joint pairs vs subuniverses", 60, criterion_8),
    9: ("congruences vs substructures", 10, criterion_9),
    10: ("odd-cycle antichain", 10, criterion_10),
    11: ("truncated separating maps", 10, criterion_11),
    12: ("discriminator preservation", 10, criterion_12),
}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    limit: float
    detail: list[str]

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds < self.limit

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "; ".join(self.detail)
        timing = f"{self.seconds:.2f}s/{self.limit:g}s"
        return f"[{status}] criterion {self.number:2d} {self.name} ({timing}){': ' + extra if extra else ''}"


def clear_caches() -> None:
    """Drop memoised duals and corpus builds so a timing starts cold."""
    for fn in (E, K, build_Cm, corpus.get, corpus._parsed):
        fn.cache_clear()


def run_criterion(number: int, cold: bool = True) -> CriterionResult:
    name, limit, fn = CRITERIA[number]
    if cold:
        clear_caches()
    t0 = time.perf_counter()
    try:
        o = fn()
    except TheoremViolation as exc:
        o = Outcome(False, [f"theorem violation: {exc}"])
    return CriterionResult(number, name, o.passed, time.perf_counter() - t0, limit, o.detail)


def run_all(numbers=None, cold: bool = True) -> list[CriterionResult]:
    return [run_criterion(k, cold) for k in (numbers or sorted(CRITERIA))]


__all__ = ["CRITERIA", "CriterionResult", "Outcome", "run_all", "run_criterion", "golden_check", "clear_caches",
           "random_poset", "random_order_reversing"] + [f"criterion_{k}" for k in range(1, 13)]
