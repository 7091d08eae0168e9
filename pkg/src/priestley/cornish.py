"""Cornish spaces and algebras and the restricted duality between them.

A signature is a list of unary symbols each labelled ``+`` (order
preserving / lattice endomorphism) or ``-`` (order reversing / dual
endomorphism).  Ockham algebras are the case of one ``-`` symbol.

Words act with the leftmost letter outermost: the word ``f f g`` acts on a
point ``x`` as ``f(f(g(x)))``, so it reads like term notation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .birkhoff import H, K, DistLattice
from .errors import DEFAULT_GUARDS, GuardExceeded, PolarityError, StructureError, check
from .order import (
    Poset,
    bits,
    disjoint_union as poset_union,
    full_mask,
    is_antichain,
    iter_isomorphisms,
    mask_of,
    preimage,
)

PLUS, MINUS = "+", "-"


@dataclass(frozen=True)
class Signature:
    symbols: tuple[str, ...] = ()
    polarity: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.symbols) != len(self.polarity):
            raise StructureError("every symbol needs a polarity")
        if len(set(self.symbols)) != len(self.symbols):
            raise StructureError("duplicate operation symbol")
        if any(p not in (PLUS, MINUS) for p in self.polarity):
            raise StructureError("polarity must be '+' or '-'")

    @classmethod
    def of(cls, spec: str | Iterable[tuple[str, str]]) -> "Signature":
        """``Signature.of("f+ g-")`` or from ``(name, polarity)`` pairs."""
        if isinstance(spec, str):
            pairs = []
            for tok in spec.split():
                if len(tok) < 2 or tok[-1] not in "+-":
                    raise StructureError(f"bad signature entry {tok!r}")
                pairs.append((tok[:-1], tok[-1]))
        else:
            pairs = list(spec)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __len__(self):
        return len(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise StructureError(f"unknown symbol {name!r}") from None

    def pol(self, name: str) -> str:
        return self.polarity[self.index(name)]

    @property
    def plus(self) -> tuple[str, ...]:
        return tuple(s for s, p in zip(self.symbols, self.polarity) if p == PLUS)

    @property
    def minus(self) -> tuple[str, ...]:
        return tuple(s for s, p in zip(self.symbols, self.polarity) if p == MINUS)

    def __str__(self):
        return " ".join(s + p for s, p in zip(self.symbols, self.polarity))


OCKHAM = Signature(("g",), (MINUS,))


def _check_polarity_map(p: Poset, img: Sequence[int], pol: str, what: str) -> None:
    for i in range(p.n):
        for j in bits(p.up[i]):
            ok = p.leq(img[i], img[j]) if pol == PLUS else p.leq(img[j], img[i])
            if not ok:
                kind = "order-preserving" if pol == PLUS else "order-reversing"
                raise PolarityError(f"{what} is not {kind}: {i} <= {j} maps to {img[i]}, {img[j]}")


@dataclass(frozen=True)
class CornishSpace:
    """A finite poset with one self-map per symbol of ``sig``."""

    sig: Signature
    poset: Poset
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.maps) != len(self.sig):
            raise StructureError("need exactly one map per symbol")
        for name, pol, img in zip(self.sig.symbols, self.sig.polarity, self.maps):
            if len(img) != self.poset.n or any(not 0 <= y < self.poset.n for y in img):
                raise StructureError(f"map {name} is not a total self-map")
            _check_polarity_map(self.poset, img, pol, f"map {name}")

    @property
    def n(self) -> int:
        return self.poset.n

    def map(self, name: str) -> tuple[int, ...]:
        return self.maps[self.sig.index(name)]

    def reduct(self, symbols: Sequence[str]) -> "CornishSpace":
        sig = Signature(tuple(symbols), tuple(self.sig.pol(s) for s in symbols))
        return CornishSpace(sig, self.poset, tuple(self.map(s) for s in symbols))


class CornishAlgebra:
    """A finite distributive lattice with one unary operation per symbol.

    ``+`` operations must be bounded-lattice endomorphisms and ``-``
    operations dual endomorphisms.  The one-element algebra is admitted
    (``trivial`` is then true) whatever the polarities.
    """

    def __init__(self, sig: Signature, lat: DistLattice, ops: Sequence[Sequence[int]],
                 *, space: CornishSpace | None = None, names: Sequence[str] | None = None):
        self.sig = sig
        self.lat = lat
        self.ops = tuple(tuple(int(v) for v in op) for op in ops)
        self.space = space
        self.names = tuple(names) if names is not None else None
        self._validate()

    def _validate(self):
        L = self.lat
        if len(self.ops) != len(self.sig):
            raise StructureError("need exactly one operation per symbol")
        for name, pol, op in zip(self.sig.symbols, self.sig.polarity, self.ops):
            if len(op) != L.n or any(not 0 <= v < L.n for v in op):
                raise StructureError(f"operation {name} is not total")
            f = np.array(op)
            fj = L.join[f[:, None], f[None, :]]
            fm = L.meet[f[:, None], f[None, :]]
            if pol == PLUS:
                good = (f[L.join] == fj).all() and (f[L.meet] == fm).all()
                good = good and f[L.bot] == L.bot and f[L.top] == L.top
                kind = "an endomorphism"
            else:
                good = (f[L.join] == fm).all() and (f[L.meet] == fj).all()
                good = good and f[L.bot] == L.top and f[L.top] == L.bot
                kind = "a dual endomorphism"
            if not good:
                raise PolarityError(f"operation {name} is not {kind}")

    @property
    def n(self) -> int:
        return self.lat.n

    @property
    def trivial(self) -> bool:
        return self.lat.n == 1

    def op(self, name: str) -> tuple[int, ...]:
        return self.ops[self.sig.index(name)]

    def operations(self) -> "OpTables":
        return OpTables(
            binary=(self.lat.join, self.lat.meet),
            unary=tuple(np.array(op, dtype=np.int64) for op in self.ops),
            constants=(self.lat.bot, self.lat.top),
        )

    def __repr__(self):
        return f"CornishAlgebra(sig={self.sig!s}, n={self.n})"


@dataclass(frozen=True, eq=False)
class OpTables:
    """Fundamental operations of a finite algebra as arrays, for the generic engine."""

    binary: tuple[np.ndarray, ...]
    unary: tuple[np.ndarray, ...]
    constants: tuple[int, ...]

    @property
    def n(self) -> int:
        if self.binary:
            return self.binary[0].shape[0]
        return self.unary[0].shape[0]


# duality functors ---------------------------------------------------------


@lru_cache(maxsize=256)
def E(x: CornishSpace, cap: int | None = None) -> CornishAlgebra:
    """Dual algebra: up-sets of ``x`` with ``U -> f^-1(U)`` for ``+`` and its complement for ``-``."""
    lat = K(x.poset, cap)
    idx = lat.set_index
    full = full_mask(x.n)
    ops = []
    for pol, img in zip(x.sig.polarity, x.maps):
        if pol == PLUS:
            ops.append([idx[preimage(img, u)] for u in lat.sets])
        else:
            ops.append([idx[full & ~preimage(img, u)] for u in lat.sets])
    return CornishAlgebra(x.sig, lat, ops, space=x)


def D(a: CornishAlgebra) -> CornishSpace:
    """Dual space: prime filters ``P`` with ``P -> f^-1(P)`` for ``+`` and its complement for ``-``."""
    return _dual_space(a)


def _dual_space(a: CornishAlgebra) -> CornishSpace:
    cached = getattr(a, "_D", None)
    if cached is not None:
        return cached
    p, homs = H(a.lat)
    idx = a.lat.hom_index
    full = full_mask(a.n)
    maps = []
    for pol, op in zip(a.sig.polarity, a.ops):
        if pol == PLUS:
            maps.append(tuple(idx[preimage(op, chi)] for chi in homs))
        else:
            maps.append(tuple(idx[full & ~preimage(op, chi)] for chi in homs))
    space = CornishSpace(a.sig, p, tuple(maps))
    a._D = space
    return space


@dataclass(frozen=True, eq=False)
class AlgebraHom:
    dom: CornishAlgebra
    cod: CornishAlgebra
    img: tuple[int, ...]

    def __post_init__(self):
        from .birkhoff import LatticeHom

        LatticeHom(self.dom.lat, self.cod.lat, self.img)
        for name in self.dom.sig.symbols:
            f, g = self.dom.op(name), self.cod.op(name)
            if any(self.img[f[a]] != g[self.img[a]] for a in range(self.dom.n)):
                raise StructureError(f"hom does not commute with {name}")

    def is_injective(self) -> bool:
        return len(set(self.img)) == self.dom.n

    def is_surjective(self) -> bool:
        return len(set(self.img)) == self.cod.n


@dataclass(frozen=True, eq=False)
class SpaceMorphism:
    dom: CornishSpace
    cod: CornishSpace
    img: tuple[int, ...]

    def __post_init__(self):
        if self.dom.sig != self.cod.sig:
            raise StructureError("signature mismatch")
        if len(self.img) != self.dom.n or any(not 0 <= y < self.cod.n for y in self.img):
            raise StructureError("morphism is not a total map")
        for i in range(self.dom.n):
            for j in bits(self.dom.poset.up[i]):
                if not self.cod.poset.leq(self.img[i], self.img[j]):
                    raise StructureError(f"morphism is not order-preserving at {i} <= {j}")
        for name, f, g in zip(self.dom.sig.symbols, self.dom.maps, self.cod.maps):
            for x in range(self.dom.n):
                if self.img[f[x]] != g[self.img[x]]:
                    raise StructureError(f"morphism does not commute with {name} at {x}")

    def __call__(self, x: int) -> int:
        return self.img[x]

    def image(self) -> int:
        return mask_of(self.img)

    def is_surjective(self) -> bool:
        return self.image() == full_mask(self.cod.n)

    def is_embedding(self) -> bool:
        p, q = self.dom.poset, self.cod.poset
        return all(p.leq(i, j) == q.leq(self.img[i], self.img[j])
                   for i in range(p.n) for j in range(p.n))

    def then(self, other: "SpaceMorphism") -> "SpaceMorphism":
        return SpaceMorphism(self.dom, other.cod, tuple(other.img[y] for y in self.img))

    @classmethod
    def identity(cls, x: CornishSpace) -> "SpaceMorphism":
        return cls(x, x, tuple(range(x.n)))


def eval_e_cornish(a: CornishAlgebra) -> AlgebraHom:
    """``e_A: A -> E(D(A))``; checked to be an isomorphism."""
    x = D(a)
    _, homs = H(a.lat)
    ed = E(x)
    idx = ed.lat.set_index
    img = tuple(idx[mask_of(k for k, chi in enumerate(homs) if (chi >> el) & 1)]
                for el in range(a.n))
    hom = AlgebraHom(a, ed, img)
    check(hom.is_injective() and hom.is_surjective(), "e_A is not a Cornish isomorphism")
    return hom


def eval_eps_cornish(x: CornishSpace) -> SpaceMorphism:
    """``eps_X: X -> D(E(X))``; checked to be an isomorphism."""
    a = E(x)
    de = D(a)
    idx = a.lat.hom_index
    img = tuple(idx[mask_of(i for i, u in enumerate(a.lat.sets) if (u >> p) & 1)]
                for p in range(x.n))
    m = SpaceMorphism(x, de, img)
    check(m.is_surjective() and m.is_embedding(), "eps_X is not a Cornish isomorphism")
    return m


def space_isomorphism(x: CornishSpace, y: CornishSpace) -> tuple[int, ...] | None:
    """First isomorphism of Cornish spaces in lexicographic order, or ``None``."""
    if x.sig != y.sig or x.n != y.n:
        return None
    pairs = list(zip(x.maps, y.maps))

    def accept(assign, i, j):
        for f, g in pairs:
            fi = f[i]
            if assign[fi] >= 0 and assign[fi] != g[j]:
                return False
            for k in range(x.n):
                if assign[k] >= 0 and f[k] == i and g[assign[k]] != j:
                    return False
        return True

    return next(iter_isomorphisms(x.poset, y.poset, accept), None)


def algebra_isomorphism(a: CornishAlgebra, b: CornishAlgebra) -> tuple[int, ...] | None:
    """Isomorphism ``a -> b`` found through their dual spaces, or ``None``."""
    if a.sig != b.sig or a.n != b.n:
        return None
    iso = space_isomorphism(D(b), D(a))
    if iso is None:
        return None
    # D(b) ~ D(a) gives E(D(a)) ~ E(D(b)); compose with the evaluation maps
    ea, eb = eval_e_cornish(a), eval_e_cornish(b)
    da_sets = ea.cod.lat.sets
    eb_inv = {v: k for k, v in enumerate(eb.img)}
    idx_b = eb.cod.lat.set_index
    img = []
    for el in range(a.n):
        u = da_sets[ea.img[el]]
        v = preimage(iso, u)
        img.append(eb_inv[idx_b[v]])
    AlgebraHom(a, b, tuple(img))
    return tuple(img)


# words --------------------------------------------------------------------


@dataclass(frozen=True)
class Word:
    """A word over ``sig``; ``letters[0]`` is applied last."""

    sig: Signature
    letters: tuple[str, ...] = ()

    def __post_init__(self):
        for s in self.letters:
            self.sig.index(s)

    @classmethod
    def parse(cls, sig: Signature, text: str) -> "Word":
        """Parse ``"f^2 g"``, ``"f f g"``, ``"ffg"`` (single-letter symbols) or ``"eps"``."""
        text = text.strip()
        if text in ("", "eps", "ε") and text not in sig.symbols:
            return cls(sig, ())
        letters: list[str] = []
        for tok in text.replace("*", " ").split():
            m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*?)(?:\^?(\d+))?", tok)
            if m and m.group(1) in sig.symbols:
                letters.extend([m.group(1)] * int(m.group(2) or 1))
                continue
            # run of single-letter symbols, each optionally with ^k
            pos = 0
            while pos < len(tok):
                m = re.match(r"([A-Za-z_])(?:\^(\d+))?", tok[pos:])
                if not m or m.group(1) not in sig.symbols:
                    raise StructureError(f"cannot parse word {text!r}")
                letters.extend([m.group(1)] * int(m.group(2) or 1))
                pos += m.end()
        return cls(sig, tuple(letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.sig, self.letters + other.letters)

    def __str__(self):
        return " ".join(self.letters) if self.letters else "eps"


def word_polarity(w: Word) -> str:
    odd = sum(1 for s in w.letters if w.sig.pol(s) == MINUS) % 2
    return MINUS if odd else PLUS


def _compose(tables: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    out = list(range(n))
    for t in reversed(tables):
        out = [t[v] for v in out]
    return tuple(out)


def word_action_space(w: Word, x: CornishSpace) -> tuple[int, ...]:
    return _compose([x.map(s) for s in w.letters], x.n)


def word_action_algebra(w: Word, a: CornishAlgebra) -> tuple[int, ...]:
    return _compose([a.op(s) for s in w.letters], a.n)


def words_up_to(sig: Signature, length: int) -> list[Word]:
    """All words of length <= ``length``, shortest first then lexicographic by symbol index."""
    out = []
    for k in range(length + 1):
        for letters in iproduct(sig.symbols, repeat=k):
            out.append(Word(sig, letters))
    return out


class Orbit(NamedTuple):
    tail: int
    cycle: tuple[int, ...]

    @property
    def cycle_length(self) -> int:
        return len(self.cycle)

    @property
    def odd(self) -> bool:
        return len(self.cycle) % 2 == 1


def orbit_of(img: Sequence[int], start: int) -> Orbit:
    seen: dict[int, int] = {}
    seq = []
    a = start
    while a not in seen:
        seen[a] = len(seq)
        seq.append(a)
        a = img[a]
    n = seen[a]
    return Orbit(n, tuple(seq[n:]))


def orbit(x: CornishSpace, start: int, t: Word) -> Orbit:
    """Iterates of ``start`` under ``t``: tail length and the cycle reached."""
    return orbit_of(word_action_space(t, x), start)


def cycles(img: Sequence[int]) -> list[tuple[int, ...]]:
    """All cycles of the functional graph of ``img``, each starting at its least member."""
    out = {}
    for s in range(len(img)):
        c = orbit_of(img, s).cycle
        k = c.index(min(c))
        out[min(c)] = c[k:] + c[:k]
    return [out[k] for k in sorted(out)]


def odd_cycle_union(img: Sequence[int]) -> int:
    return mask_of(v for c in cycles(img) if len(c) % 2 for v in c)


def odd_cycle_union_antichain_check(x: CornishSpace, t: Word) -> bool:
    """Whether the points on odd cycles of a minus word form an antichain (always expected)."""
    if word_polarity(t) != MINUS:
        raise PolarityError(f"word {t} is not of minus polarity")
    return odd_cycle_union_antichain_check_map(x.poset, word_action_space(t, x))


def odd_cycle_union_antichain_check_map(p: Poset, img: Sequence[int]) -> bool:
    _check_polarity_map(p, img, MINUS, "map")
    return is_antichain(odd_cycle_union(img), p)


# substructures --------------------------------------------------------------


def closure(x: CornishSpace, seed: int) -> int:
    """Least subset containing ``seed`` closed under every map."""
    out = seed
    frontier = bits(seed)
    while frontier:
        nxt = []
        for v in frontier:
            for img in x.maps:
                y = img[v]
                if not (out >> y) & 1:
                    out |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return out


def generated_substructure(x: CornishSpace, point: int) -> int:
    return closure(x, 1 << point)


def substructures(x: CornishSpace, cap: int | None = None) -> list[int]:
    """All closed subsets (the empty one included) as sorted bitsets."""
    cap = DEFAULT_GUARDS.subuniverses if cap is None else cap
    principal = sorted({generated_substructure(x, p) for p in range(x.n)})
    found = {0}
    queue = [0]
    while queue:
        s = queue.pop()
        for g in principal:
            t = s | g
            if t not in found:
                found.add(t)
                if len(found) > cap:
                    raise GuardExceeded("substructure enumeration", cap)
                queue.append(t)
    return sorted(found)


def has_no_proper_substructure(x: CornishSpace) -> bool:
    full = full_mask(x.n)
    return all(generated_substructure(x, p) == full for p in range(x.n))


def subspace(x: CornishSpace, members: int) -> tuple[CornishSpace, tuple[int, ...]]:
    """Induced structure on a closed subset, with the list of original indices."""
    pts = bits(members)
    if closure(x, members) != members:
        raise StructureError("subset is not closed under the maps")
    pos = {v: k for k, v in enumerate(pts)}
    maps = tuple(tuple(pos[img[v]] for v in pts) for img in x.maps)
    return CornishSpace(x.sig, x.poset.induced(pts), maps), tuple(pts)


def disjoint_union(x1: CornishSpace, x2: CornishSpace) -> tuple[CornishSpace, SpaceMorphism, SpaceMorphism]:
    """Coproduct: ``x1`` then ``x2`` shifted by ``x1.n``, with both injections."""
    if x1.sig != x2.sig:
        raise StructureError("signature mismatch")
    p = poset_union(x1.poset, x2.poset)
    maps = tuple(tuple(f) + tuple(v + x1.n for v in g) for f, g in zip(x1.maps, x2.maps))
    u = CornishSpace(x1.sig, p, maps)
    i1 = SpaceMorphism(x1, u, tuple(range(x1.n)))
    i2 = SpaceMorphism(x2, u, tuple(range(x1.n, x1.n + x2.n)))
    return u, i1, i2


def factorize(phi: SpaceMorphism) -> tuple[SpaceMorphism, SpaceMorphism]:
    """Split ``phi`` as a surjection onto its image followed by the inclusion."""
    img_space, pts = subspace(phi.cod, phi.image())
    pos = {v: k for k, v in enumerate(pts)}
    mu = SpaceMorphism(phi.dom, img_space, tuple(pos[v] for v in phi.img))
    psi = SpaceMorphism(img_space, phi.cod, pts)
    check(mu.then(psi).img == phi.img, "factorisation does not compose to phi")
    return mu, psi


# products of algebras -------------------------------------------------------


def product_algebra(a1: CornishAlgebra, a2: CornishAlgebra) -> CornishAlgebra:
    """``a1 x a2`` materialised; element ``(i, j)`` sits at ``i * a2.n + j``."""
    from .birkhoff import lattice_product

    if a1.sig != a2.sig:
        raise StructureError("signature mismatch")
    lat = lattice_product(a1.lat, a2.lat)
    ops = []
    for f, g in zip(a1.ops, a2.ops):
        ops.append([f[i] * a2.n + g[j] for i in range(a1.n) for j in range(a2.n)])
    return CornishAlgebra(a1.sig, lat, ops)


# the free-monoid algebra C, truncated ---------------------------------------


class TruncatedC:
    """Coordinate view of the algebra ``{0,1}^M`` on words of length <= ``depth``.

    An element is stored as a tuple of bits indexed like :attr:`words`.
    Applying an operation loses one level: the result is only determined on
    words of length <= ``depth - 1``.
    """

    def __init__(self, sig: Signature, depth: int, cap: int | None = None):
        cap = DEFAULT_GUARDS.c_depth if cap is None else cap
        if len(sig) < 1:
            raise StructureError("signature must have at least one symbol")
        if depth > cap or depth < 0:
            raise GuardExceeded("truncated C depth", cap, depth)
        self.sig = sig
        self.depth = depth
        self.words = words_up_to(sig, depth)
        self.index = {w.letters: k for k, w in enumerate(self.words)}

    def apply(self, name: str, a: Sequence[int]) -> tuple[int, ...]:
        """``f^C(a)`` on words of length < depth: ``a(f w)``, complemented for ``-``."""
        neg = self.sig.pol(name) == MINUS
        out = []
        for w in self.words:
            if len(w) >= self.depth:
                break
            v = a[self.index[(name,) + w.letters]]
            out.append(1 - v if neg else v)
        return tuple(out)

    def apply_word(self, w: Word, a: Sequence[int]) -> tuple[int, ...]:
        """``w^C(a)`` on words of length <= depth - len(w).

        Letters compose like maps, so ``(f g)^C = f^C g^C`` reads ``a`` at ``g f u``.
        """
        neg = word_polarity(w) == MINUS
        rev = tuple(reversed(w.letters))
        out = []
        for u in self.words:
            if len(u) > self.depth - len(w):
                break
            v = a[self.index[rev + u.letters]]
            out.append(1 - v if neg else v)
        return tuple(out)


def phi_x(x: CornishSpace, point: int, alpha: int, depth: int, cap: int | None = None) -> tuple[int, ...]:
    """``phi_x(alpha)(w) = alpha(w(point))`` for every word up to ``depth``."""
    c = TruncatedC(x.sig, depth, cap)
    return tuple((alpha >> word_action_space(w, x)[point]) & 1 for w in c.words)


def phi_table(x: CornishSpace, depth: int) -> tuple[np.ndarray, TruncatedC]:
    """``T[k, p, w] = phi_p(alpha_k)(w)`` for every up-set, point and word up to ``depth``."""
    a = E(x)
    c = TruncatedC(x.sig, depth)
    acts = np.array([word_action_space(w, x) for w in c.words], dtype=np.int64).reshape(len(c.words), x.n)
    mem = np.array([[(u >> q) & 1 for q in range(x.n)] for u in a.lat.sets], dtype=bool).reshape(a.n, x.n)
    return mem[:, acts.T], c


def check_phi_homomorphism(x: CornishSpace, depth: int) -> bool:
    """Shift-compatibility of every ``phi_x`` with every operation, pointwise
    lattice operations, and separation of elements at the empty word."""
    a = E(x)
    T, c = phi_table(x, depth)
    short = [k for k, w in enumerate(c.words) if len(w) < depth]
    for name, op in zip(x.sig.symbols, a.ops):
        shifted = [c.index[(name,) + c.words[k].letters] for k in short]
        lhs = T[np.array(op)][:, :, short]
        rhs = T[:, :, shifted]
        if x.sig.pol(name) == MINUS:
            rhs = ~rhs
        if not (lhs == rhs).all():
            return False
    J, M = a.lat.join, a.lat.meet
    for p in range(x.n):
        tp = T[:, p, :]
        if not (tp[J] == (tp[:, None, :] | tp[None, :, :])).all():
            return False
        if not (tp[M] == (tp[:, None, :] & tp[None, :, :])).all():
            return False
    eps = T[:, :, c.index[()]]
    return len({row.tobytes() for row in eps}) == a.n
