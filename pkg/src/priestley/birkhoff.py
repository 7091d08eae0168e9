"""Finite Priestley (Birkhoff) duality.

``H`` sends a finite distributive lattice to the poset of its
homomorphisms into the two-element lattice, ``K`` sends a finite poset to
its lattice of up-sets.  Topology is discrete throughout and therefore
never represented.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import GuardExceeded, StructureError, check
from .order import (
    MonotoneMap,
    Poset,
    all_up_sets,
    bits,
    full_mask,
    mask_of,
    preimage,
)


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.int64)
    arr.setflags(write=False)
    return arr


def _masks_from_bool_rows(rows: np.ndarray) -> list[int]:
    packed = np.packbits(rows, axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


class DistLattice:
    """A finite bounded distributive lattice given by operation tables.

    Elements are ``0..n-1``.  ``join``/``meet`` are read-only ``n x n``
    integer arrays and ``order`` is the induced :class:`Poset`.  Lattices
    built by :func:`K` also carry ``sets`` (the up-set encoded by each
    element) and ``base`` (the poset they are up-sets of); for those the
    laws hold by construction and the table check is skipped.
    """

    def __init__(self, join, meet, *, sets: Sequence[int] | None = None,
                 base: Poset | None = None, validate: bool = True):
        self.join = _frozen(join)
        self.meet = _frozen(meet)
        n = self.join.shape[0]
        if self.join.shape != (n, n) or self.meet.shape != (n, n):
            raise StructureError("operation tables must be square")
        if n == 0:
            raise StructureError("a bounded lattice has at least one element")
        self.n = n
        self.sets = tuple(sets) if sets is not None else None
        self.base = base
        ar = np.arange(n)
        leq = self.join == ar[None, :]
        self.order = Poset.from_up(_masks_from_bool_rows(leq))
        bots = [i for i in range(n) if self.order.up[i] == full_mask(n)]
        tops = [i for i in range(n) if self.order.down[i] == full_mask(n)]
        if not bots or not tops:
            raise StructureError("lattice is not bounded")
        self.bot, self.top = bots[0], tops[0]
        if validate:
            self._validate()

    def _validate(self):
        n, J, M = self.n, self.join, self.meet
        if (J != J.T).any() or (M != M.T).any():
            raise StructureError("join/meet are not commutative")
        ar = np.arange(n)
        if (J[ar, ar] != ar).any() or (M[ar, ar] != ar).any():
            raise StructureError("join/meet are not idempotent")
        # meet order must agree with join order (absorption)
        if ((M == ar[:, None]) != (J == ar[None, :])).any():
            raise StructureError("join and meet induce different orders")
        up = self.order.up
        down = self.order.down
        upindex = {u: i for i, u in enumerate(up)}
        downindex = {d: i for i, d in enumerate(down)}
        for i in range(n):
            for j in range(i + 1, n):
                lub = upindex.get(up[i] & up[j])
                glb = downindex.get(down[i] & down[j])
                if lub != J[i, j] or glb != M[i, j]:
                    raise StructureError(f"join/meet of {i},{j} are not least/greatest bounds")
        for x in range(n):
            lhs = M[x][J]
            rhs = J[M[x][:, None], M[x][None, :]]
            if (lhs != rhs).any():
                raise StructureError(f"distributive law fails at {x}")

    @classmethod
    def from_poset(cls, p: Poset) -> "DistLattice":
        """Compute joins and meets of ``p``; reject non-lattices and non-distributive ones."""
        n = p.n
        upindex = {u: i for i, u in enumerate(p.up)}
        downindex = {d: i for i, d in enumerate(p.down)}
        J = np.zeros((n, n), dtype=np.int64)
        M = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(i, n):
                lub = upindex.get(p.up[i] & p.up[j])
                glb = downindex.get(p.down[i] & p.down[j])
                if lub is None or glb is None:
                    raise StructureError(f"elements {i} and {j} lack a join or meet")
                J[i, j] = J[j, i] = lub
                M[i, j] = M[j, i] = glb
        return cls(J, M)

    @classmethod
    def chain(cls, n: int) -> "DistLattice":
        return cls.from_poset(Poset.chain(n))

    def __repr__(self):
        return f"DistLattice(n={self.n})"

    def leq(self, a: int, b: int) -> bool:
        return self.order.leq(a, b)

    @cached_property
    def set_index(self) -> dict[int, int]:
        if self.sets is None:
            raise StructureError("lattice was not built from up-sets")
        return {s: i for i, s in enumerate(self.sets)}

    @cached_property
    def join_irreducibles(self) -> tuple[int, ...]:
        out = []
        for j in range(self.n):
            if j == self.bot:
                continue
            acc = self.bot
            for b in bits(self.order.down[j] & ~(1 << j)):
                acc = self.join[acc, b]
            if acc != j:
                out.append(j)
        return tuple(out)

    @cached_property
    def dual_space(self) -> tuple[Poset, tuple[int, ...]]:
        """``H`` of this lattice via prime filters ``up(j)``, ``j`` join-irreducible."""
        homs = tuple(self.order.up[j] for j in self.join_irreducibles)
        return _hom_poset(homs), homs

    @cached_property
    def hom_index(self) -> dict[int, int]:
        return {chi: i for i, chi in enumerate(self.dual_space[1])}


def _hom_poset(homs: Sequence[int]) -> Poset:
    up = [mask_of(k for k, c in enumerate(homs) if chi & ~c == 0) for chi in homs]
    return Poset.from_up(up)


def is_prime_filter(a: DistLattice, chi: int) -> bool:
    """``chi`` is the preimage of 1 under a bounded-lattice hom ``a -> 2``."""
    if not (chi >> a.top) & 1 or (chi >> a.bot) & 1:
        return False
    members = bits(chi)
    if not a.order.is_up_set(chi):
        return False
    for x in members:
        for y in members:
            if not (chi >> int(a.meet[x, y])) & 1:
                return False
    outside = bits(full_mask(a.n) & ~chi)
    for x in outside:
        for y in outside:
            if (chi >> int(a.join[x, y])) & 1:
                return False
    return True


def brute_force_homs(a: DistLattice, cap: int = 12) -> tuple[int, ...]:
    """All homs ``a -> 2`` by testing every characteristic function."""
    if a.n > cap:
        raise GuardExceeded("brute-force hom enumeration", cap, a.n)
    out = []
    J, M = a.join, a.meet
    for chi in range(1 << a.n):
        val = [(chi >> i) & 1 for i in range(a.n)]
        if val[a.bot] != 0 or val[a.top] != 1:
            continue
        ok = all(
            val[J[x, y]] == (val[x] | val[y]) and val[M[x, y]] == (val[x] & val[y])
            for x in range(a.n)
            for y in range(x + 1, a.n)
        )
        if ok:
            out.append(chi)
    return tuple(out)


def H(a: DistLattice) -> tuple[Poset, tuple[int, ...]]:
    """Dual poset of ``a`` and the homs (as prime-filter bitsets) it is built from."""
    return a.dual_space


@lru_cache(maxsize=512)
def K(x: Poset, cap: int | None = None) -> DistLattice:
    """Lattice of up-sets of ``x``; element ``i`` is the ``i``-th up-set in increasing bitset order."""
    ups = all_up_sets(x, cap)
    index = {u: i for i, u in enumerate(ups)}
    n = len(ups)
    J = np.empty((n, n), dtype=np.int64)
    M = np.empty((n, n), dtype=np.int64)
    for i, u in enumerate(ups):
        for j in range(i, n):
            v = ups[j]
            J[i, j] = J[j, i] = index[u | v]
            M[i, j] = M[j, i] = index[u & v]
    return DistLattice(J, M, sets=ups, base=x, validate=False)


@dataclass(frozen=True, eq=False)
class LatticeHom:
    dom: DistLattice
    cod: DistLattice
    img: tuple[int, ...]

    def __post_init__(self):
        if len(self.img) != self.dom.n:
            raise StructureError("hom is not total")
        f = np.array(self.img)
        if f[self.dom.bot] != self.cod.bot or f[self.dom.top] != self.cod.top:
            raise StructureError("hom does not preserve the bounds")
        if (f[self.dom.join] != self.cod.join[f[:, None], f[None, :]]).any():
            raise StructureError("hom does not preserve join")
        if (f[self.dom.meet] != self.cod.meet[f[:, None], f[None, :]]).any():
            raise StructureError("hom does not preserve meet")

    def __call__(self, a: int) -> int:
        return self.img[a]

    def is_injective(self) -> bool:
        return len(set(self.img)) == self.dom.n

    def is_surjective(self) -> bool:
        return len(set(self.img)) == self.cod.n

    def then(self, other: "LatticeHom") -> "LatticeHom":
        return LatticeHom(self.dom, other.cod, tuple(other.img[y] for y in self.img))

    @classmethod
    def identity(cls, a: DistLattice) -> "LatticeHom":
        return cls(a, a, tuple(range(a.n)))


def H_mor(phi: LatticeHom) -> MonotoneMap:
    """``H(phi): H(cod) -> H(dom)``, ``x -> x . phi``."""
    src_p, src_homs = H(phi.cod)
    dst_p, _ = H(phi.dom)
    idx = phi.dom.hom_index
    img = tuple(idx[preimage(phi.img, chi)] for chi in src_homs)
    return MonotoneMap(src_p, dst_p, img)


def K_mor(psi: MonotoneMap) -> LatticeHom:
    """``K(psi): K(cod) -> K(dom)``, ``alpha -> alpha . psi``."""
    src = K(psi.cod)
    dst = K(psi.dom)
    idx = dst.set_index
    img = tuple(idx[preimage(psi.img, alpha)] for alpha in src.sets)
    return LatticeHom(src, dst, img)


def eval_e(a: DistLattice) -> LatticeHom:
    """``e_a: a -> K(H(a))``, ``a -> {x : x(a) = 1}``; checked to be an isomorphism."""
    hp, homs = H(a)
    kh = K(hp)
    idx = kh.set_index
    img = tuple(idx[mask_of(k for k, chi in enumerate(homs) if (chi >> el) & 1)]
                for el in range(a.n))
    hom = LatticeHom(a, kh, img)
    check(hom.is_injective() and hom.is_surjective(), "e_A is not bijective")
    return hom


def eval_eps(x: Poset) -> MonotoneMap:
    """``eps_x: x -> H(K(x))``, ``x -> {alpha : alpha(x) = 1}``; checked to be an isomorphism."""
    kx = K(x)
    hp, _ = H(kx)
    idx = kx.hom_index
    img = tuple(idx[mask_of(i for i, alpha in enumerate(kx.sets) if (alpha >> p) & 1)]
                for p in range(x.n))
    m = MonotoneMap(x, hp, img)
    check(m.is_surjective() and m.is_order_embedding(), "eps_X is not an order-isomorphism")
    return m


@dataclass(frozen=True)
class TransferReport:
    hom_surjective: bool
    dual_order_embedding: bool
    hom_injective: bool
    dual_surjective: bool


def surjective_embedding_transfer(phi: LatticeHom) -> TransferReport:
    """Surjective homs dualise to order-embeddings and injective ones to surjections."""
    dual = H_mor(phi)
    rep = TransferReport(
        phi.is_surjective(), dual.is_order_embedding(), phi.is_injective(), dual.is_surjective()
    )
    check(rep.hom_surjective == rep.dual_order_embedding,
          "surjectivity does not transfer to an order-embedding")
    check(rep.hom_injective == rep.dual_surjective,
          "injectivity does not transfer to surjectivity")
    return rep


def lattice_product(a: DistLattice, b: DistLattice) -> DistLattice:
    """``a x b`` with element ``(i, j)`` at index ``i * b.n + j``."""
    ia = np.repeat(np.arange(a.n), b.n)
    ib = np.tile(np.arange(b.n), a.n)
    J = a.join[ia[:, None], ia[None, :]] * b.n + b.join[ib[:, None], ib[None, :]]
    M = a.meet[ia[:, None], ia[None, :]] * b.n + b.meet[ib[:, None], ib[None, :]]
    return DistLattice(J, M, validate=False)


def lattice_isomorphism_check(a: DistLattice, b: DistLattice, img: Sequence[int]) -> bool:
    """Whether ``img`` is a bijective bounded-lattice hom ``a -> b``."""
    try:
        hom = LatticeHom(a, b, tuple(img))
    except StructureError:
        return False
    return hom.is_injective() and hom.is_surjective()
