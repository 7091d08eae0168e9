"""Finite posets, monotone maps and up-sets.

Elements of a poset of size ``n`` are the integers ``0..n-1``.  Subsets are
encoded as Python ints used as bitsets (bit ``i`` set iff ``i`` is a member),
so "sorted by membership set as a binary number" is plain integer order.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .errors import DEFAULT_GUARDS, GuardExceeded, StructureError


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class Poset:
    """An immutable finite partial order.

    ``up[i]`` is the bitset of all ``j`` with ``i <= j`` and ``down[i]`` of
    all ``j`` with ``j <= i``.  Use :meth:`from_pairs` to build one from any
    acyclic list of strict pairs; the reflexive-transitive closure is taken.
    """

    n: int
    up: tuple[int, ...]
    down: tuple[int, ...]

    def __post_init__(self):
        n = self.n
        if len(self.up) != n or len(self.down) != n:
            raise StructureError("up/down tables have the wrong length")
        for i in range(n):
            if not (self.up[i] >> i) & 1:
                raise StructureError(f"order is not reflexive at {i}")
            for j in bits(self.up[i]):
                if j >= n:
                    raise StructureError(f"element {j} out of range")
                if not (self.down[j] >> i) & 1:
                    raise StructureError("up and down tables disagree")
                if j != i and (self.up[j] >> i) & 1:
                    raise StructureError(f"order is not antisymmetric: {i}, {j}")
                if self.up[j] & ~self.up[i]:
                    raise StructureError(f"order is not transitive at {i} <= {j}")
        if sum(map(popcount, self.up)) != sum(map(popcount, self.down)):
            raise StructureError("up and down tables disagree")

    # construction -----------------------------------------------------

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]] = ()) -> "Poset":
        """Reflexive-transitive closure of ``pairs`` (read as ``a < b``)."""
        up = [1 << i for i in range(n)]
        succ = [0] * n
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise StructureError(f"pair ({a}, {b}) out of range")
            if a == b:
                continue
            succ[a] |= 1 << b
        # closure by repeated propagation; n is small
        changed = True
        for i in range(n):
            up[i] |= succ[i]
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                for j in bits(up[i] & ~(1 << i)):
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in bits(up[i] & ~(1 << i)):
                if (up[j] >> i) & 1:
                    raise StructureError(f"order has a cycle through {i} and {j}")
        return cls.from_up(up)

    @classmethod
    def from_up(cls, up: Sequence[int]) -> "Poset":
        n = len(up)
        down = [0] * n
        for i in range(n):
            for j in bits(up[i]):
                down[j] |= 1 << i
        return cls(n, tuple(up), tuple(down))

    @classmethod
    def from_leq(cls, n: int, leq) -> "Poset":
        """From a predicate ``leq(i, j)``; validated, not closed."""
        up = [mask_of(j for j in range(n) if leq(i, j)) for i in range(n)]
        return cls.from_up(up)

    @classmethod
    def chain(cls, n: int) -> "Poset":
        return cls.from_pairs(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def antichain(cls, n: int) -> "Poset":
        return cls.from_pairs(n)

    # queries ----------------------------------------------------------

    def leq(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def is_up_set(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def is_down_set(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(a, b)`` with ``b`` covering ``a``, sorted."""
        out = []
        for a in range(self.n):
            strict = self.up[a] & ~(1 << a)
            for b in bits(strict):
                between = strict & self.down[b] & ~(1 << b)
                if not between:
                    out.append((a, b))
        return out

    def dual(self) -> "Poset":
        return Poset(self.n, self.down, self.up)

    def induced(self, members: Sequence[int]) -> "Poset":
        """Subposet on ``members`` (relabelled ``0..k-1`` in the given order)."""
        pos = {x: k for k, x in enumerate(members)}
        up = []
        for x in members:
            up.append(mask_of(pos[y] for y in bits(self.up[x]) if y in pos))
        return Poset.from_up(up)

    def degree_profile(self) -> list[tuple[int, int]]:
        return sorted((popcount(self.down[i]), popcount(self.up[i])) for i in range(self.n))


def disjoint_union(p: Poset, q: Poset) -> Poset:
    """``p`` on ``0..p.n-1`` followed by ``q`` shifted by ``p.n``."""
    up = list(p.up) + [u << p.n for u in q.up]
    return Poset.from_up(up)


@dataclass(frozen=True)
class MonotoneMap:
    dom: Poset
    cod: Poset
    img: tuple[int, ...]

    def __post_init__(self):
        if len(self.img) != self.dom.n:
            raise StructureError("map is not total")
        if any(not 0 <= y < self.cod.n for y in self.img):
            raise StructureError("map leaves its codomain")
        for i in range(self.dom.n):
            for j in bits(self.dom.up[i]):
                if not self.cod.leq(self.img[i], self.img[j]):
                    raise StructureError(f"map is not order-preserving at {i} <= {j}")

    def __call__(self, x: int) -> int:
        return self.img[x]

    def image(self) -> int:
        return mask_of(self.img)

    def is_surjective(self) -> bool:
        return self.image() == full_mask(self.cod.n)

    def is_order_embedding(self) -> bool:
        return all(
            self.dom.leq(i, j) == self.cod.leq(self.img[i], self.img[j])
            for i in range(self.dom.n)
            for j in range(self.dom.n)
        )

    def then(self, other: "MonotoneMap") -> "MonotoneMap":
        """``other`` after ``self``."""
        return MonotoneMap(self.dom, other.cod, tuple(other.img[y] for y in self.img))

    @classmethod
    def identity(cls, p: Poset) -> "MonotoneMap":
        return cls(p, p, tuple(range(p.n)))


def preimage(img: Sequence[int], mask: int) -> int:
    """Bitset of ``i`` with ``img[i]`` in ``mask``."""
    out = 0
    for i, y in enumerate(img):
        if (mask >> y) & 1:
            out |= 1 << i
    return out


# up-sets ------------------------------------------------------------------


def all_up_sets(p: Poset, cap: int | None = None) -> list[int]:
    """Every up-set of ``p`` exactly once, as bitsets in increasing order."""
    cap = DEFAULT_GUARDS.upsets if cap is None else cap
    n = p.n
    out: list[int] = []
    # decide elements from the top of a linear extension down; including x
    # forces up[x], excluding x forces down[x] out
    order = sorted(range(n), key=lambda i: -popcount(p.down[i]))

    def rec(k: int, inside: int, outside: int) -> None:
        while k < n and ((inside >> order[k]) & 1 or (outside >> order[k]) & 1):
            k += 1
        if k == n:
            out.append(inside)
            if len(out) > cap:
                raise GuardExceeded("up-set enumeration", cap)
            return
        x = order[k]
        rec(k + 1, inside, outside | p.down[x])
        rec(k + 1, inside | p.up[x], outside)

    rec(0, 0, 0)
    out.sort()
    return out


def connected_components(p: Poset) -> list[tuple[int, ...]]:
    """Components of the comparability graph, each sorted, ordered by least member."""
    seen = 0
    comps = []
    for s in range(p.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        queue = deque([s])
        while queue:
            x = queue.popleft()
            nbrs = (p.up[x] | p.down[x]) & ~comp
            comp |= nbrs
            queue.extend(bits(nbrs))
        seen |= comp
        comps.append(tuple(bits(comp)))
    return comps


def is_connected(p: Poset) -> bool:
    return len(connected_components(p)) <= 1


def maximal(p: Poset) -> int:
    return mask_of(i for i in range(p.n) if p.up[i] == 1 << i)


def minimal(p: Poset) -> int:
    return mask_of(i for i in range(p.n) if p.down[i] == 1 << i)


def extremal_profile(p: Poset) -> tuple[int, int, bool]:
    """``(maximal, minimal, all_extremal)``; the first two are bitsets."""
    mx, mn = maximal(p), minimal(p)
    return mx, mn, (mx | mn) == full_mask(p.n)


def max_above(p: Poset, x: int) -> int:
    return p.up[x] & maximal(p)


def min_below(p: Poset, x: int) -> int:
    return p.down[x] & minimal(p)


def is_antichain(s: int, p: Poset) -> bool:
    return all(p.up[i] & s == 1 << i for i in bits(s))


# isomorphism --------------------------------------------------------------


def iter_isomorphisms(p: Poset, q: Poset, accept=None) -> Iterator[tuple[int, ...]]:
    """Order-isomorphisms ``p -> q`` in lexicographic order of image tuples.

    ``accept(assign, i, j)`` may veto mapping ``i -> j`` given the partial
    assignment ``assign`` (a list with ``-1`` for unassigned entries).
    """
    n = p.n
    if q.n != n or p.degree_profile() != q.degree_profile():
        return
    psig = [(popcount(p.down[i]), popcount(p.up[i])) for i in range(n)]
    qsig = [(popcount(q.down[j]), popcount(q.up[j])) for j in range(n)]
    assign = [-1] * n
    used = [False] * n

    def rec(i: int):
        if i == n:
            yield tuple(assign)
            return
        for j in range(n):
            if used[j] or psig[i] != qsig[j]:
                continue
            ok = True
            for k in range(i):
                if p.leq(k, i) != q.leq(assign[k], j) or p.leq(i, k) != q.leq(j, assign[k]):
                    ok = False
                    break
            if not ok:
                continue
            assign[i] = j
            if accept is not None and not accept(assign, i, j):
                assign[i] = -1
                continue
            used[j] = True
            yield from rec(i + 1)
            used[j] = False
            assign[i] = -1

    yield from rec(0)


def poset_isomorphic(p: Poset, q: Poset, cap: int | None = None) -> tuple[int, ...] | None:
    """Lexicographically first order-isomorphism ``p -> q``, or ``None``."""
    cap = DEFAULT_GUARDS.iso if cap is None else cap
    if p.n != q.n:
        return None
    if p.n > cap:
        raise GuardExceeded("poset isomorphism search", cap, p.n)
    return next(iter_isomorphisms(p, q), None)


def _canonical_code(p: Poset) -> tuple:
    """Isomorphism invariant code: the least relabelled up-table.

    Permutations are restricted to those that sort elements by their
    (down-size, up-size) signature, which every isomorphism respects.
    """
    n = p.n
    sig = [(popcount(p.down[i]), popcount(p.up[i])) for i in range(n)]
    classes: dict[tuple[int, int], list[int]] = {}
    for i in range(n):
        classes.setdefault(sig[i], []).append(i)
    keys = sorted(classes)
    best = None

    def rec(k: int, order: list[int]):
        nonlocal best
        if k == len(keys):
            pos = {x: r for r, x in enumerate(order)}
            code = tuple(mask_of(pos[y] for y in bits(p.up[x])) for x in order)
            if best is None or code < best:
                best = code
            return
        for perm in permutations(classes[keys[k]]):
            rec(k + 1, order + list(perm))

    rec(0, [])
    return (n, tuple(keys), best)


def canonical_form(p: Poset) -> Poset:
    return Poset.from_up(_canonical_code(p)[2])


def all_posets_up_to(n: int) -> Iterator[Poset]:
    """One representative of every isomorphism type of size ``n``.

    Every poset of size ``k+1`` arises from one of size ``k`` by adding a new
    maximal element above some down-set, so types are grown size by size and
    deduplicated by canonical code.
    """
    if n > 6:
        raise GuardExceeded("poset enumeration", 6, n)
    if n < 0:
        return
    level = {_canonical_code(Poset.from_up([])): Poset.from_up([])}
    for k in range(n):
        nxt: dict[tuple, Poset] = {}
        for p in level.values():
            for d in _all_down_sets(p):
                up = [u | (1 << k) if (d >> i) & 1 else u for i, u in enumerate(p.up)]
                up.append(1 << k)
                q = Poset.from_up(up)
                code = _canonical_code(q)
                if code not in nxt:
                    nxt[code] = canonical_form(q)
        level = nxt
    yield from sorted(level.values(), key=lambda q: (q.up,))


def _all_down_sets(p: Poset) -> list[int]:
    return sorted(full_mask(p.n) & ~u for u in all_up_sets(p))


def brute_force_poset_count(n: int) -> int:
    """Isomorphism types of size ``n`` by filtering every binary relation.

    Independent of :func:`all_posets_up_to`; only feasible for ``n <= 4``.
    """
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    for r in range(len(pairs) + 1):
        for rel in combinations(pairs, r):
            s = set(rel)
            if any((j, i) in s for i, j in s):
                continue
            if any((i, k) not in s for i, j in s for j2, k in s if j == j2 and i != k):
                continue
            best = None
            for perm in permutations(range(n)):
                code = tuple(sorted((perm[i], perm[j]) for i, j in s))
                if best is None or code < best:
                    best = code
            seen.add(best)
    return len(seen)
