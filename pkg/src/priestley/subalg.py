"""Subuniverses, partial isomorphisms and congruences of finite algebras.

The engine only needs an algebra's fundamental operations (see
:class:`OpTables`): binary tables, unary tables and the nullary constants.
Cornish algebras, ddp-algebras and binary products all present themselves
this way, so nothing here depends on polarity laws.

Subsets of an ``n``-element carrier are Python ints used as bitsets.  The
product ``A1 x A2`` numbers the pair ``(i, j)`` as ``i * A2.n + j``.  Small
products cache full binary tables; larger ones evaluate coordinatewise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import DEFAULT_GUARDS, GuardExceeded, StructureError, check
from .order import bits, full_mask, mask_of


def to_bool(mask: int, n: int) -> np.ndarray:
    raw = mask.to_bytes((n + 7) // 8 or 1, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


def from_bool(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


class Carrier:
    """Uniform operation interface over a plain algebra or a binary product."""

    n: int
    constants: tuple[int, ...]
    n_binary: int
    n_unary: int
    commutative: tuple[bool, ...]

    def unary(self, k: int, xs: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def binary(self, k: int, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Outer table ``op_k(xs[i], ys[j])``."""
        raise NotImplementedError


class PlainCarrier(Carrier):
    def __init__(self, algebra):
        ops = algebra.operations()
        self.algebra = algebra
        self.ops = ops
        self.n = ops.n
        self.constants = tuple(int(c) for c in ops.constants)
        self.n_binary = len(ops.binary)
        self.n_unary = len(ops.unary)
        self.commutative = tuple(bool((t == t.T).all()) for t in ops.binary)

    def unary(self, k, xs):
        return self.ops.unary[k][xs]

    def binary(self, k, xs, ys):
        return self.ops.binary[k][xs[:, None], ys[None, :]]


# products up to this size keep full binary tables (int16, 32 MB each at the limit)
_MATERIALISE = 4096


class ProductAlgebra(Carrier):
    """``left x right`` with coordinatewise operations; ``(i, j)`` is element ``i * right.n + j``."""

    def __init__(self, left, right):
        if getattr(left, "sig", None) != getattr(right, "sig", None):
            raise StructureError("product factors must share a signature")
        self.left, self.right = left, right
        self._l, self._r = carrier(left), carrier(right)
        if (self._l.n_binary, self._l.n_unary) != (self._r.n_binary, self._r.n_unary):
            raise StructureError("product factors have different operation lists")
        self.n1, self.n2 = self._l.n, self._r.n
        self.n = self.n1 * self.n2
        self.constants = tuple(a * self.n2 + b for a, b in zip(self._l.constants, self._r.constants))
        self.n_binary = self._l.n_binary
        self.n_unary = self._l.n_unary
        self.commutative = tuple(a and b for a, b in zip(self._l.commutative, self._r.commutative))
        self._full: list[np.ndarray] | None = None

    def index(self, i: int, j: int) -> int:
        return i * self.n2 + j

    def pair(self, e: int) -> tuple[int, int]:
        return divmod(e, self.n2)

    def unary(self, k, xs):
        q, r = np.divmod(xs, self.n2)
        return self._l.unary(k, q) * self.n2 + self._r.unary(k, r)

    def binary(self, k, xs, ys):
        if self.n <= _MATERIALISE:
            return self._tables()[k][xs[:, None], ys[None, :]]
        qx, rx = np.divmod(xs, self.n2)
        qy, ry = np.divmod(ys, self.n2)
        return self._l.binary(k, qx, qy) * self.n2 + self._r.binary(k, rx, ry)

    def _tables(self) -> list[np.ndarray]:
        if self._full is None:
            q, r = np.divmod(np.arange(self.n, dtype=np.int64), self.n2)
            self._full = [(self._l.binary(k, q, q) * self.n2 + self._r.binary(k, r, r)).astype(np.int16 if self.n < 2**15 else np.int32)
                          for k in range(self.n_binary)]
        return self._full

    def diagonal(self) -> int:
        if self.n1 != self.n2:
            raise StructureError("diagonal needs equal factors")
        return mask_of(i * self.n2 + i for i in range(self.n1))

    def full(self) -> int:
        return full_mask(self.n)

    def rectangle(self, m1: int, m2: int) -> int:
        return mask_of(i * self.n2 + j for i in bits(m1) for j in bits(m2))

    def projections(self, members: int) -> tuple[int, int]:
        p1 = p2 = 0
        for e in bits(members):
            i, j = divmod(e, self.n2)
            p1 |= 1 << i
            p2 |= 1 << j
        return p1, p2


def carrier(algebra) -> Carrier:
    if isinstance(algebra, Carrier):
        return algebra
    return PlainCarrier(algebra)


@dataclass(frozen=True, eq=False)
class Subuniverse:
    parent: Any
    members: int

    def __eq__(self, other):
        return isinstance(other, Subuniverse) and self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    @property
    def elements(self) -> list[int]:
        return bits(self.members)

    def __len__(self):
        return bin(self.members).count("1")

    def __contains__(self, e: int) -> bool:
        return bool((self.members >> e) & 1)


def _close(c: Carrier, members: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    """Saturate ``members`` (modified in place) given that only ``frontier`` is unprocessed."""
    hit = np.zeros_like(members)
    while frontier.size:
        inside = np.flatnonzero(members)
        hit[:] = False
        for k in range(c.n_unary):
            hit[c.unary(k, frontier)] = True
        for k in range(c.n_binary):
            hit[c.binary(k, frontier, inside)] = True
            if not c.commutative[k]:
                hit[c.binary(k, inside, frontier)] = True
        hit &= ~members
        frontier = np.flatnonzero(hit)
        members |= hit
    return members


def sg_mask(parent, seed: int = 0, base: int = 0) -> int:
    """Least subuniverse containing ``seed``; ``base`` may name a known subuniverse inside it."""
    c = carrier(parent)
    members = to_bool(base, c.n)
    start = seed | mask_of(c.constants) if not base else seed & ~base
    start_idx = np.array([e for e in bits(start) if not members[e]], dtype=np.int64)
    members[start_idx] = True
    frontier = np.flatnonzero(members) if not base else start_idx
    return from_bool(_close(c, members, frontier))


def sg(parent, seed: Iterable[int] | int = 0) -> Subuniverse:
    seed_mask = seed if isinstance(seed, int) else mask_of(seed)
    return Subuniverse(parent, sg_mask(parent, seed_mask))


def is_subuniverse(parent, members: int) -> bool:
    c = carrier(parent)
    if any(not (members >> k) & 1 for k in c.constants):
        return False
    idx = np.array(bits(members), dtype=np.int64)
    inside = to_bool(members, c.n)
    if idx.size == 0:
        return True
    for k in range(c.n_unary):
        if not inside[c.unary(k, idx)].all():
            return False
    for k in range(c.n_binary):
        if not inside[c.binary(k, idx, idx)].all():
            return False
    return True


def principal_subuniverses(parent, bottom: int | None = None) -> dict[int, int]:
    """``sg({e})`` for every ``e`` outside the least subuniverse.

    If some ``z`` in the unary orbit of ``e`` already has ``e`` in its
    principal subuniverse, the two principal subuniverses coincide, so
    closures are only computed about once per orbit.
    """
    c = carrier(parent)
    if bottom is None:
        bottom = sg_mask(c, 0)
    idx = np.arange(c.n, dtype=np.int64)
    unary = [c.unary(k, idx).tolist() for k in range(c.n_unary)]
    out: dict[int, int] = {}
    for e in range(c.n):
        if (bottom >> e) & 1:
            continue
        seen = {e}
        todo = [e]
        hit = None
        while todo and hit is None:
            z = todo.pop()
            for u in unary:
                w = u[z]
                if w in seen:
                    continue
                seen.add(w)
                todo.append(w)
                known = out.get(w)
                if known is not None and (known >> e) & 1:
                    hit = known
                    break
        out[e] = hit if hit is not None else sg_mask(c, 1 << e, bottom)
    return out


def all_subuniverse_masks(parent, size_cap: int | None = None, count_cap: int | None = None) -> list[int]:
    """Every subuniverse once, sorted as bitsets.

    Worklist closure: each found ``S`` is extended by ``sg(S + {x})`` for every
    ``x`` outside it, using the principal subuniverse of ``x`` as the step.
    The default size cap is the product guard for products and the algebra
    guard otherwise.
    """
    c = carrier(parent)
    if size_cap is None:
        size_cap = DEFAULT_GUARDS.product if isinstance(c, ProductAlgebra) else DEFAULT_GUARDS.algebra
    count_cap = DEFAULT_GUARDS.subuniverses if count_cap is None else count_cap
    if c.n > size_cap:
        raise GuardExceeded("subuniverse enumeration carrier size", size_cap, c.n)
    bottom = sg_mask(c, 0)
    steps = sorted(set(principal_subuniverses(c, bottom).values()))
    found = {bottom}
    queue = [bottom]
    while queue:
        s = queue.pop()
        for p in steps:
            if p & ~s == 0:
                continue
            t = sg_mask(c, p, s)
            if t not in found:
                found.add(t)
                if len(found) > count_cap:
                    raise GuardExceeded("subuniverse count", count_cap)
                queue.append(t)
    return sorted(found)


def all_subuniverses(parent, size_cap: int | None = None, count_cap: int | None = None) -> list[Subuniverse]:
    return [Subuniverse(parent, m) for m in all_subuniverse_masks(parent, size_cap, count_cap)]


def brute_force_subuniverses(parent, cap: int = 12) -> list[int]:
    """Filter all subsets; an independent check for small carriers."""
    c = carrier(parent)
    if c.n > cap:
        raise GuardExceeded("brute-force subuniverse filter", cap, c.n)
    return [m for m in range(1 << c.n) if is_subuniverse(c, m)]


# products: classification ---------------------------------------------------


PRODUCT = "product"
IDENTITY_GRAPH = "identity_graph"
PARTIAL_ISO_GRAPH = "partial_iso_graph"
NEITHER = "neither"


@dataclass(frozen=True)
class Classification:
    kind: str
    proj1: int
    proj2: int
    witness: dict | None = None


def classify_sub_of_product(b: Subuniverse) -> Classification:
    """Product of its projections, graph of a partial isomorphism, or neither.

    ``identity_graph`` is reported for graphs contained in the diagonal when
    both factors are the same algebra.  ``neither`` carries a missing
    rectangle point and a pair of members showing the relation is not a
    bijection.
    """
    prod = b.parent
    if not isinstance(prod, ProductAlgebra):
        raise StructureError("classification needs a subuniverse of a product")
    n2 = prod.n2
    pairs = [divmod(e, n2) for e in bits(b.members)]
    p1, p2 = prod.projections(b.members)
    k, k1, k2 = len(pairs), bin(p1).count("1"), bin(p2).count("1")
    is_product = k == k1 * k2
    is_graph = k == k1 == k2
    if is_product and is_graph:
        check(k1 == 1, "a product that is also a graph must have one-element projections")
    if is_product:
        return Classification(PRODUCT, p1, p2)
    if is_graph:
        _check_graph_is_iso(prod, pairs)
        if prod.left is prod.right and all(i == j for i, j in pairs):
            return Classification(IDENTITY_GRAPH, p1, p2)
        return Classification(PARTIAL_ISO_GRAPH, p1, p2)
    missing = next((i, j) for i in bits(p1) for j in bits(p2) if not (b.members >> (i * n2 + j)) & 1)
    left: dict[int, int] = {}
    right: dict[int, int] = {}
    clash = None
    for i, j in pairs:
        if i in left and left[i] != j:
            clash = ((i, left[i]), (i, j))
            break
        if j in right and right[j] != i:
            clash = ((right[j], j), (i, j))
            break
        left[i], right[j] = j, i
    check(clash is not None, "non-graph subuniverse without a clashing pair")
    return Classification(NEITHER, p1, p2, {"missing": missing, "clash": clash})


def _check_graph_is_iso(prod: ProductAlgebra, pairs: list[tuple[int, int]]) -> None:
    f = dict(pairs)
    xs = np.array(sorted(f), dtype=np.int64)
    fx = np.array([f[x] for x in xs.tolist()], dtype=np.int64)
    lc, rc = prod._l, prod._r
    lookup = np.full(lc.n, -1, dtype=np.int64)
    lookup[xs] = fx
    for k in range(lc.n_unary):
        check((lookup[lc.unary(k, xs)] == rc.unary(k, fx)).all(), "graph map fails a unary operation")
    for k in range(lc.n_binary):
        check((lookup[lc.binary(k, xs, xs)] == rc.binary(k, fx, fx)).all(), "graph map fails a binary operation")


def partial_isomorphisms(a1, a2, size_cap: int | None = None, count_cap: int | None = None) -> list[Subuniverse]:
    """Graphs of isomorphisms between subalgebras of ``a1`` and of ``a2``."""
    prod = ProductAlgebra(a1, a2)
    out = []
    for s in all_subuniverses(prod, size_cap, count_cap):
        if classify_sub_of_product(s).kind in (PARTIAL_ISO_GRAPH, IDENTITY_GRAPH):
            out.append(s)
    return out


def brute_force_partial_isomorphisms(a1, a2) -> list[int]:
    """Graph masks from bijections between subuniverses that respect every operation."""
    from itertools import permutations

    c1, c2 = carrier(a1), carrier(a2)
    s1 = brute_force_subuniverses(c1)
    s2 = brute_force_subuniverses(c2)
    out = set()
    for m1 in s1:
        d = bits(m1)
        for m2 in s2:
            r = bits(m2)
            if len(r) != len(d):
                continue
            for perm in permutations(r):
                f = dict(zip(d, perm))
                if _respects(c1, c2, f):
                    out.add(mask_of(i * c2.n + f[i] for i in d))
    return sorted(out)


def _respects(c1: Carrier, c2: Carrier, f: dict[int, int]) -> bool:
    xs = list(f)
    for k, kk in zip(c1.constants, c2.constants):
        if f.get(k) != kk:
            return False
    for k in range(c1.n_unary):
        for x in xs:
            if f[int(c1.unary(k, np.array([x]))[0])] != int(c2.unary(k, np.array([f[x]]))[0]):
                return False
    for k in range(c1.n_binary):
        for x in xs:
            for y in xs:
                v = int(c1.binary(k, np.array([x]), np.array([y]))[0, 0])
                w = int(c2.binary(k, np.array([f[x]]), np.array([f[y]]))[0, 0])
                if f[v] != w:
                    return False
    return True


# congruences ------------------------------------------------------------------


Partition = tuple[int, ...]


def _canonical(labels: Sequence[int]) -> Partition:
    seen: dict[int, int] = {}
    return tuple(seen.setdefault(v, len(seen)) for v in labels)


class _UnionFind:
    def __init__(self, n: int, labels: Sequence[int] | None = None):
        self.parent = list(range(n))
        if labels is not None:
            first: dict[int, int] = {}
            for i, v in enumerate(labels):
                self.parent[i] = first.setdefault(v, i)

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            rx, ry = ry, rx
        self.parent[rx] = ry
        return True

    def labels(self) -> Partition:
        return _canonical([self.find(i) for i in range(len(self.parent))])


class _Translations:
    """Basic translations of an algebra as plain integer tables."""

    def __init__(self, c: Carrier):
        idx = np.arange(c.n, dtype=np.int64)
        self.unary = [c.unary(k, idx).tolist() for k in range(c.n_unary)]
        self.binary = []
        for k in range(c.n_binary):
            t = c.binary(k, idx, idx)
            self.binary.append(t.tolist())
            if not c.commutative[k]:
                self.binary.append(t.T.tolist())


def _saturate(tr: _Translations, uf: _UnionFind, pairs: list[tuple[int, int]]) -> None:
    work = list(pairs)
    while work:
        x, y = work.pop()
        if not uf.union(x, y):
            continue
        for u in tr.unary:
            work.append((u[x], u[y]))
        for t in tr.binary:
            rx, ry = t[x], t[y]
            work.extend(zip(rx, ry))


def principal_congruence(a, x: int, y: int) -> Partition:
    c = carrier(a)
    uf = _UnionFind(c.n)
    _saturate(_Translations(c), uf, [(x, y)])
    return uf.labels()


def congruence_join(p: Partition, q: Partition) -> Partition:
    uf = _UnionFind(len(p), p)
    first: dict[int, int] = {}
    for i, v in enumerate(q):
        uf.union(i, first.setdefault(v, i))
    return uf.labels()


def congruence_meet(p: Partition, q: Partition) -> Partition:
    return _canonical(list(zip(p, q)))


def refines(p: Partition, q: Partition) -> bool:
    """``p`` is contained in ``q`` as a relation."""
    return all(q[i] == q[j] for i in range(len(p)) for j in range(i) if p[i] == p[j])


def is_congruence(a, p: Partition) -> bool:
    c = carrier(a)
    lab = np.array(p)
    idx = np.arange(c.n, dtype=np.int64)
    same = lab[:, None] == lab[None, :]
    for k in range(c.n_unary):
        u = lab[c.unary(k, idx)]
        if not (u[:, None] == u[None, :])[same].all():
            return False
    for k in range(c.n_binary):
        t = lab[c.binary(k, idx, idx)]
        # compatibility in each argument separately suffices for equivalences
        for z in range(c.n):
            col = t[:, z]
            if not (col[:, None] == col[None, :])[same].all():
                return False
            row = t[z, :]
            if not (row[:, None] == row[None, :])[same].all():
                return False
    return True


def all_congruences(a, cap: int | None = None) -> list[Partition]:
    """Every congruence as a canonical block labelling; ``Delta`` first, sorted by block count descending."""
    c = carrier(a)
    cap = DEFAULT_GUARDS.congruences if cap is None else cap
    if c.n > cap:
        raise GuardExceeded("congruence enumeration carrier size", cap, c.n)
    tr = _Translations(c)
    delta = tuple(range(c.n))
    principals = set()
    for x in range(c.n):
        for y in range(x):
            uf = _UnionFind(c.n)
            _saturate(tr, uf, [(x, y)])
            principals.add(uf.labels())
    found = {delta}
    queue = [delta]
    while queue:
        p = queue.pop()
        for q in principals:
            j = congruence_join(p, q)
            if j not in found:
                found.add(j)
                queue.append(j)
    return sorted(found, key=lambda p: (-max(p, default=-1), p))


def is_simple(a, cap: int | None = None) -> bool:
    """At least two elements and only the trivial congruences."""
    c = carrier(a)
    if c.n < 2:
        return False
    cap = DEFAULT_GUARDS.congruences if cap is None else cap
    if c.n > cap:
        raise GuardExceeded("simplicity check carrier size", cap, c.n)
    tr = _Translations(c)
    for x in range(c.n):
        for y in range(x):
            uf = _UnionFind(c.n)
            _saturate(tr, uf, [(x, y)])
            if max(uf.labels()) != 0:
                return False
    return True


def quotient_tables(a, p: Partition):
    """Operation tables of ``a / p`` (block ``k`` is element ``k``)."""
    from .cornish import OpTables

    c = carrier(a)
    check(is_congruence(c, p), "quotient by a non-congruence")
    lab = np.array(p, dtype=np.int64)
    m = int(lab.max()) + 1
    rep = np.array([p.index(k) for k in range(m)], dtype=np.int64)
    unary = tuple(lab[c.unary(k, rep)] for k in range(c.n_unary))
    binary = tuple(lab[c.binary(k, rep, rep)] for k in range(c.n_binary))
    consts = tuple(int(lab[k]) for k in c.constants)
    return OpTables(binary, unary, consts)


def quotient(a, p: Partition):
    """``a / p`` as a Cornish algebra when ``a`` is one, else as bare tables."""
    from .birkhoff import DistLattice
    from .cornish import CornishAlgebra

    t = quotient_tables(a, p)
    if isinstance(a, CornishAlgebra):
        lat = DistLattice(t.binary[0], t.binary[1])
        return CornishAlgebra(a.sig, lat, [u.tolist() for u in t.unary])
    return t


def con_sub_duality_check(a, cap: int | None = None, literal: bool = False) -> bool:
    """Congruences of a Cornish algebra against closed subsets of its dual space.

    ``u(theta)`` is the set of prime filters that are unions of
    ``theta``-blocks.  The check asserts that ``u`` lands in the closed
    subsets, is a bijection onto them and reverses inclusion.  With
    ``literal`` the set is also rebuilt as the image of the dual of the
    quotient map.
    """
    from .birkhoff import H
    from .cornish import D, substructures

    cons = all_congruences(a, cap)
    x = D(a)
    _, homs = H(a.lat)
    subs = set(substructures(x))

    def u(theta: Partition) -> int:
        out = 0
        for k, chi in enumerate(homs):
            if all(((chi >> i) & 1) == ((chi >> j) & 1)
                   for i in range(a.n) for j in range(i) if theta[i] == theta[j]):
                out |= 1 << k
        return out

    images = {th: u(th) for th in cons}
    for th, s in images.items():
        check(s in subs, "u(theta) is not a closed substructure")
        if literal:
            check(s == _literal_u(a, th, homs), "kernel reading disagrees with the quotient dual")
    check(len(set(images.values())) == len(cons), "u is not injective")
    check(set(images.values()) == subs, "u is not onto the closed substructures")
    for p in cons:
        for q in cons:
            check(refines(p, q) == (images[q] & ~images[p] == 0), "u does not reverse order")
    return True


def _literal_u(a, theta: Partition, homs: Sequence[int]) -> int:
    """Image of ``D(a/theta)`` in ``D(a)`` under the dual of the quotient map."""
    from .birkhoff import H

    q = quotient(a, theta)
    _, qhoms = H(q.lat)
    pos = {chi: k for k, chi in enumerate(homs)}
    out = 0
    for chi in qhoms:
        pulled = mask_of(i for i in range(a.n) if (chi >> theta[i]) & 1)
        out |= 1 << pos[pulled]
    return out
