"""Subalgebras of a binary product read through jointly surjective pairs.

For Cornish spaces ``X1``, ``X2`` a pair of morphisms ``phi_i: X_i -> Y``
whose images cover ``Y`` yields the subalgebra

    B(phi1, phi2) = {(a o phi1, a o phi2) : a an up-set of Y}

of ``E(X1) x E(X2)``, and every subalgebra arises this way from the pair
built by :func:`canonical_pair`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .birkhoff import K, DistLattice, H
from .cornish import (
    AlgebraHom,
    CornishAlgebra,
    CornishSpace,
    D,
    E,
    SpaceMorphism,
    subspace,
)
from .errors import StructureError, check
from .order import bits, full_mask, mask_of, preimage
from .subalg import (
    IDENTITY_GRAPH,
    NEITHER,
    PARTIAL_ISO_GRAPH,
    PRODUCT,
    ProductAlgebra,
    Subuniverse,
    classify_sub_of_product,
    is_subuniverse,
)


@dataclass(frozen=True, eq=False)
class JointPair:
    phi1: SpaceMorphism
    phi2: SpaceMorphism

    def __post_init__(self):
        if self.phi1.cod is not self.phi2.cod and self.phi1.cod != self.phi2.cod:
            raise StructureError("the two morphisms need a common codomain")
        if self.phi1.image() | self.phi2.image() != full_mask(self.y.n):
            raise StructureError("the pair is not jointly surjective")

    @property
    def x1(self) -> CornishSpace:
        return self.phi1.dom

    @property
    def x2(self) -> CornishSpace:
        return self.phi2.dom

    @property
    def y(self) -> CornishSpace:
        return self.phi1.cod


def _factor_point_sets(a: CornishAlgebra) -> tuple[CornishSpace, list[int]]:
    """Dual space of a factor and, per element, the set of points "containing" it.

    Algebras built by :func:`E` keep their space and the element is its own
    up-set; otherwise points are prime filters.
    """
    if a.space is not None and getattr(a.lat, "sets", None) is not None:
        return a.space, list(a.lat.sets)
    x = D(a)
    _, homs = H(a.lat)
    return x, [mask_of(k for k, chi in enumerate(homs) if (chi >> el) & 1) for el in range(a.n)]


def _element_of(a: CornishAlgebra, points: int) -> int:
    """Inverse of :func:`_factor_point_sets` on one element."""
    _, sets = _factor_point_sets(a)
    try:
        return sets.index(points)
    except ValueError:
        raise StructureError("point set is not an up-set of the factor's space") from None


def B_of(pair: JointPair, prod: ProductAlgebra | None = None) -> Subuniverse:
    """``{(a o phi1, a o phi2)}`` as a subuniverse of ``E(x1) x E(x2)``."""
    if prod is None:
        prod = ProductAlgebra(E(pair.x1), E(pair.x2))
    check(prod.left.space == pair.x1 and prod.right.space == pair.x2,
          "product factors are not the duals of the pair's domains")
    idx1, idx2 = prod.left.lat.set_index, prod.right.lat.set_index
    ky = K(pair.y.poset)
    img = [idx1[preimage(pair.phi1.img, u)] * prod.n2 + idx2[preimage(pair.phi2.img, u)] for u in ky.sets]
    members = mask_of(img)
    check(len(set(img)) == ky.n, "alpha -> (alpha o phi1, alpha o phi2) is not injective")
    check(is_subuniverse(prod, members), "B(phi1, phi2) is not a subuniverse")
    _check_hom_into_product(E(pair.y), prod, img)
    return Subuniverse(prod, members)


def _check_hom_into_product(a: CornishAlgebra, prod: ProductAlgebra, img: list[int]) -> None:
    f = np.array(img, dtype=np.int64)
    idx = np.arange(a.n, dtype=np.int64)
    ca = a.operations()
    for k, t in enumerate(ca.binary):
        check((f[t] == prod.binary(k, f, f)).all(), "B map fails a lattice operation")
    for k, u in enumerate(ca.unary):
        check((f[u[idx]] == prod.unary(k, f)).all(), "B map fails a unary operation")


def subalgebra_of(b: Subuniverse) -> tuple[CornishAlgebra, list[int]]:
    """The subuniverse as a Cornish algebra, with its members in increasing order."""
    prod = b.parent
    elems = bits(b.members)
    pos = {e: k for k, e in enumerate(elems)}
    arr = np.array(elems, dtype=np.int64)
    to_local = np.vectorize(pos.__getitem__, otypes=[np.int64])
    join = to_local(prod.binary(0, arr, arr))
    meet = to_local(prod.binary(1, arr, arr))
    ops = [to_local(prod.unary(k, arr)).tolist() for k in range(prod.n_unary)]
    return CornishAlgebra(prod.left.sig, DistLattice(join, meet), ops), elems


def canonical_pair(b: Subuniverse) -> JointPair:
    """The pair ``phi_i: X_i -> D(B)`` sending a point to the prime filter of elements it lies in.

    This is the dual of the projection ``B -> A_i`` composed with the
    evaluation isomorphism of ``X_i``.  Asserts ``B_of`` recovers ``b``.
    """
    prod = b.parent
    if not isinstance(prod, ProductAlgebra):
        raise StructureError("canonical_pair needs a subuniverse of a product")
    sub, elems = subalgebra_of(b)
    y = D(sub)
    hom_idx = sub.lat.hom_index
    x1, sets1 = _factor_point_sets(prod.left)
    x2, sets2 = _factor_point_sets(prod.right)
    coords = [divmod(e, prod.n2) for e in elems]

    def phi(x: CornishSpace, sets: list[int], side: int) -> SpaceMorphism:
        img = []
        for p in range(x.n):
            chi = mask_of(k for k, c in enumerate(coords) if (sets[c[side]] >> p) & 1)
            img.append(hom_idx[chi])
        return SpaceMorphism(x, y, tuple(img))

    pair = JointPair(phi(x1, sets1, 0), phi(x2, sets2, 1))
    if prod.left.space is not None and prod.right.space is not None:
        check(B_of(pair, prod).members == b.members, "B_of(canonical_pair(b)) differs from b")
    return pair


def product_criterion(pair: JointPair, verify: bool = True) -> bool:
    """Images partition ``Y`` with nothing comparable across them."""
    i1, i2 = pair.phi1.image(), pair.phi2.image()
    ok = i1 & i2 == 0
    if ok:
        p = pair.y.poset
        ok = all(p.up[a] & i2 == 0 and p.down[a] & i2 == 0 for a in bits(i1))
    if verify:
        kind = classify_sub_of_product(B_of(pair)).kind
        check(ok == (kind == PRODUCT), "product criterion disagrees with the classifier")
    return ok


def partial_map_criterion(pair: JointPair, verify: bool = True) -> bool:
    """Both morphisms are onto ``Y``."""
    ok = pair.phi1.is_surjective() and pair.phi2.is_surjective()
    if verify:
        kind = classify_sub_of_product(B_of(pair)).kind
        check(ok == (kind in (PARTIAL_ISO_GRAPH, IDENTITY_GRAPH)),
              "partial-map criterion disagrees with the classifier")
    return ok


def joint_embedding_transfer(u: AlgebraHom, a1: CornishAlgebra, a2: CornishAlgebra) -> bool:
    """``u: A -> A1 x A2`` is injective iff the duals of its two components cover ``D(A)``.

    ``u.cod`` must be the materialised product (see :func:`cornish.product_algebra`).
    Returns whether the equivalence held.
    """
    a = u.dom
    n2 = a2.n
    comps = [[v // n2 for v in u.img], [v % n2 for v in u.img]]
    _, homs = H(a.lat)
    idx = a.lat.hom_index
    covered = 0
    for factor, comp in zip((a1, a2), comps):
        _, fhoms = H(factor.lat)
        for chi in fhoms:
            covered |= 1 << idx[preimage(comp, chi)]
    jointly = covered == full_mask(len(homs))
    return u.is_injective() == jointly


def pairs_equivalent(p: JointPair, q: JointPair) -> bool:
    """Same domains and an isomorphism of codomains carrying ``p``'s maps to ``q``'s."""
    if p.x1 != q.x1 or p.x2 != q.x2 or p.y.n != q.y.n or p.y.sig != q.y.sig:
        return False
    sigma: dict[int, int] = {}
    for phi, psi in ((p.phi1, q.phi1), (p.phi2, q.phi2)):
        for a, b in zip(phi.img, psi.img):
            if sigma.setdefault(a, b) != b:
                return False
    if len(set(sigma.values())) != p.y.n:
        return False
    img = tuple(sigma[k] for k in range(p.y.n))
    try:
        m = SpaceMorphism(p.y, q.y, img)
    except StructureError:
        return False
    return m.is_embedding()


def image_substructure(phi: SpaceMorphism) -> CornishSpace:
    return subspace(phi.cod, phi.image())[0]


__all__ = [
    "JointPair", "B_of", "canonical_pair", "subalgebra_of", "product_criterion",
    "partial_map_criterion", "joint_embedding_transfer", "pairs_equivalent",
    "image_substructure", "NEITHER",
]
