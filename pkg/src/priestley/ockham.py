"""Ockham spaces ``C_m`` and the odd-cycle classification of discriminator varieties."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .cornish import OCKHAM, CornishSpace, cycles
from .errors import StructureError, check
from .order import Poset, full_mask, is_antichain
from .primality import NO, YES, Verdict, even_cycle_witness, internal_sufficient


@lru_cache(maxsize=None)
def build_Cm(m: int) -> CornishSpace:
    """``m``-point antichain with ``g(i) = i + 1 mod m``."""
    if m < 1:
        raise StructureError("C_m needs m >= 1")
    return CornishSpace(OCKHAM, Poset.antichain(m), (tuple((i + 1) % m for i in range(m)),))


def cycle_length(x: CornishSpace) -> int | None:
    """``m`` when ``x`` is isomorphic to ``C_m``, else ``None``.

    Decided by the shape alone: an antichain on which ``g`` is one cycle.
    """
    if x.sig != OCKHAM or x.n == 0:
        return None
    if not is_antichain(full_mask(x.n), x.poset):
        return None
    cs = cycles(x.maps[0])
    if len(cs) != 1 or len(cs[0]) != x.n:
        return None
    return x.n


def iso_to_Cm(x: CornishSpace) -> tuple[int, ...] | None:
    """Map ``x -> C_m`` sending the cycle through point 0 to ``0, 1, 2, ...``."""
    m = cycle_length(x)
    if m is None:
        return None
    img = [0] * m
    p = 0
    for k in range(m):
        img[p] = k
        p = x.maps[0][p]
    return tuple(img)


def ockham_discriminator_classification(spaces: Sequence[CornishSpace]) -> Verdict:
    """Yes iff every space is some ``C_m`` with ``m`` odd.

    A ``no`` names the first failing space and either why it is not a
    ``C_m`` or, for even ``m``, the jointly surjective witness pair on ``C_m``.
    """
    ms = []
    for k, x in enumerate(spaces):
        if x.sig != OCKHAM:
            raise StructureError(f"space {k} does not have the Ockham signature")
        m = cycle_length(x)
        if m is None:
            antichain = is_antichain(full_mask(x.n), x.poset)
            even = [list(c) for c in cycles(x.maps[0]) if len(c) % 2 == 0] if x.n else []
            return Verdict(NO, route="ockham", witness={
                "space": k, "reason": "not isomorphic to any C_m",
                "antichain": antichain, "g_cycles": [list(c) for c in cycles(x.maps[0])],
                "even_cycles": even})
        if m % 2 == 0:
            w = even_cycle_witness(m)
            return Verdict(NO, route="ockham", witness={
                "space": k, "reason": f"isomorphic to C_{m} with m even",
                "iso": iso_to_Cm(x), "joint_pair": w.pair, "subuniverse": w.subuniverse.members,
                "kind": w.kind})
        ms.append(m)
    check(internal_sufficient(list(spaces), "g").outcome == YES,
          "odd C_m family fails the orbit criterion with t = g")
    return Verdict(YES, route="ockham", certificate={"m": ms, "term": "g"})
