"""Built-in structures: the worked examples, written in the text format.

Keys are looked up by :func:`get` (also reachable as ``corpus:KEY`` on the
command line).  ``C1`` .. ``C6`` are the Ockham cycle spaces and
``C1-algebra`` .. ``C6-algebra`` their dual algebras.
"""

from __future__ import annotations

from functools import lru_cache

from .structfmt import StructureDoc, parse

_DOCS: dict[str, str] = {}


def _add(key: str, text: str) -> None:
    _DOCS[key] = text.strip() + "\n"


# E of a one-map space, with f read as plus or as minus --------------------------

_add("row1-space", """
space row1_space
# 2-chain, f sends both points to the top
signature: f+
points: p q
order: p<q
map f: p->q q->q
""")
_add("row1-plus", """
algebra row1_plus
signature: f+
elements: bot a top
order: bot<a<top
map f: bot->bot a->top top->top
""")
_add("row1-minus", """
algebra row1_minus
signature: f-
elements: bot a top
order: bot<a<top
map f: bot->top a->bot top->bot
""")
_add("row2-space", """
space row2_space
# 2-antichain, f swaps the points
signature: f+
points: p q
order:
map f: p->q q->p
""")
_add("row2-plus", """
algebra row2_plus
signature: f+
elements: bot a b top
order: bot<a<top, bot<b<top
map f: bot->bot a->b b->a top->top
""")
_add("row2-minus", """
algebra row2_minus
signature: f-
elements: bot a b top
order: bot<a<top, bot<b<top
map f: bot->top a->a b->b top->bot
""")
_add("row3-space", """
space row3_space
# 2-antichain, f the identity
signature: f+
points: p q
order:
map f: p->p q->q
""")
_add("row3-plus", """
algebra row3_plus
signature: f+
elements: bot a b top
order: bot<a<top, bot<b<top
map f: bot->bot a->a b->b top->top
""")
_add("row3-minus", """
algebra row3_minus
signature: f-
elements: bot a b top
order: bot<a<top, bot<b<top
map f: bot->top a->b b->a top->bot
""")

# which up-set each golden element is, by point names
GOLDEN = {
    "row1": {"bot": (), "a": ("q",), "top": ("p", "q")},
    "row2": {"bot": (), "a": ("p",), "b": ("q",), "top": ("p", "q")},
    "row3": {"bot": (), "a": ("p",), "b": ("q",), "top": ("p", "q")},
}

# spaces with quasi-primal duals -------------------------------------------------

_add("X1", """
space X1
# seven points drawn with no order relations, read as an antichain
# top row x0 x1 x2 x3, bottom row x5 x6 x7
signature: f+ g-
points: x0 x1 x2 x3 x5 x6 x7
order:
map f: x0->x5 x1->x1 x2->x2 x3->x7 x5->x0 x6->x6 x7->x7
map g: x0->x1 x1->x2 x2->x3 x3->x0 x5->x6 x6->x7 x7->x5
""")
_add("X2", """
space X2
signature: f+ g-
points: u v w
order: u<v<w
map f: u->v v->w w->w
map g: u->w v->v w->u
""")
_add("X3", """
space X3
# antichain on a 3x3 grid: g cycles each row, f cycles each column
signature: f+ g-
points: x0 x1 x2 x3 x4 x5 x6 x7 x8
order:
map f: x0->x3 x3->x6 x6->x0 x1->x4 x4->x7 x7->x1 x2->x5 x5->x8 x8->x2
map g: x0->x1 x1->x2 x2->x0 x3->x4 x4->x5 x5->x3 x6->x7 x7->x8 x8->x6
""")

# the semi-primal family --------------------------------------------------------


def _y_text(n: int) -> str:
    pts = [f"u{i}" for i in range(1, n + 1)]
    f = " ".join(f"{pts[i]}->{pts[min(i + 1, n - 1)]}" for i in range(n))
    g = " ".join(f"{pts[i]}->{pts[n - 1 - i]}" for i in range(n))
    return (f"space Y{n}\nsignature: f+ g-\npoints: {' '.join(pts)}\n"
            f"order: {'<'.join(pts)}\nmap f: {f}\nmap g: {g}\n")


for _n in (2, 3, 4):
    _add(f"Y{_n}", _y_text(_n))

_add("A2", """
algebra A2
signature: f+ g-
elements: 0 a1 1
order: 0<a1<1
map f: 0->0 a1->1 1->1
map g: 0->1 a1->a1 1->0
""")
_add("A3", """
algebra A3
signature: f+ g-
elements: 0 a1 a2 1
order: 0<a1<a2<1
map f: 0->0 a1->a2 a2->1 1->1
map g: 0->1 a1->a2 a2->a1 1->0
""")
_add("A4", """
algebra A4
signature: f+ g-
elements: 0 a1 a2 a3 1
order: 0<a1<a2<a3<1
map f: 0->0 a1->a2 a2->a3 a3->1 1->1
map g: 0->1 a1->a3 a2->a2 a3->a1 1->0
""")

# Ockham ----------------------------------------------------------------------------


def _c_text(m: int) -> str:
    pts = [f"c{i}" for i in range(m)]
    g = " ".join(f"{pts[i]}->{pts[(i + 1) % m]}" for i in range(m))
    return f"space C{m}\nsignature: g-\npoints: {' '.join(pts)}\norder:\nmap g: {g}\n"


for _m in range(1, 7):
    _add(f"C{_m}", _c_text(_m))

_add("DM4", """
algebra DM4
# De Morgan algebra on the 4-element Boolean lattice, atoms fixed
signature: g-
elements: 0 a b 1
order: 0<a<1, 0<b<1
map g: 0->1 a->a b->b 1->0
""")
_add("three-chain-witness", """
space W
# u<v<w, g swaps u and w and fixes v
signature: g-
points: u v w
order: u<v<w
map g: u->w v->v w->u
""")

# plus-only algebras -------------------------------------------------------------------

_add("plus-chain", """
algebra plus_chain
signature: f+
elements: 0 a 1
order: 0<a<1
map f: 0->0 a->1 1->1
""")
_add("plus-boolean", """
algebra plus_boolean
signature: f+ h+
elements: 0 a b 1
order: 0<a<1, 0<b<1
map f: 0->0 a->b b->a 1->1
map h: 0->0 a->a b->b 1->1
""")

# posets for the ddp checks ----------------------------------------------------------

_add("ddp-2chain", """
poset chain2
points: a b
order: a<b
""")
_add("ddp-3chain", """
poset chain3
points: a b c
order: a<b<c
""")
_add("ddp-crown4", """
poset crown4
# two minimal points each below two maximal points
points: a b c d
order: a<c, a<d, b<c, b<d
""")
_add("ddp-N", """
poset N
points: a b c d
order: a<b, c<b, c<d
""")


@lru_cache(maxsize=None)
def _parsed(key: str) -> StructureDoc:
    return parse(_DOCS[key])


def keys() -> list[str]:
    return list(_DOCS) + [f"C{m}-algebra" for m in range(1, 7)]


def text(key: str) -> str:
    if key.endswith("-algebra") and key[:-8] in _DOCS:
        from .structfmt import doc_from_algebra, render, upset_names

        a = get(key)
        names = upset_names(a, _parsed(key[:-8]).names)
        return render(doc_from_algebra(a, key.replace("-", "_"), names))
    try:
        return _DOCS[key]
    except KeyError:
        raise KeyError(f"no corpus entry {key!r}") from None


def doc(key: str) -> StructureDoc:
    if key.endswith("-algebra"):
        return parse(text(key))
    if key not in _DOCS:
        raise KeyError(f"no corpus entry {key!r}")
    return _parsed(key)


@lru_cache(maxsize=None)
def get(key: str):
    """Build the structure named ``key``; ``NAME-algebra`` is ``E`` of space ``NAME``."""
    from .cornish import E

    if key.endswith("-algebra") and key[:-8] in _DOCS:
        return E(get(key[:-8]))
    return doc(key).build()


def spaces() -> dict[str, object]:
    from .cornish import CornishSpace

    return {k: get(k) for k in _DOCS if isinstance(get(k), CornishSpace)}


def algebras() -> dict[str, object]:
    from .cornish import CornishAlgebra

    return {k: get(k) for k in keys() if isinstance(get(k), CornishAlgebra)}
