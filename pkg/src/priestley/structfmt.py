"""Line-oriented text format for posets, Cornish spaces and Cornish algebras.

::

    space Y2
    # comments run to end of line
    signature: f+ g-
    points: u1 u2
    order: u1<u2
    map f: u1->u2 u2->u2
    map g: u1->u2 u2->u1

Headers are ``space NAME``, ``algebra NAME`` (use ``elements:`` for the
carrier; the order must be a distributive lattice) and ``poset NAME``
(no signature or maps).  ``order`` takes any acyclic list of ``a<b`` pairs;
chains such as ``a<b<c`` are accepted.  Several ``order:`` lines accumulate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import PolarityError, StructureError

NAME = re.compile(r"[A-Za-z0-9_]+\Z")
KINDS = ("space", "algebra", "poset")


class ParseError(StructureError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass
class StructureDoc:
    kind: str
    name: str
    signature: list[tuple[str, str]] = field(default_factory=list)
    names: list[str] = field(default_factory=list)
    order: list[tuple[str, str]] = field(default_factory=list)
    maps: dict[str, dict[str, str]] = field(default_factory=dict)
    comments: list[str] = field(default_factory=list)
    lines: dict[str, int] = field(default_factory=dict, compare=False, repr=False)

    # building ---------------------------------------------------------------

    def index(self) -> dict[str, int]:
        return {s: k for k, s in enumerate(self.names)}

    def poset(self):
        from .order import Poset

        idx = self.index()
        try:
            return Poset.from_pairs(len(self.names), [(idx[a], idx[b]) for a, b in self.order])
        except StructureError as exc:
            raise ParseError(str(exc), self.lines.get("order")) from None

    def sig(self):
        from .cornish import Signature

        return Signature.of(self.signature)

    def build(self):
        """The poset, :class:`CornishSpace` or :class:`CornishAlgebra` described."""
        from .birkhoff import DistLattice
        from .cornish import CornishAlgebra, CornishSpace

        p = self.poset()
        if self.kind == "poset":
            return p
        idx = self.index()
        sig = self.sig()
        tables = []
        for name in sig.symbols:
            tables.append(tuple(idx[self.maps[name][x]] for x in self.names))
        try:
            if self.kind == "space":
                return CornishSpace(sig, p, tuple(tables))
            lat = DistLattice.from_poset(p)
            return CornishAlgebra(sig, lat, tables, names=self.names)
        except PolarityError as exc:
            line = next((self.lines.get(f"map {s}") for s in sig.symbols if f"map {s}" in str(exc)), None)
            raise ParseError(self._name_message(str(exc)), line) from None
        except StructureError as exc:
            raise ParseError(str(exc), self.lines.get("order")) from None

    def _name_message(self, msg: str) -> str:
        m = re.search(r"(\d+) <= (\d+) maps to (\d+), (\d+)", msg)
        if not m:
            return msg
        a, b, c, d = (self.names[int(v)] for v in m.groups())
        return msg[: m.start()] + f"{a} <= {b} maps to {c}, {d}"

    # canonical form -----------------------------------------------------------

    def canonical(self) -> "StructureDoc":
        """Same structure with the order given by its covering pairs and no comments."""
        p = self.poset()
        covers = [(self.names[a], self.names[b]) for a, b in p.covers()]
        maps = {s: {x: self.maps[s][x] for x in self.names} for s, _ in self.signature}
        return StructureDoc(self.kind, self.name, list(self.signature), list(self.names), covers, maps)


def parse(text: str) -> StructureDoc:
    """Parse one document; errors carry 1-based line numbers."""
    doc: StructureDoc | None = None
    seen_points = False
    for lineno, raw in enumerate(text.replace("\r\n", "\n").split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        comment = raw.split("#", 1)[1].strip() if "#" in raw else None
        if doc is not None and comment is not None and not line:
            doc.comments.append(comment)
        if not line:
            continue
        if doc is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] not in KINDS:
                raise ParseError("expected 'space NAME', 'algebra NAME' or 'poset NAME'", lineno)
            _check_name(parts[1], lineno)
            doc = StructureDoc(parts[0], parts[1])
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {line!r}", lineno)
        key = key.strip()
        rest = rest.strip()
        if key == "signature":
            if doc.kind == "poset" and rest:
                raise ParseError("a poset has no signature", lineno)
            if "signature" in doc.lines:
                raise ParseError("duplicate signature line", lineno)
            doc.lines["signature"] = lineno
            for tok in rest.split():
                if len(tok) < 2 or tok[-1] not in "+-":
                    raise ParseError(f"signature entry {tok!r} needs a trailing + or -", lineno)
                _check_name(tok[:-1], lineno)
                if any(tok[:-1] == s for s, _ in doc.signature):
                    raise ParseError(f"duplicate symbol {tok[:-1]!r}", lineno)
                doc.signature.append((tok[:-1], tok[-1]))
        elif key in ("points", "elements"):
            if seen_points:
                raise ParseError("duplicate points/elements line", lineno)
            seen_points = True
            doc.lines["points"] = lineno
            for tok in rest.split():
                _check_name(tok, lineno)
                if tok in doc.names:
                    raise ParseError(f"duplicate name {tok!r}", lineno)
                doc.names.append(tok)
        elif key == "order":
            doc.lines.setdefault("order", lineno)
            for chunk in filter(None, (c.strip() for c in rest.split(","))):
                items = [c.strip() for c in chunk.split("<")]
                if len(items) < 2:
                    raise ParseError(f"bad order item {chunk!r}", lineno)
                for a, b in zip(items, items[1:]):
                    for s in (a, b):
                        if s not in doc.names:
                            raise ParseError(f"unknown name {s!r} in order", lineno)
                    doc.order.append((a, b))
        elif key.startswith("map "):
            sym = key[4:].strip()
            if sym not in [s for s, _ in doc.signature]:
                raise ParseError(f"map for unknown symbol {sym!r}", lineno)
            if sym in doc.maps:
                raise ParseError(f"duplicate map for {sym!r}", lineno)
            doc.lines[f"map {sym}"] = lineno
            table: dict[str, str] = {}
            for tok in rest.split():
                a, arrow, b = tok.partition("->")
                if not arrow:
                    raise ParseError(f"bad map entry {tok!r}", lineno)
                for s in (a, b):
                    if s not in doc.names:
                        raise ParseError(f"unknown name {s!r} in map {sym}", lineno)
                if a in table:
                    raise ParseError(f"{a!r} assigned twice in map {sym}", lineno)
                table[a] = b
            missing = [x for x in doc.names if x not in table]
            if missing:
                raise ParseError(f"map {sym} is not total: missing {' '.join(missing)}", lineno)
            doc.maps[sym] = table
        else:
            raise ParseError(f"unknown key {key!r}", lineno)
    if doc is None:
        raise ParseError("empty document")
    for sym, _ in doc.signature:
        if sym not in doc.maps:
            raise ParseError(f"no map given for symbol {sym!r}", doc.lines.get("signature"))
    doc.build()
    return doc


def _check_name(s: str, lineno: int) -> None:
    if not NAME.match(s):
        raise ParseError(f"bad name {s!r}", lineno)


def render(doc: StructureDoc) -> str:
    out = [f"{doc.kind} {doc.name}"]
    out.extend(f"# {c}" for c in doc.comments)
    if doc.kind != "poset":
        out.append("signature: " + " ".join(s + p for s, p in doc.signature))
    out.append(("elements: " if doc.kind == "algebra" else "points: ") + " ".join(doc.names))
    out.append("order: " + ", ".join(f"{a}<{b}" for a, b in doc.order))
    for sym, _ in doc.signature:
        out.append(f"map {sym}: " + " ".join(f"{x}->{doc.maps[sym][x]}" for x in doc.names))
    return "\n".join(out).replace(": \n", ":\n").rstrip() + "\n"


# documents from structures ----------------------------------------------------


def doc_from_poset(p, name: str, names=None, kind: str = "poset") -> StructureDoc:
    names = list(names) if names is not None else [f"p{i}" for i in range(p.n)]
    covers = [(names[a], names[b]) for a, b in p.covers()]
    return StructureDoc(kind, name, [], names, covers, {})


def doc_from_space(x, name: str, names=None) -> StructureDoc:
    names = list(names) if names is not None else [f"p{i}" for i in range(x.n)]
    doc = doc_from_poset(x.poset, name, names, kind="space")
    doc.signature = list(zip(x.sig.symbols, x.sig.polarity))
    doc.maps = {s: {names[i]: names[img[i]] for i in range(x.n)} for s, img in zip(x.sig.symbols, x.maps)}
    return doc


def doc_from_algebra(a, name: str, names=None) -> StructureDoc:
    if names is None:
        names = a.names if a.names is not None else [f"e{i}" for i in range(a.n)]
    names = list(names)
    doc = doc_from_poset(a.lat.order, name, names, kind="algebra")
    doc.signature = list(zip(a.sig.symbols, a.sig.polarity))
    doc.maps = {s: {names[i]: names[op[i]] for i in range(a.n)} for s, op in zip(a.sig.symbols, a.ops)}
    return doc


def upset_names(a, point_names) -> list[str]:
    """Names for the elements of ``E(x)``: ``0``, ``1`` or the up-set's minimal points."""
    from .order import bits, minimal

    p = a.space.poset
    out = []
    for u in a.lat.sets:
        if u == 0:
            out.append("0")
        elif u == (1 << p.n) - 1:
            out.append("1")
        else:
            mins = minimal(p.induced(bits(u)))
            pts = [point_names[b] for k, b in enumerate(bits(u)) if (mins >> k) & 1]
            out.append("up_" + "_".join(pts))
    return out
