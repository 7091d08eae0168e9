"""JSON reports for the command line.

A report is a plain dict with a fixed key order::

    {"schema": "priestley-report/1",
     "command": [...],            # argv echo
     "flags": {...},              # guards and switches in effect
     "structures": [{"name", "kind", "size", "digest"}, ...],
     "results": [{"label", "outcome", "route", "certificate", "witness", "notes"}, ...],
     "digest": "...",             # sha256 of everything above
     "timing": {"seconds": ...}}  # never part of the digest

Element indices inside witnesses are replaced by element names wherever the
report knows them.  :func:`render_text` only reads the dict.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Sequence

import numpy as np

SCHEMA = "priestley-report/1"


def jsonable(obj: Any) -> Any:
    """Recursively convert tuples, numpy scalars and library objects to JSON types."""
    from .cornish import SpaceMorphism, Word
    from .duality import JointPair
    from .subalg import Subuniverse

    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, Word):
        return str(obj)
    if isinstance(obj, SpaceMorphism):
        return {"image": list(obj.img)}
    if isinstance(obj, JointPair):
        return {"phi1": list(obj.phi1.img), "phi2": list(obj.phi2.img), "y_points": obj.y.n}
    if isinstance(obj, Subuniverse):
        return obj.members
    return obj


def structure_entry(name: str, obj, text: str | None = None) -> dict:
    from .cornish import CornishAlgebra, CornishSpace
    from .order import Poset

    if isinstance(obj, CornishAlgebra):
        kind, size = "algebra", obj.n
    elif isinstance(obj, CornishSpace):
        kind, size = "space", obj.n
    elif isinstance(obj, Poset):
        kind, size = "poset", obj.n
    else:
        kind, size = type(obj).__name__, getattr(obj, "n", None)
    digest = hashlib.sha256(text.encode()).hexdigest()[:16] if text is not None else None
    return {"name": name, "kind": kind, "size": size, "digest": digest}


def _name_pairs(pairs, n1: Sequence[str] | None, n2: Sequence[str] | None):
    if n1 is None or n2 is None:
        return pairs
    return [[n1[i], n2[j]] for i, j in pairs]


def verdict_entry(label: str, v, names1: Sequence[str] | None = None,
                  names2: Sequence[str] | None = None) -> dict:
    """One result row.  ``names1``/``names2`` name the factors of a product witness."""
    witness = None
    if v.witness is not None:
        w = dict(v.witness)
        if "pairs" in w:
            w["pairs"] = _name_pairs(w["pairs"], names1, names2)
        for key in ("missing",):
            if w.get(key) is not None:
                w[key] = _name_pairs([w[key]], names1, names2)[0]
        for key, names in (("proj1", names1), ("proj2", names2)):
            if isinstance(w.get(key), int) and names is not None:
                w[key] = [names[i] for i in range(len(names)) if (w[key] >> i) & 1]
        if isinstance(w.get("subuniverse"), int):
            w["subuniverse"] = hex(w["subuniverse"])
        if w.get("clash") is not None:
            w["clash"] = _name_pairs(list(w["clash"]), names1, names2)
        witness = jsonable(w)
    return {
        "label": label,
        "outcome": v.outcome,
        "route": v.route,
        "certificate": jsonable(v.certificate),
        "witness": witness,
        "notes": list(v.notes),
    }


def plain_entry(label: str, outcome: str, data: dict | None = None, notes: Sequence[str] = ()) -> dict:
    return {"label": label, "outcome": outcome, "route": "", "certificate": jsonable(data),
            "witness": None, "notes": list(notes)}


def make_report(command: Sequence[str], flags: dict, structures: list[dict], results: list[dict],
                seconds: float | None = None) -> dict:
    body = {
        "schema": SCHEMA,
        "command": list(command),
        "flags": jsonable(flags),
        "structures": structures,
        "results": results,
    }
    body["digest"] = digest(body)
    body["timing"] = {"seconds": None if seconds is None else round(seconds, 3)}
    return body


def digest(report: dict) -> str:
    core = {k: v for k, v in report.items() if k not in ("digest", "timing")}
    return hashlib.sha256(json.dumps(core, sort_keys=True).encode()).hexdigest()


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2)


def _short(v: Any, width: int = 100) -> str:
    s = json.dumps(v)
    return s if len(s) <= width else s[: width - 3] + "..."


def render_text(report: dict) -> str:
    lines = []
    for s in report["structures"]:
        lines.append(f"{s['name']}: {s['kind']} of size {s['size']}")
    for r in report["results"]:
        head = f"{r['label']}: {r['outcome']}"
        if r["route"]:
            head += f" ({r['route']})"
        lines.append(head)
        if r["witness"] is not None:
            for k, v in r["witness"].items():
                lines.append(f"  witness {k}: {_short(v)}")
        elif r["certificate"] is not None:
            for k, v in r["certificate"].items():
                lines.append(f"  {k}: {_short(v)}")
        for n in r["notes"]:
            lines.append(f"  note: {n}")
    if report["timing"]["seconds"] is not None:
        lines.append(f"[{report['timing']['seconds']} s]")
    return "\n".join(lines) + "\n"
