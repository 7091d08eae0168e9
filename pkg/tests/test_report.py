import json

from priestley import corpus
from priestley.primality import quasi_primal_pair, semi_primal
from priestley.report import SCHEMA, digest, jsonable, make_report, render_text, structure_entry, verdict_entry


def _report(v, names=None, seconds=1.0):
    a = corpus.get("C2-algebra")
    s = [structure_entry("C2-algebra", a, corpus.text("C2-algebra"))]
    return make_report(["check"], {"strict": False}, s, [verdict_entry("qp", v, names, names)], seconds)


def test_report_is_json_and_versioned():
    a = corpus.get("C2-algebra")
    rep = _report(quasi_primal_pair(a, a), corpus.doc("C2-algebra").names)
    text = json.dumps(rep)
    back = json.loads(text)
    assert back["schema"] == SCHEMA
    assert list(back) == ["schema", "command", "flags", "structures", "results", "digest", "timing"]


def test_witness_uses_names():
    a = corpus.get("C2-algebra")
    names = corpus.doc("C2-algebra").names
    w = _report(quasi_primal_pair(a, a), names)["results"][0]["witness"]
    assert w["missing"] == ["0", "1"]
    assert ["up_c0", "0"] in w["pairs"]
    assert w["subuniverse"].startswith("0x")


def test_digest_ignores_timing():
    a = corpus.get("A2")
    v = semi_primal(a)
    r1, r2 = _report(v, seconds=1.0), _report(semi_primal(a), seconds=5.0)
    assert r1["digest"] == r2["digest"] == digest(r1)


def test_text_is_rendered_from_json():
    a = corpus.get("A2")
    rep = _report(semi_primal(a))
    text = render_text(json.loads(json.dumps(rep)))
    assert text == render_text(rep)
    assert "qp: yes (brute-force)" in text


def test_jsonable_handles_numpy():
    import numpy as np

    assert jsonable({"a": np.int64(3), "b": (np.bool_(True),)}) == {"a": 3, "b": [True]}
