"""Command-line driver.

Inputs are file paths or ``corpus:NAME``.  Exit codes: 0 ok, 1 a check said
no (or ``not_met`` under ``--strict``), 2 parse error, 3 guard exceeded,
4 a theorem check failed inside the library.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import corpus
from .cornish import D, E, CornishAlgebra, CornishSpace, has_no_proper_substructure
from .errors import DEFAULT_GUARDS, GuardExceeded, Guards, StructureError, TheoremViolation
from .order import Poset, bits, popcount
from .primality import (
    NO,
    NOT_MET,
    UNKNOWN,
    YES,
    Verdict,
    even_cycle_witness,
    internal_sufficient,
    order_preserving_refutation,
    quasi_primal_family,
    semi_primal,
)
from .report import make_report, plain_entry, render_text, structure_entry, to_json, verdict_entry
from .structfmt import ParseError, doc_from_algebra, doc_from_space, parse, render, upset_names

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_GUARD, EXIT_THEOREM = 0, 1, 2, 3, 4


class Loaded:
    """A parsed input with the names the report should use."""

    def __init__(self, ref: str, text: str):
        self.ref = ref
        self.text = text
        self.doc = parse(text)
        self.obj = self.doc.build()
        self.names = list(self.doc.names)

    def algebra(self) -> tuple[CornishAlgebra, list[str]]:
        if isinstance(self.obj, CornishAlgebra):
            return self.obj, self.names
        if isinstance(self.obj, CornishSpace):
            a = E(self.obj)
            return a, upset_names(a, self.names)
        raise ParseError(f"{self.ref}: expected a space or an algebra, got a poset")

    def space(self) -> tuple[CornishSpace, list[str]]:
        if isinstance(self.obj, CornishSpace):
            return self.obj, self.names
        if isinstance(self.obj, CornishAlgebra):
            x = D(self.obj)
            return x, filter_names(self.obj, self.names)
        raise ParseError(f"{self.ref}: expected a space or an algebra, got a poset")


def filter_names(a: CornishAlgebra, names: list[str]) -> list[str]:
    """``F_e`` for the prime filter generated by the join-irreducible ``e``."""
    from .birkhoff import H

    _, homs = H(a.lat)
    out = []
    for chi in homs:
        gen = max(bits(chi), key=lambda e: popcount(a.lat.order.up[e]))
        out.append(f"F_{names[gen]}")
    return out


def load(ref: str) -> Loaded:
    if ref.startswith("corpus:"):
        key = ref[len("corpus:"):]
        try:
            return Loaded(ref, corpus.text(key))
        except KeyError:
            raise ParseError(f"no corpus entry {key!r}") from None
    try:
        raw = Path(ref).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {ref}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError(f"{ref} is not UTF-8") from None
    return Loaded(ref, text)


def guards_of(args) -> Guards:
    return DEFAULT_GUARDS.with_(product=args.guard_product, subuniverses=args.guard_subuniverses,
                                term_budget=args.budget_term)


def _flags(args) -> dict:
    g = guards_of(args)
    return {"guard_product": g.product, "guard_subuniverses": g.subuniverses,
            "budget_term": g.term_budget, "strict": bool(args.strict)}


def _exit_for(outcomes: list[str], strict: bool) -> int:
    if NO in outcomes:
        return EXIT_NO
    if UNKNOWN in outcomes:
        return EXIT_GUARD
    if NOT_MET in outcomes and strict:
        return EXIT_NO
    return EXIT_OK


def _emit(args, structures, results, t0) -> None:
    rep = make_report(sys.argv[1:] if args.argv is None else args.argv, _flags(args),
                      structures, results, time.perf_counter() - t0)
    sys.stdout.write(to_json(rep) + "\n" if args.json else render_text(rep))


# commands -------------------------------------------------------------------------


def cmd_dualize(args) -> int:
    item = load(args.file)
    obj = item.obj
    direction = args.direction or ("e" if isinstance(obj, (CornishSpace, Poset)) else "d")
    if direction == "e":
        if isinstance(obj, Poset):
            from .cornish import Signature

            obj = CornishSpace(Signature((), ()), obj, ())
        if not isinstance(obj, CornishSpace):
            raise ParseError("direction e needs a space or a poset")
        a = E(obj)
        doc = doc_from_algebra(a, f"E_{item.doc.name}", upset_names(a, item.names))
    else:
        if not isinstance(obj, CornishAlgebra):
            raise ParseError("direction d needs an algebra")
        x = D(obj)
        doc = doc_from_space(x, f"D_{item.doc.name}", filter_names(obj, item.names))
    sys.stdout.write(render(doc))
    return EXIT_OK


def cmd_check(args) -> int:
    t0 = time.perf_counter()
    g = guards_of(args)
    items = [load(f) for f in args.files]
    structures = [structure_entry(it.ref, it.obj, render(it.doc.canonical())) for it in items]
    results = []
    if args.what == "quasi-primal":
        algs = [it.algebra() for it in items]
        refuted = [(k, r) for k, (a, _) in enumerate(algs) if (r := order_preserving_refutation(a)) is not None]
        if refuted:
            k, r = refuted[0]
            v = Verdict(NO, route="no-minus-symbols", witness={"member": k, **r})
        else:
            v = quasi_primal_family([a for a, _ in algs], g)
        n1 = n2 = None
        if v.witness is not None and "pair" in v.witness:
            i, j = v.witness["pair"]
            n1, n2 = algs[i][1], algs[j][1]
        results.append(verdict_entry("quasi-primal", v, n1, n2))
    elif args.what == "semi-primal":
        a, names = items[0].algebra()
        results.append(verdict_entry("semi-primal", semi_primal(a, g), names, names))
    elif args.what == "simple":
        a, _ = items[0].algebra()
        from .subalg import is_simple

        simple = is_simple(a, g.congruences)
        x = a.space if a.space is not None else D(a)
        dual = x.n > 0 and has_no_proper_substructure(x)
        if simple != dual:
            raise TheoremViolation("simplicity disagrees with the dual substructure test")
        results.append(plain_entry("simple", YES if simple else NO,
                                   {"elements": a.n, "dual_points": x.n, "no_proper_substructure": dual}))
    elif args.what == "ddp":
        from .ddp import ddp_quasi_primal_family, ddp_simplicity_triple

        posets = []
        for it in items:
            if not isinstance(it.obj, Poset):
                raise ParseError(f"{it.ref}: check ddp takes posets")
            posets.append(it.obj)
            simple, triple = ddp_simplicity_triple(it.obj, g.congruences)
            results.append(plain_entry(f"ddp simple {it.ref}", YES if simple else NO,
                                       {"simple": triple[0], "regular_indecomposable": triple[1],
                                        "connected_extremal": triple[2]}))
        results.append(verdict_entry("ddp quasi-primal family", ddp_quasi_primal_family(posets, g)))
    elif args.what == "internal":
        if not args.term:
            raise ParseError("check internal needs --term")
        xs = [it.space()[0] for it in items]
        results.append(verdict_entry(f"internal {args.term}", internal_sufficient(xs, args.term)))
    _emit(args, structures, results, t0)
    return _exit_for([r["outcome"] for r in results], args.strict)


def cmd_witness(args) -> int:
    w = even_cycle_witness(args.m)
    pair = w.pair
    xnames = [f"c{i}" for i in range(args.m)]
    ynames = ["u", "v", "w"]
    out = [render(doc_from_space(pair.x1, f"C{args.m}", xnames)), render(doc_from_space(pair.y, "Y", ynames))]
    for label, phi in (("phi1", pair.phi1), ("phi2", pair.phi2)):
        out.append(f"# {label}: " + " ".join(f"{xnames[i]}->{ynames[v]}" for i, v in enumerate(phi.img)))
    out.append(f"# B(phi1, phi2) is of kind {w.kind}; members {w.subuniverse.members:#x}")
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.action == "list":
        for k in corpus.keys():
            sys.stdout.write(k + "\n")
        return EXIT_OK
    if args.action == "show":
        if not args.name:
            raise ParseError("corpus show needs a NAME")
        try:
            sys.stdout.write(corpus.text(args.name))
        except KeyError:
            raise ParseError(f"no corpus entry {args.name!r}") from None
        return EXIT_OK
    from .verify import run_all

    bad = 0
    for r in run_all():
        sys.stdout.write(r.line() + "\n")
        bad += not r.ok
    return EXIT_OK if bad == 0 else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="priestley", description="Finite Cornish algebra and space toolkit.")
    ap.add_argument("--guard-product", type=int, default=None, help="max |A1|*|A2| for brute force")
    ap.add_argument("--guard-subuniverses", type=int, default=None, help="max subuniverses collected")
    ap.add_argument("--budget-term", type=int, default=None, help="DAG-size budget for term search")
    ap.add_argument("--json", action="store_true", help="print the JSON report")
    ap.add_argument("--strict", action="store_true", help="treat 'not_met' as a failure")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dualize", help="print the dual structure")
    p.add_argument("file")
    p.add_argument("--direction", choices=("d", "e"), default=None)
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("check", help="run a check and print a report")
    p.add_argument("what", choices=("quasi-primal", "semi-primal", "simple", "ddp", "internal"))
    p.add_argument("files", nargs="+")
    p.add_argument("--term", default=None, help="word for 'internal', e.g. 'f f g'")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("witness", help="build a witness")
    p.add_argument("kind", choices=("even-cycle",))
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("corpus", help="built-in structures")
    p.add_argument("action", choices=("verify", "list", "show"))
    p.add_argument("name", nargs="?")
    p.set_defaults(func=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args.argv = argv
    if args.command == "check" and args.what in ("semi-primal", "simple") and len(args.files) != 1:
        ap.error(f"check {args.what} takes one file")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except TheoremViolation as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except StructureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
