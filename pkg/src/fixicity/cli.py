"""Command-line front end.

Exit codes: 0 success, 1 negative answer (``iso``), 2 usage or parse error,
3 a non-conforming verdict, 4 a capped enumeration under ``--strict-cap``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Sequence

from . import __version__
from .autsearch import are_isomorphic, automorphism_group, find_isomorphism
from .corpus import CorpusSpec
from .families import SpecError, derive_merge_matching, merge_matching, parse_family_spec, vec_px
from .graph import Digraph, FormatError, Graph, digraph6_encode, graph6_decode, graph6_encode
from .perm import DEFAULT_CAP, PermGroup, schreier_sims
from .symmetry import SCHEMA, analyze, classify_family, fixicity, normal_quotient

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_COUNTER, EXIT_CAPPED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _read_inputs(items: Sequence[str]) -> list[tuple[str, Graph]]:
    """Family specs, graph6 strings, files of graph6 lines, or ``-`` for stdin."""
    if not items:
        items = ["-"]
    out = []
    for item in items:
        if item == "-" or os.path.isfile(item):
            src = sys.stdin if item == "-" else open(item, encoding="ascii")
            with src if item != "-" else io.nullcontext(src):
                for lineno, raw in enumerate(src, start=1):
                    line = raw.strip()
                    if not line or line.startswith("#"):
                        continue
                    out.extend(_read_token(line, f"{item}:{lineno}"))
        else:
            out.extend(_read_token(item, item))
    return out


def _read_token(tok: str, where: str) -> list[tuple[str, Graph]]:
    # graph6 never uses ':', so a colon marks a family spec
    if ":" in tok:
        out = []
        for m in parse_family_spec(tok):
            g = m.build()
            if isinstance(g, Digraph):
                raise UsageError(f"{m.name} is a digraph; this command needs graphs")
            out.append((m.name, g))
        return out
    try:
        return [(tok, graph6_decode(tok))]
    except FormatError as e:
        raise FormatError(f"{where}: {e}") from None


def _single(tok: str) -> tuple[str, Graph]:
    gs = _read_inputs([tok])
    if len(gs) != 1:
        raise UsageError(f"{tok!r} names {len(gs)} graphs, expected one")
    return gs[0]


# -- output helpers ----------------------------------------------------------------

_CSV_FIELDS = ["graph", "n", "valency", "aut_order", "fixicity", "fpr_max", "exceeds_third", "classified_as", "conforms", "capped"]


def _emit_reports(reports: list[dict], fmt: str, out, summary: dict | None = None) -> None:
    if fmt == "json":
        if summary is None:
            for r in reports:
                out.write(_dump(r) + "\n")
        else:
            out.write(_dump({"schema": SCHEMA, "graphs": reports, "summary": summary}) + "\n")
    elif fmt == "csv":
        w = csv.DictWriter(out, fieldnames=_CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in reports:
            w.writerow(r)
        if summary is not None:
            out.write("# " + " ".join(f"{k}={v}" for k, v in summary.items()) + "\n")
    else:
        header = f"{'graph':<18}{'n':>6}{'val':>5}{'|Aut|':>10}{'fix':>6}  {'fpr':<8}{'class':<18}{'ok':<4}"
        out.write(header + "\n")
        for r in reports:
            out.write(
                f"{r['graph']:<18}{r['n']:>6}{str(r['valency']):>5}{r['aut_order']:>10}{r['fixicity']:>6}  "
                f"{r['fpr_max']:<8}{str(r['classified_as']):<18}{'yes' if r['conforms'] else 'NO':<4}"
                + ("  capped" if r["capped"] else "")
                + "\n"
            )
        if summary is not None:
            out.write(" ".join(f"{k}={v}" for k, v in summary.items()) + "\n")


def _exit_for(reports: list[dict], strict_cap: bool) -> int:
    if any(not r["conforms"] for r in reports):
        return EXIT_COUNTER
    if strict_cap and any(r["capped"] for r in reports):
        return EXIT_CAPPED
    return EXIT_OK


# -- commands ----------------------------------------------------------------------


def cmd_gen(args) -> int:
    labels = {}
    for spec in args.spec:
        for m in parse_family_spec(spec):
            g = m.build()
            print(digraph6_encode(g) if isinstance(g, Digraph) else graph6_encode(g))
            if g.labels is not None:
                labels[m.name] = list(g.labels)
    if args.labels:
        text = _dump(labels)
        if args.labels == "-":
            print(text, file=sys.stderr)
        else:
            with open(args.labels, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
    return EXIT_OK


def cmd_analyze(args) -> int:
    reports = [analyze(g, name, args.cap).to_json() for name, g in _read_inputs(args.input)]
    _emit_reports(reports, args.format, sys.stdout)
    return _exit_for(reports, args.strict_cap)


def cmd_scan(args) -> int:
    if args.corpus:
        with open(args.corpus, encoding="utf-8") as fh:
            spec = CorpusSpec.from_lines(fh)
    elif args.only:
        spec = CorpusSpec(tuple(args.only))
    else:
        spec = CorpusSpec()
    entries = spec.expand()
    reports = [analyze(e.graph, e.name, args.cap, quofix_trials=args.quofix).to_json() for e in entries]
    summary = {
        "graphs": len(reports),
        "conforming": sum(r["conforms"] for r in reports),
        "non_conforming": sum(not r["conforms"] for r in reports),
        "capped": sum(r["capped"] for r in reports),
        "duplicates_dropped": len(spec.duplicates),
    }
    _emit_reports(reports, args.format, sys.stdout, summary)
    return _exit_for(reports, args.strict_cap)


def cmd_iso(args) -> int:
    (_, a), (_, b) = _single(args.a), _single(args.b)
    ok = are_isomorphic(a, b)
    print("true" if ok else "false")
    if ok and args.map:
        print(_dump(find_isomorphism(a, b).to_json()))
    return EXIT_OK if ok else EXIT_NO


def _resolve_subgroup(g: Graph, name: str) -> PermGroup:
    key = name.strip().lower()
    if key == "aut":
        return automorphism_group(g)[0]
    if key == "trivial":
        return schreier_sims([], degree=g.n)
    if key in ("k", "h", "h+", "hplus"):
        cls = classify_family(g)
        if cls is None or not cls.startswith("px:"):
            raise UsageError(f"subgroup {name!r} needs a Praeger-Xu graph; this graph is {cls or 'unrecognised'}")
        r, s = map(int, cls.partition(":")[2].split(","))
        b = vec_px(r, s)
        phi = find_isomorphism(b.graph, g)
        group = {"k": b.K, "h": b.H, "h+": b.Hplus, "hplus": b.Hplus}[key]
        return schreier_sims([t.conjugate(phi) for t in group.generators], degree=g.n, order=group.order)
    raise UsageError(f"unknown subgroup {name!r}; expected K, H, H+, Aut or trivial")


def cmd_quotient(args) -> int:
    _, g = _single(args.graph)
    N = _resolve_subgroup(g, args.subgroup)
    q, block_of = normal_quotient(g, N)
    print(graph6_encode(q))
    print(_dump({"blocks": block_of, "valency": q.valency()}))
    return EXIT_OK


def cmd_fixicity(args) -> int:
    name, g = _single(args.graph)
    rep = fixicity(g, cap=args.cap, full=args.full, name=name)
    if args.format == "text":
        print(f"{name}: fixicity {rep.fixicity} of {rep.n} (fpr {rep.fpr_max}), |Aut| = {rep.group_order}" + (" [capped]" if rep.capped else ""))
        if rep.witness is not None:
            print(f"witness {rep.witness!r}")
    else:
        print(_dump({"schema": SCHEMA, **rep.to_json()}))
    if args.strict_cap and rep.capped:
        return EXIT_CAPPED
    return EXIT_OK


def cmd_merge(args) -> int:
    for name, g in _read_inputs(args.input):
        m = derive_merge_matching(g, automorphism_group(g)[0])
        print(graph6_encode(merge_matching(g, m)))
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fixicity", description="Fixicity and symmetry analysis for small vertex-transitive graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt_default="json"):
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element enumeration cap (default %(default)s)")
        sp.add_argument("--format", choices=("json", "csv", "text"), default=fmt_default)
        sp.add_argument("--strict-cap", action="store_true", help="exit 4 when any enumeration hits the cap")

    sp = sub.add_parser("gen", help="print graph6 (digraph6 for vpx) for family specs")
    sp.add_argument("spec", nargs="+", help="e.g. px:5,2 or spx:3..5,1 or sporadic:psi3")
    sp.add_argument("--labels", nargs="?", const="-", metavar="FILE", help="write vertex labels as JSON to FILE (stderr if omitted)")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("analyze", help="full report for each input graph")
    sp.add_argument("input", nargs="*", help="graph6 strings, family specs, files, or - for stdin")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("scan", help="verify the classification verdicts over a corpus")
    sp.add_argument("--corpus", metavar="FILE", help="corpus file: one family spec or graph6 string per line")
    sp.add_argument("--only", nargs="+", metavar="SPEC", help="scan only these family specs")
    sp.add_argument("--quofix", type=int, default=2, help="random quotient checks per graph (default %(default)s)")
    common(sp, "text")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("iso", help="isomorphism test; exit 1 when not isomorphic")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--map", action="store_true", help="also print an isomorphism")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("quotient", help="normal quotient by K, H, H+, Aut or trivial")
    sp.add_argument("graph")
    sp.add_argument("subgroup")
    sp.set_defaults(func=cmd_quotient)

    sp = sub.add_parser("fixicity", help="largest fixed-point count of a non-identity automorphism")
    sp.add_argument("graph")
    sp.add_argument("--full", action="store_true", help="scan every element instead of prime-order ones")
    common(sp)
    sp.set_defaults(func=cmd_fixicity)

    sp = sub.add_parser("merge", help="contract the invariant matching of cubic vertex- but not arc-transitive graphs")
    sp.add_argument("input", nargs="*")
    sp.set_defaults(func=cmd_merge)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        return args.func(args)
    except SpecError as e:
        print(f"error: {e} (offending token: {e.token!r})", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, UsageError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
