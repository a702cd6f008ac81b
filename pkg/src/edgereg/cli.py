"""``edgereg`` command line.

Exit codes: 0 ok, 1 disagreement or failed claim, 2 usage or parse error,
3 budget exceeded or search indeterminate.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from typing import Optional

from . import __version__
from .betti import (
    Budget,
    BudgetExceeded,
    dichotomy_check,
    hochster_table,
    matching_bounds_check,
    reg_interval,
    splitting_check,
)
from .graph import Graph, GraphFormatError, bits, complement, encode_graph6, parse_edge_list, parse_graph6, popcount
from .homology import FieldSpec, reduced_betti
from .ideal import SimplicialComplex, SquarefreeMonomialIdeal, edge_ideal, stanley_reisner_complex
from .surfaces import (
    PureTwoComplex,
    SearchCapExceeded,
    SearchCaps,
    check_closed_surface,
    find_induced_surface,
    find_surface_subcomplex,
    theorem_host,
)
from . import verify as V

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("reg", "betti", "homology", "surface", "find-surface", "verify",
            "corpus", "bounds", "splitting", "gadget")


class UsageError(Exception):
    pass


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(kind):
    def conv(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="*", help="input files (default: standard input)")
    common.add_argument("--field", type=_field, default=FieldSpec("f0"),
                        help="f2, f0 (char-0 surrogate), f0exact or fp:<prime> (default f0)")
    common.add_argument("--format", choices=("graph6", "edges", "ideal", "complex"), default="graph6",
                        help="input format (default graph6, one graph per line)")
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")
    common.add_argument("--max-subsets", type=_positive(int), help="Hochster subset budget")
    common.add_argument("--time-limit", type=_positive(float), help="Hochster time budget in seconds")
    common.add_argument("--max-nodes", type=_positive(int), help="surface search node cap")
    common.add_argument("--threads", type=_positive(int), default=1, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="edgereg", description="Regularity of edge ideals and surfaces in complements.")
    p.add_argument("--version", action="version", version=f"edgereg {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    sub.add_parser("reg", parents=[common], help="regularity and projective dimension of R/I")
    sub.add_parser("betti", parents=[common], help="graded Betti table of R/I")
    sub.add_parser("homology", parents=[common], help="reduced homology of a complex (graphs: independence complex)")
    sub.add_parser("surface", parents=[common], help="recognise a pure 2-complex as a closed surface")
    fs = sub.add_parser("find-surface", parents=[common], help="search the complement's clique complex for a surface")
    fs.add_argument("--orientable", action="store_true")
    fs.add_argument("--mode", choices=("subcomplex", "induced"), default="subcomplex")
    fs.add_argument("--exclude-tetrahedra", action="store_true")
    vp = sub.add_parser("verify", parents=[common], help="compare the surface criterion with Hochster regularity")
    vp.add_argument("--exact", action="store_true", help="also recompute char-0 regularity exactly")
    vp.add_argument("--certificates", metavar="DIR", help="write a JSON bundle per disagreement")
    cp = sub.add_parser("corpus", parents=[common], help="run verify over graph6 files")
    cp.add_argument("--min-n", type=int)
    cp.add_argument("--max-n", type=int)
    cp.add_argument("--min-reg", type=int)
    cp.add_argument("--full", action="store_true", help="include every verdict")
    cp.add_argument("--certificates", metavar="DIR")
    sub.add_parser("bounds", parents=[common], help="matching bounds and the recursive regularity interval")
    sp = sub.add_parser("splitting", parents=[common], help="x-partition Betti splitting and deletion/link dichotomy")
    sp.add_argument("--var", type=int, default=0, help="splitting variable (default 0)")
    gp = sub.add_parser("gadget", parents=[common], help="replay the reduction gadgets on a vertex-minimal graph")
    gp.add_argument("--pair", help="a,b (default: lexicographically first valid pair)")
    return p


# --- input ---------------------------------------------------------------------

def _read(args) -> str:
    if not args.input:
        return sys.stdin.read()
    parts = []
    for path in args.input:
        with open(path, encoding="ascii", errors="replace") as fh:
            parts.append(fh.read())
    return "".join(p if p.endswith("\n") or not p else p + "\n" for p in parts)


def _graphs(text: str, fmt: str) -> list[Graph]:
    if fmt == "graph6":
        out = []
        for lineno, line in enumerate(text.splitlines(), 1):
            if line.strip():
                try:
                    out.append(parse_graph6(line))
                except GraphFormatError as exc:
                    raise GraphFormatError(f"line {lineno}: {exc}") from None
        if not out:
            raise GraphFormatError("no graph6 lines in input")
        return out
    if fmt == "edges":
        return [parse_edge_list(text)]
    raise UsageError(f"this command needs a graph (--format graph6 or edges), not {fmt}")


def _ideals(text: str, fmt: str) -> list[tuple[str, SquarefreeMonomialIdeal]]:
    if fmt == "ideal":
        return [("ideal", SquarefreeMonomialIdeal.from_text(text))]
    if fmt == "complex":
        from .ideal import ideal_of_complex

        return [("complex", ideal_of_complex(SimplicialComplex.from_text(text)))]
    return [(encode_graph6(g), edge_ideal(g)) for g in _graphs(text, fmt)]


def _budget(args) -> Optional[Budget]:
    if args.max_subsets is None and args.time_limit is None:
        return None
    return Budget(args.max_subsets, args.time_limit)


def _caps(args) -> SearchCaps:
    return SearchCaps(max_nodes=args.max_nodes) if args.max_nodes else SearchCaps()


def _emit(args, doc: dict, text: str, timings: Optional[dict] = None) -> None:
    if args.json:
        if args.timings and timings is not None:
            doc = dict(doc, timings=timings)
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text.rstrip("\n"))


# --- commands ----------------------------------------------------------------------

def cmd_reg(args, text):
    rows, t0 = [], time.perf_counter()
    for name, ideal in _ideals(text, args.format):
        t = hochster_table(ideal, args.field, budget=_budget(args), workers=args.threads)
        rows.append({"input": name, "regularity": t.regularity(), "projective_dimension": t.projective_dimension()})
    doc = {"field": str(args.field), "convention": "R/I", "results": rows}
    _emit(args, doc, "\n".join(str(r["regularity"]) for r in rows), {"total": time.perf_counter() - t0})
    return EXIT_OK


def cmd_betti(args, text):
    tables, t0 = [], time.perf_counter()
    for name, ideal in _ideals(text, args.format):
        tables.append((name, hochster_table(ideal, args.field, budget=_budget(args), workers=args.threads)))
    doc = {"field": str(args.field), "results": [dict(t.to_json(), input=n) for n, t in tables]}
    txt = "\n".join(f"{n}\n{t.to_text()}" for n, t in tables)
    _emit(args, doc, txt, {"total": time.perf_counter() - t0})
    return EXIT_OK


def cmd_homology(args, text):
    if args.format == "complex":
        items = [("complex", SimplicialComplex.from_text(text))]
    elif args.format == "ideal":
        items = [("ideal", stanley_reisner_complex(SquarefreeMonomialIdeal.from_text(text)))]
    else:
        # the Stanley-Reisner complex of I(G): independent sets of G
        items = [(encode_graph6(g), stanley_reisner_complex(edge_ideal(g))) for g in _graphs(text, args.format)]
    rows = []
    for name, d in items:
        rows.append({"input": name, "reduced_betti": reduced_betti(d, args.field), "first_degree": -1})
    doc = {"field": str(args.field), "results": rows}
    _emit(args, doc, "\n".join(" ".join(map(str, r["reduced_betti"])) for r in rows))
    return EXIT_OK


def _two_complex(text: str, fmt: str) -> PureTwoComplex:
    if fmt != "complex":
        raise UsageError("surface reads a list of triangles (--format complex)")
    d = SimplicialComplex.from_text(text)
    bad = [f for f in d.facets if popcount(f) != 3]
    if bad:
        raise UsageError(f"not a pure 2-complex: facet {bits(bad[0])}")
    return PureTwoComplex(d.nvars, [tuple(bits(f)) for f in d.facets])


def cmd_surface(args, text):
    t = _two_complex(text, args.format)
    cert, reason = check_closed_surface(t)
    doc = {"surface": cert is not None, "reason": reason,
           "certificate": cert.to_json() if cert else None}
    if cert is not None:
        doc["homology"] = reduced_betti(SimplicialComplex(t.nverts, [sum(1 << v for v in tri) for tri in t.triangles]), args.field)
        txt = f"{cert.label} (euler {cert.euler}, genus {cert.genus})"
    else:
        txt = f"not a closed surface: {reason}"
    _emit(args, doc, txt)
    return EXIT_OK


def cmd_find_surface(args, text):
    rows, code = [], EXIT_OK
    for g in _graphs(text, args.format):
        try:
            if args.mode == "induced":
                cert = find_induced_surface(complement(g), args.orientable)
            else:
                cert = find_surface_subcomplex(theorem_host(g), args.orientable, _caps(args),
                                               exclude_tetrahedra=args.exclude_tetrahedra)
            rows.append({"graph": encode_graph6(g), "found": cert is not None,
                         "certificate": cert.to_json() if cert else None})
        except SearchCapExceeded as exc:
            rows.append({"graph": encode_graph6(g), "found": None, "indeterminate": str(exc)})
            code = EXIT_BUDGET
    doc = {"mode": args.mode, "orientable": args.orientable, "results": rows}
    txt = "\n".join(f"{r['graph']}\t" + ("indeterminate" if r["found"] is None else
                    r["certificate"]["label"] if r["found"] else "none") for r in rows)
    _emit(args, doc, txt)
    return code


def _write_certificates(verdicts, directory, caps):
    os.makedirs(directory, exist_ok=True)
    for v in verdicts:
        safe = "".join(c if c.isalnum() else "_" for c in v.graph)
        with open(os.path.join(directory, f"counterexample_{safe}.json"), "w") as fh:
            fh.write(V.certificate_bundle(v, caps) + "\n")


def _verdict_line(v) -> str:
    cert = v.certificate.label if v.certificate else "-"
    return (f"{v.graph}\treg_f0={v.reg_f0} reg_f2={v.reg_f2} orientable={v.predicate_orientable} "
            f"any={v.predicate_any_surface} agree_f0={v.agree_f0} agree_f2={v.agree_f2} surface={cert}")


def cmd_verify(args, text):
    caps = _caps(args)
    verdicts = [V.verify_main(g, caps, exact=args.exact) for g in _graphs(text, args.format)]
    bad = [v for v in verdicts if not v.indeterminate and not v.agrees]
    if args.exact:
        bad += [v for v in verdicts if v.reg_f0_exact is not None and v.reg_f0_exact != v.reg_f0 and v not in bad]
    if bad and args.certificates:
        _write_certificates(bad, args.certificates, caps)
    doc = {"results": [v.to_json(timings=args.timings) for v in verdicts],
           "disagreements": [v.graph for v in bad]}
    _emit(args, doc, "\n".join(_verdict_line(v) for v in verdicts))
    if bad:
        return EXIT_DISAGREE
    return EXIT_BUDGET if any(v.indeterminate for v in verdicts) else EXIT_OK


def cmd_corpus(args, text):
    if args.format != "graph6":
        raise UsageError("corpus reads graph6 lines")
    caps = _caps(args)
    filters = V.CorpusFilters(args.min_n, args.max_n, args.min_reg)
    t0 = time.perf_counter()
    report = V.corpus_run(text.splitlines(), caps, filters, workers=args.threads)
    bad = [v for v in report["verdicts"] if v.graph in set(report["disagreements"])]
    if bad and args.certificates:
        _write_certificates(bad, args.certificates, caps)
    doc = V.summary_json(report)
    if args.full:
        doc["verdicts"] = [v.to_json(timings=args.timings) for v in report["verdicts"]]
    lit = report["literal"]
    txt = (f"graphs: {report['count']}\ndisagreements: {len(report['disagreements'])}\n"
           f"indeterminates: {len(report['indeterminates'])}\nparse errors: {len(report['errors'])}\n"
           f"literal subcomplex reading, disagreements: {lit['strict_disagreements']} "
           f"(without tetrahedra: {lit['no_tetrahedron_disagreements']})\n"
           f"vertex-minimal reg>=3: " + ", ".join(f"{m['graph']} (im {m['im']})" for m in report["minimal_reg3"]))
    for e in report["errors"]:
        print(f"line {e['line']}: {e['error']}", file=sys.stderr)
    _emit(args, doc, txt, {"total": time.perf_counter() - t0})
    if report["disagreements"]:
        return EXIT_DISAGREE
    return EXIT_BUDGET if report["indeterminates"] else EXIT_OK


def cmd_bounds(args, text):
    rows, code = [], EXIT_OK
    for g in _graphs(text, args.format):
        mb = matching_bounds_check(g, args.field)
        iv = reg_interval(g, args.field)
        ok = mb.ok and iv.lo <= mb.reg <= iv.hi
        rows.append({"graph": encode_graph6(g), "im": mb.im, "reg": mb.reg, "mat": mb.mat,
                     "interval": [iv.lo, iv.hi], "truncated": iv.truncated, "ok": ok})
        if not ok:
            code = EXIT_DISAGREE
    doc = {"field": str(args.field), "results": rows}
    txt = "\n".join(f"{r['graph']}\tim={r['im']} <= reg={r['reg']} <= mat={r['mat']}; "
                    f"interval [{r['interval'][0]}, {r['interval'][1]}]" for r in rows)
    _emit(args, doc, txt)
    return code


def cmd_splitting(args, text):
    rows = []
    for name, ideal in _ideals(text, args.format):
        if not 0 <= args.var < ideal.nvars:
            raise UsageError(f"--var {args.var} outside 0..{ideal.nvars - 1}")
        s = splitting_check(ideal, args.var, args.field)
        d = dichotomy_check(ideal, args.var, args.field)
        rows.append({
            "input": name, "var": args.var,
            "splitting": {"degenerate": s.degenerate, "is_splitting": s.is_splitting,
                          "linear_iprime": s.linear_iprime, "reg_formula_ok": s.reg_formula_ok,
                          "pd_formula_ok": s.pd_formula_ok,
                          "identity_failures": [list(f) for f in s.identity_failures],
                          "tables": {k: t.to_json() for k, t in s.tables.items()}},
            "dichotomy": {"reg": d.reg, "reg_deletion": d.reg_deletion, "reg_link": d.reg_link,
                          "verdict": d.verdict, "bound_ok": d.bound_ok, "degenerate": d.degenerate},
        })
    doc = {"field": str(args.field), "results": rows}
    txt = "\n".join(f"{r['input']}\tsplitting={r['splitting']['is_splitting']} "
                    f"(degenerate={r['splitting']['degenerate']}) dichotomy={r['dichotomy']['verdict']}"
                    for r in rows)
    _emit(args, doc, txt)
    return EXIT_OK


def cmd_gadget(args, text):
    graphs = _graphs(text, args.format)
    if len(graphs) != 1:
        raise UsageError("gadget takes exactly one graph")
    g = graphs[0]
    if not V.is_vertex_minimal(g, args.field):
        raise UsageError("gadget needs a vertex-minimal graph with reg >= 3")
    doc = {"graph": encode_graph6(g), "anticycle_links": V.anticycle_link_check(g, args.field)}
    if args.pair:
        try:
            a, b = (int(x) for x in args.pair.split(","))
        except ValueError:
            raise UsageError(f"--pair expects a,b, got {args.pair!r}") from None
        pair = (a, b)
    else:
        pair = V.common_neighbor_pair(g)
    doc["pair"] = list(pair) if pair else None
    doc["steps"] = V.gadget_step_checks(V.build_gadgets(g, *pair), args.field) if pair else None
    ok = doc["anticycle_links"]["ok"] and (doc["steps"] is None or doc["steps"]["ok"])
    lines = [f"anticycle links: {'ok' if doc['anticycle_links']['ok'] else 'FAILED'}"]
    if pair is None:
        lines.append("no non-adjacent pair with a common neighbour; gadgets not applicable")
    else:
        st = doc["steps"]
        for k, v in st.items():
            if k.startswith("step") or k.startswith("case4b"):
                lines.append(f"{k}: {v}")
        lines.append(f"case: {st['case']}")
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK if ok else EXIT_DISAGREE


HANDLERS = {
    "reg": cmd_reg, "betti": cmd_betti, "homology": cmd_homology, "surface": cmd_surface,
    "find-surface": cmd_find_surface, "verify": cmd_verify, "corpus": cmd_corpus,
    "bounds": cmd_bounds, "splitting": cmd_splitting, "gadget": cmd_gadget,
}


def parse_args(argv):
    return build_parser().parse_args(argv)


def run(argv=None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        text = _read(args)
        return HANDLERS[args.command](args, text)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SearchCapExceeded as exc:
        print(f"search cap exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, GraphFormatError, ValueError, OSError) as exc:
        print(f"edgereg {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
