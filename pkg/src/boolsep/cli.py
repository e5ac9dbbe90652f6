"""Command-line front end.

Every command prints one JSON document on stdout.  Exit status is 0 on
success, 1 when a checked inequality or self-test fails, 2 on usage errors
(bad arguments, malformed truth tables, size caps).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import approx, bounds, core, measures, poly
from .rational import fmt_q, parse_q

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _tables(args) -> list[core.TruthTable]:
    lines: list[str] = list(args.tt or [])
    if getattr(args, "tt_file", None):
        path = Path(args.tt_file)
        if not path.exists():
            raise UsageError(f"no such file: {path}")
        lines += [ln for ln in path.read_text().splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise UsageError("give a truth table with --tt or --tt-file")
    return [core.parse_tt(ln) for ln in lines]


def _one_table(args) -> core.TruthTable:
    tables = _tables(args)
    if len(tables) != 1:
        raise UsageError("this command takes exactly one truth table")
    return tables[0]


def _add_tt(p: argparse.ArgumentParser, many: bool = False) -> None:
    p.add_argument("--tt", action="append", metavar='"n=<int> tt=<hex>"', help="inline truth table")
    if many:
        p.add_argument("--tt-file", metavar="PATH", help="file with one truth table per line")


def cmd_analyze(args) -> tuple[object, bool]:
    out = []
    ok = True
    for f in _tables(args):
        rep = bounds.verify_separations(f, with_approx=args.approx)
        doc = rep.to_json()
        doc["symmetrization"] = poly.symmetrize(f).to_json()
        ok &= rep.ok
        out.append(doc)
    return (out[0] if len(out) == 1 else out), ok


def cmd_sweep(args):
    summary = bounds.sweep(args.n, with_approx=args.approx)
    return summary.to_json(), summary.ok


def cmd_symmetrize(args):
    f = _one_table(args)
    doc = {"tt": str(f), **poly.symmetrize(f).to_json()}
    return doc, True


def cmd_approx_degree(args):
    f = _one_table(args)
    eps = parse_q(args.eps)
    if args.symmetric:
        res = approx.approx_degree_symmetric(f, eps)
    else:
        res = approx.approx_degree(f, eps)
    return {"tt": str(f), "route": "symmetric" if args.symmetric else "general", **res.to_json()}, True


def cmd_nae(args):
    if args.c is not None:
        c = parse_q(args.c)
    else:
        c = approx.optimal_c(args.n)[0] + parse_q(args.margin)
    ap = approx.nae_approximant(args.n, c)
    return ap.to_json(), ap.max_deviation <= Fraction(1, 3)


def cmd_lp_uniqueness(args):
    rec = bounds.uniqueness_lp()
    doc = rec.to_json()
    if args.dump:
        doc["program"] = bounds._quartic_program().dump().splitlines()
    return doc, rec.ok


def cmd_threshold(args):
    q = bounds.ThresholdQuery(args.k, parse_q(args.c), args.variant)
    x = bounds.threshold(q)
    doc = {"k": q.k, "c": fmt_q(q.c), "variant": q.variant, "multiplier": fmt_q(q.multiplier), "x_star": x}
    known = bounds.closed_form(q)
    if known:
        doc["closed_form"] = known[0]
        doc["closed_form_approx"] = known[1]
    return doc, True


def cmd_compose(args):
    outer = core.parse_tt(args.outer)
    inner = core.parse_tt(args.inner)
    g = core.compose(outer, inner)
    return {"outer": str(outer), "inner": str(inner), "tt": str(g)}, True


def cmd_reduce(args):
    f = _one_table(args)
    g, prov = measures.reduce_fully_sensitive(f)
    doc = {
        "tt": str(f),
        "reduced": str(g),
        "provenance": prov.to_json(),
        "fully_sensitive_at_zero": measures.is_fully_sensitive_at_zero(g),
        "degree": poly.degree(f),
        "reduced_degree": poly.degree(g),
    }
    ok = doc["fully_sensitive_at_zero"] and doc["reduced_degree"] <= doc["degree"]
    return doc, ok


def cmd_extremal_quartic(args):
    rec = bounds.extremal_quartic()
    return rec.to_json(), rec.ok


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boolsep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="all measures and separation verdicts")
    _add_tt(p, many=True)
    p.add_argument("--approx", action="store_true", help="also compute deg_1/3 (n <= 6)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="exhaustive verdicts over all functions on n variables")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--approx", action="store_true", help="include deg_1/3 verdicts (n <= 3)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("symmetrize", help="symmetrization polynomial of a function")
    _add_tt(p)
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("approx-degree", help="epsilon-approximate degree via exact LP")
    _add_tt(p)
    p.add_argument("--eps", default="1/3")
    p.add_argument("--symmetric", action="store_true", help="univariate fast path for symmetric functions")
    p.set_defaults(func=cmd_approx_degree)

    p = sub.add_parser("nae", help="Chebyshev 1/3-approximant of NAE_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", help="constant c (default: smallest admissible c plus --margin)")
    p.add_argument("--margin", default="1/100")
    p.set_defaults(func=cmd_nae)

    p = sub.add_parser("lp-uniqueness", help="LP uniqueness of the degree-4 symmetrization")
    p.add_argument("--dump", action="store_true", help="include the program rows")
    p.set_defaults(func=cmd_lp_uniqueness)

    p = sub.add_parser("threshold", help="Markov/Ehlich-Zeller threshold on d^2/n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--variant", choices=("exact", "approximate"), default="exact")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("compose", help="block composition outer(inner, ..., inner)")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("reduce", help="reduce to a function fully sensitive at 0")
    _add_tt(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("extremal-quartic", help="self-check of the extremal degree-4 polynomial")
    p.set_defaults(func=cmd_extremal_quartic)
    return parser


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        doc, ok = args.func(args)
    except (UsageError, ValueError, TypeError) as exc:
        print(f"boolsep {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    json.dump(doc, stdout, indent=2)
    stdout.write("\n")
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
