"""Command-line entry point: census, verify, formulas, dump-code.

Exit codes: 0 pass, 1 verification failure, 2 budget exceeded, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import __version__
from . import closedforms as cf
from .codes import build_code, dual_code
from .engine import THREADS_ENV
from .enumerators import DEFAULT_PAIR_BUDGET, _class_total
from .gf import FieldError, make_field
from .plane import BudgetError
from .verification import SUITES, census_case, compare_census, run_suite

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3

# class pairs above this need --extended (the q=4 cubic-cubic census is about 6e10)
EXTENDED_WORK = 10 ** 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _qlist(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(args, payload, csv_rows=None, text=None):
    out = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        if args.format == "json":
            json.dump(payload, out, indent=2, sort_keys=False)
            out.write("\n")
        elif args.format == "csv":
            w = csv.writer(out, lineterminator="\n")
            for row in csv_rows:
                w.writerow(row)
        else:
            out.write(text)
    finally:
        if args.out:
            out.close()


def _report_text(rep, timing=False):
    lines = [f"suite {rep.suite}: {'pass' if rep.ok else 'FAIL'} ({len(rep.rows)} checks)"]
    for r in rep.rows:
        j = r.to_json()
        t = f"  [{r.elapsed_ms} ms]" if timing else ""
        lines.append(f"{j['verdict']:4}  q={j['q']:>2}  {j['check']}: {j['formula']} = {j['brute']}{t}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- subcommands

def cmd_census(args):
    f = make_field(args.q)
    for deg in (args.d, args.e):
        if deg not in (1, 2, 3):
            raise UsageError("degrees must be 1, 2 or 3")
    if args.affine and not (args.d == args.e == 2):
        raise UsageError("--affine is only defined for two conics")
    kind = "affine" if args.affine else "projective"
    try:
        c1 = build_code(f, args.d, kind)
        c2 = build_code(f, args.e, kind)
    except ValueError as exc:
        raise UsageError(str(exc))
    n1, n2 = _class_total(c1), _class_total(c2)
    work = n1 * (n1 - 1) // 2 if args.d == args.e else n1 * n2
    budget = args.budget or DEFAULT_PAIR_BUDGET
    if work > budget:
        raise BudgetError(f"{work} class pairs needed; budget is {budget}")
    if work > EXTENDED_WORK and not args.extended:
        raise BudgetError(f"{work} class pairs needed; runs above {EXTENDED_WORK} require --extended")
    from .enumerators import pair_census
    table = pair_census(f, args.d, args.e, affine=args.affine, threads=args.threads, budget=budget)
    rep = compare_census(table)
    payload = {"version": __version__, "census": table.to_json(), "comparison": rep.to_json(args.timing)}
    case = census_case(args.d, args.e, args.affine)
    rows = [["k", "free", "common", "proportional", "zero", "formula_c_k", "verdict"]]
    coeffs = cf.registered_coefficients(case, args.q) if case and args.q >= cf.case_qmin(case) else []
    lines = [f"census d={args.d} e={args.e} q={args.q}{' affine' if args.affine else ''}: "
             f"total {table.total()} (expected {table.expected_total()})"]
    for k in range(table.n_points + 1):
        vals = (table.free[k], table.common[k], table.proportional[k], table.zero[k])
        if not any(vals) and k >= len(coeffs):
            continue
        fk = coeffs[k] if k < len(coeffs) else ""
        verdict = ("pass" if fk == table.free[k] else "fail") if k < len(coeffs) else ""
        rows.append([str(k)] + [str(v) for v in vals] + [str(fk), verdict])
        lines.append(f"k={k:>3}  free={vals[0]}  common={vals[1]}  proportional={vals[2]}  zero={vals[3]}"
                     + (f"  c_{k}={fk} {verdict}" if verdict else ""))
    if rep.rows:
        lines.append(_report_text(rep, args.timing).rstrip("\n"))
    _emit(args, payload, rows, "\n".join(lines) + "\n")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args):
    suites = SUITES if args.suite == "all" else (args.suite,)
    rep = None
    from .verification import Report
    rep = Report(args.suite)
    for s in suites:
        rep.extend(run_suite(s, args.q, args.threads))
    payload = rep.to_json(args.timing)
    _emit(args, payload, list(rep.csv_rows()), _report_text(rep, args.timing))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_formulas(args):
    if args.action == "list":
        items = cf.list_formulas()
        payload = {"version": __version__, "count": str(len(items)), "formulas": [fm.to_json() for fm in items]}
        rows = [["id", "qmin", "anchor"]] + [[fm.id, str(fm.qmin), fm.anchor] for fm in items]
        text = "".join(f"{fm.id:28} q>={fm.qmin}  {fm.anchor}\n" for fm in items)
        _emit(args, payload, rows, text)
        return EXIT_OK
    if args.id is None or args.q is None:
        raise UsageError("formulas eval needs --id and --q")
    try:
        value = cf.eval_formula(args.id, args.q, allow_out_of_range=args.allow_out_of_range)
    except cf.FormulaError as exc:
        raise UsageError(exc.args[0])
    except cf.FormulaRangeError as exc:
        raise UsageError(str(exc))
    payload = {"id": args.id, "q": str(args.q), "value": str(value)}
    _emit(args, payload, [["id", "q", "value"], [args.id, str(args.q), str(value)]], f"{value}\n")
    return EXIT_OK


def cmd_dump_code(args):
    f = make_field(args.q)
    try:
        c = build_code(f, args.d, "affine" if args.affine else "projective")
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.dual:
        c = dual_code(c)
    payload = {"version": __version__, "field": {k: str(v) if not isinstance(v, list) else [str(x) for x in v]
                                                 for k, v in f.fingerprint().items()},
               "code": c.to_json()}
    rows = [[f"col{j}" for j in range(c.n)]] + [[str(x) for x in row] for row in c.generator.tolist()]
    text = f"{c.name}: n={c.n} k={c.k}\n" + "".join(" ".join(map(str, r)) + "\n" for r in c.generator.tolist())
    _emit(args, payload, rows, text)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write the report to this file")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default: ${THREADS_ENV} or the CPU count)")
    common.add_argument("--timing", action="store_true", help="append per-check timings")

    p = _Parser(prog="cubic-census", description="Intersection censuses of plane curves over F_q.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("census", parents=[common], help="brute-force pair census")
    c.add_argument("--d", type=int, required=True)
    c.add_argument("--e", type=int, required=True)
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--affine", action="store_true")
    c.add_argument("--budget", type=int, default=None, help="class-pair budget override")
    c.add_argument("--extended", action="store_true", help="allow long runs (q=4 cubic pairs)")
    c.set_defaults(func=cmd_census)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--q", type=_qlist, default=None, help="comma-separated field sizes")
    v.set_defaults(func=cmd_verify)

    fo = sub.add_parser("formulas", parents=[common], help="list or evaluate closed forms")
    fo.add_argument("action", choices=("list", "eval"))
    fo.add_argument("--id")
    fo.add_argument("--q", type=int)
    fo.add_argument("--allow-out-of-range", action="store_true")
    fo.set_defaults(func=cmd_formulas)

    dc = sub.add_parser("dump-code", parents=[common], help="print a generator matrix")
    dc.add_argument("--d", type=int, required=True)
    dc.add_argument("--q", type=int, required=True)
    dc.add_argument("--affine", action="store_true")
    dc.add_argument("--dual", action="store_true")
    dc.set_defaults(func=cmd_dump_code)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FieldError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BudgetError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
