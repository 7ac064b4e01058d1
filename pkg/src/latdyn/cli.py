"""Command line interface.

Subcommands:
  analyze FILE       full report for one group document
  corpus DIR         sweep a directory of documents, print a summary table
  exponent R         table of cyclotomic-index exponents for ranks 1..R
  cone-check FILE    cone dynamics stages only
  fl-pipeline FILE   finiteness pipeline only
  series FILE        series / essential-length stages only

Exit codes: 0 all checks pass, 1 an asserted invariant failed (and was not
declared via expect_violation), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .entropy import uniform_exponent
from .groupspec import SpecFormatError, load_spec_file
from .report import AnalyzeOptions, jsonable, report_to_json, run_analyze, run_corpus

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


def _options(args) -> AnalyzeOptions:
    return AnalyzeOptions(
        precision_bits=args.precision_bits,
        word_budget=args.word_budget,
        group_cap=args.group_cap,
        seed=args.seed,
        include_timings=args.timings,
    )


def _add_common(p):
    p.add_argument("--json", action="store_true", help="emit the full report as JSON")
    p.add_argument("--precision-bits", type=int, default=16, help="interval width is 2^-bits")
    p.add_argument("--word-budget", type=int, default=10, help="word length for commutator searches")
    p.add_argument("--group-cap", type=int, default=10**6, help="cap for group closure enumeration")
    p.add_argument("--seed", type=int, default=0, help="seed recorded in reports")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identical output)")


def _print_kv(d, indent=0):
    pad = "  " * indent
    for k, v in d.items():
        if isinstance(v, dict):
            print(f"{pad}{k}:")
            _print_kv(v, indent + 1)
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            print(f"{pad}{k}:")
            for x in v:
                _print_kv(x, indent + 1)
                print()
        else:
            print(f"{pad}{k}: {json.dumps(jsonable(v))}")


def _report_exit(report) -> int:
    return EXIT_OK if report["ok"] else EXIT_VIOLATION


def _load(path):
    try:
        return load_spec_file(path)
    except FileNotFoundError:
        print(f"error: no such file: {path}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)
    except SpecFormatError as e:
        print(f"error: {path}: {e}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _emit(report, args, stages=None) -> int:
    if stages is not None:
        keep = {"name", "r", "n", "violations", "unexpected_violations",
                "missing_expected_violations", "expect_violation", "stage_errors", "ok"}
        report = dict(report)
        report["stages"] = {k: v for k, v in report["stages"].items() if k in stages}
        report = {k: v for k, v in report.items() if k in keep or k == "stages"}
    if args.json:
        sys.stdout.write(report_to_json(report))
    else:
        _print_kv(report)
    return EXIT_OK if not report.get("unexpected_violations") and not report.get("missing_expected_violations") and not report.get("stage_errors") else EXIT_VIOLATION


def cmd_analyze(args) -> int:
    spec = _load(args.file)
    report = run_analyze(spec, _options(args))
    return _emit(report, args)


def cmd_series(args) -> int:
    spec = _load(args.file)
    report = run_analyze(spec, _options(args))
    return _emit(report, args, stages={"unipotent_pipeline", "series", "essential_length", "robinson", "corollary_chain"})


def cmd_cone_check(args) -> int:
    spec = _load(args.file)
    report = run_analyze(spec, _options(args))
    return _emit(report, args, stages={"cone"})


def cmd_fl_pipeline(args) -> int:
    spec = _load(args.file)
    report = run_analyze(spec, _options(args))
    return _emit(report, args, stages={"fujiki_lieberman"})


def cmd_corpus(args) -> int:
    summary, reports = run_corpus(args.directory, _options(args))
    if args.json:
        sys.stdout.write(report_to_json({"summary": summary, "reports": reports}))
    else:
        print(f"analyzed {summary['files_analyzed']} file(s)")
        if summary["input_errors"]:
            print("input errors:")
            for fname, err in sorted(summary["input_errors"].items()):
                print(f"  {fname}: {err}")
        header = f"{'file':30} {'n':>3} {'l_ess':>5} {'class':>5} {'bound':>6} {'status':>8}"
        print(header)
        print("-" * len(header))
        for row in summary["rows"]:
            bound = {True: "holds", False: "FAILS", None: "-"}[row["bound_holds"]]
            status = "ok" if row["ok"] else "FAIL"
            n = row["n"] if row["n"] is not None else "-"
            le = row["essential_length"] if row["essential_length"] is not None else "-"
            nc = row["nilpotency_class"] if row["nilpotency_class"] is not None else "-"
            print(f"{row['file']:30} {n!s:>3} {le!s:>5} {nc!s:>5} {bound:>6} {status:>8}")
            for v in row["unexpected_violations"]:
                print(f"{'':30} unexpected violation: {v}")
            for v in row["missing_expected_violations"]:
                print(f"{'':30} expected violation not observed: {v}")
        if summary["nilpotency_vs_bound"]:
            print()
            print("nilpotency class of the unipotent image vs n-1:")
            for h in summary["nilpotency_vs_bound"]:
                mark = "<=" if h["within"] else ">"
                print(f"  {h['name']:28} class {h['nilpotency_class']} {mark} {h['n_minus_1']} (n-1)")
            print(f"  max class observed: {summary['max_nilpotency_class']}")
    return summary["exit_code"]


def cmd_exponent(args) -> int:
    rows = []
    for r in range(1, args.rank + 1):
        rows.append(uniform_exponent(r))
    if args.json:
        doc = [
            {"r": e.rank, "d_list": list(e.d_list), "m_product": e.m_paper, "m_lcm": e.m_lcm}
            for e in rows
        ]
        sys.stdout.write(json.dumps(jsonable(doc), indent=2, sort_keys=True) + "\n")
    else:
        print(f"{'r':>3} {'m_lcm':>10} {'m_product':>14}  d with phi(d) <= r")
        for e in rows:
            print(f"{e.rank:>3} {e.m_lcm:>10} {e.m_paper:>14}  {list(e.d_list)}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="latdyn",
        description="Exact analysis of unimodular integer matrix groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one group document")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("corpus", help="sweep a directory of group documents")
    p.add_argument("directory")
    _add_common(p)
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("exponent", help="uniform exponent table for ranks 1..R")
    p.add_argument("rank", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_exponent)

    p = sub.add_parser("cone-check", help="cone dynamics only")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(fn=cmd_cone_check)

    p = sub.add_parser("fl-pipeline", help="finiteness pipeline only")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(fn=cmd_fl_pipeline)

    p = sub.add_parser("series", help="series and essential length only")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(fn=cmd_series)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.fn(args)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
