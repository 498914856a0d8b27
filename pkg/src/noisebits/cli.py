"""Command-line driver for the experiments.

Every subcommand is configured entirely by flags (seeds included), so
identical invocations produce byte-identical output.  Summary lines go
to stdout; the full report is written to ``--out`` as JSON (``ortho``
defaults to CSV).  Exit status: 0 on success, 1 when a demo's verdict
fails (for example a decode mismatch), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .apps import ShiftAssignment, holographic_demo, noncommute_demo, random_shift_demo
from .hyperspace import (
    DEFAULT_MAX_N,
    DEFAULT_THRESHOLD,
    encode_string,
    int_to_bits,
    parse_bits,
    round_trip_run,
)
from .reference import build_reference_system, capacity, orthogonality_csv, orthogonality_matrix
from .source import DEFAULT_SEED

SCHEMA_VERSION = 1


def _write_report(report: dict, out: str | None) -> None:
    if out:
        Path(out).write_text(json.dumps(report, indent=2) + "\n")


def _write_csv(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)


def _correlations_csv(rows: list[dict], columns: list[str]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(_csv_cell(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _cmd_capacity(args: argparse.Namespace) -> int:
    if args.m is not None:
        report = capacity(args.n, args.m)
    else:
        report = capacity(args.n, 2 * args.k * args.n)
    print(f"classical_bits={report.classical_bits}")
    print(f"dimension_factor={report.dimension_factor}")
    _write_report({
        "schema": SCHEMA_VERSION,
        "subcommand": "capacity",
        "N": report.n_bits,
        "M": report.shift_steps,
        "k": report.shift_steps // (2 * report.n_bits),
        "classical_bits": report.classical_bits,
        "dimension_factor": report.dimension_factor,
    }, args.out)
    return 0


def _cmd_ortho(args: argparse.Namespace) -> int:
    sys_ = build_reference_system(args.seed, args.n, args.k)
    matrix = orthogonality_matrix(sys_, args.l, args.start)
    size = 2 * sys_.n_eff
    max_offdiag = max(abs(matrix[i][j].rho)
                      for i in range(size) for j in range(size) if i != j)
    if args.format == "csv":
        text = orthogonality_csv(sys_, matrix)
        if args.out:
            Path(args.out).write_text(text)
            print(f"max_offdiag_abs={max_offdiag:.6g}")
        else:
            sys.stdout.write(text)
        return 0
    report = {
        "schema": SCHEMA_VERSION,
        "subcommand": "ortho",
        "seed": sys_.seed,
        "N": args.n,
        "k": args.k,
        "L": args.l,
        "start": args.start,
        "labels": sys_.labels(),
        "rho": [[est.rho for est in row] for row in matrix],
        "max_offdiag_abs": max_offdiag,
    }
    if args.out:
        _write_report(report, args.out)
        print(f"max_offdiag_abs={max_offdiag:.6g}")
    else:
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    return 0


def _cmd_encode_decode(args: argparse.Namespace) -> int:
    seeds = list(range(args.seed, args.seed + args.seeds))
    runs = [round_trip_run(s, args.n, args.m_strings, args.l,
                           threshold=args.threshold, max_n=args.max_n,
                           extra_shift_rounds=args.k) for s in seeds]
    mismatches = sum(not r["ok"] for r in runs)
    print(f"mismatches: {mismatches}")
    print(f"member_rho_range=[{min(r['member_rho_min'] for r in runs):.6g},"
          f"{max(r['member_rho_max'] for r in runs):.6g}]")
    print(f"nonmember_abs_max={max(r['nonmember_abs_max'] for r in runs):.6g}")
    _write_report({
        "schema": SCHEMA_VERSION,
        "subcommand": "encode-decode",
        "N": args.n,
        "k": args.k,
        "m": args.m_strings,
        "threshold": args.threshold,
        "max_n": args.max_n,
        "seeds": seeds,
        "mismatches": mismatches,
        "runs": runs,
    }, args.out)
    return 0 if mismatches == 0 else 1


def _cmd_holographic(args: argparse.Namespace) -> int:
    sys_ = build_reference_system(args.seed, args.n, args.k)
    if args.strings:
        string_sets = [[parse_bits(s) for s in args.strings.split(",")]]
    else:
        string_sets = [[int_to_bits(v, sys_.n_eff)]
                       for v in range(1 << sys_.n_eff)]
    sub_reports = [holographic_demo(sys_, strings, args.d, args.l,
                                    threshold=args.threshold, max_n=args.max_n)
                   for strings in string_sets]
    ok = all(r["ok"] for r in sub_reports)
    for r in sub_reports:
        print(f"input={{{','.join(r['input'])}}} decoded={{{','.join(r['decoded'])}}}"
              f" expected={{{','.join(r['expected'])}}} ok={str(r['ok']).lower()}")
    print(f"ok: {str(ok).lower()}")
    _write_report({
        "schema": SCHEMA_VERSION,
        "subcommand": "holographic",
        "N": args.n,
        "k": args.k,
        "d": args.d,
        "ok": ok,
        "runs": sub_reports,
    }, args.out)
    if args.csv:
        rows = [{"input": ",".join(r["input"]), "candidate": c["candidate"],
                 "rho": c["rho"]}
                for r in sub_reports for c in r.get("correlations", [])]
        _write_csv(_correlations_csv(rows, ["input", "candidate", "rho"]), args.csv)
    return 0 if ok else 1


def _cmd_noncommute(args: argparse.Namespace) -> int:
    sys_ = build_reference_system(args.seed, args.n, args.k)
    x = encode_string(sys_, parse_bits(args.x)) if args.x else \
        encode_string(sys_, (0,) * sys_.n_eff)
    if args.i is not None:
        pairs = [(args.i, args.b)]
    else:
        pairs = [(i, b) for i in range(1, sys_.n_eff + 1) for b in (0, 1)]
    sub_reports = [noncommute_demo(sys_, x, i, b, args.d, args.l)
                   for i, b in pairs]
    ok = all(r["ok"] for r in sub_reports)
    for r in sub_reports:
        print(f"i={r['i']} b={r['b']} cross_rho={r['cross_rho']:.6g}"
              f" structurally_equal={str(r['structurally_equal']).lower()}"
              f" ok={str(r['ok']).lower()}")
    print(f"ok: {str(ok).lower()}")
    _write_report({
        "schema": SCHEMA_VERSION,
        "subcommand": "noncommute",
        "N": args.n,
        "k": args.k,
        "d": args.d,
        "L": args.l,
        "ok": ok,
        "runs": sub_reports,
    }, args.out)
    if args.csv:
        rows = [{"i": r["i"], "b": r["b"], "cross_rho": r["cross_rho"],
                 "self_rho_ab": r["self_rho_ab"], "self_rho_ba": r["self_rho_ba"]}
                for r in sub_reports]
        _write_csv(_correlations_csv(
            rows, ["i", "b", "cross_rho", "self_rho_ab", "self_rho_ba"]), args.csv)
    return 0 if ok else 1


def _cmd_randshift(args: argparse.Namespace) -> int:
    sys_ = build_reference_system(args.seed, args.n, args.k)
    assignment = ShiftAssignment.draw(sys_, args.assign_seed, args.r_max,
                                      distinct=not args.repeats)
    report = random_shift_demo(sys_, assignment, args.i, args.b, args.l,
                               global_shift=args.global_d)
    print(f"r={report['r']} uncompensated_rho={report['uncompensated_rho']:.6g}"
          f" compensated_rho={report['compensated_rho']:.6g}")
    print(f"global_shift={report['global_shift']}"
          f" restored_count={report['restored_count']}")
    print(f"ok: {str(report['ok']).lower()}")
    _write_report({"schema": SCHEMA_VERSION, "subcommand": "randshift",
                   "assign_seed": args.assign_seed, **report}, args.out)
    if args.csv:
        rows = [{"reference": label, "r": r}
                for label, r in report["assignment"].items()]
        _write_csv(_correlations_csv(rows, ["reference", "r"]), args.csv)
    return 0 if report["ok"] else 1


def _add_common(p: argparse.ArgumentParser, *, length: int | None) -> None:
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="noise source seed (default %(default)s)")
    p.add_argument("--k", type=int, default=0,
                   help="expansion rounds (default %(default)s)")
    if length is not None:
        p.add_argument("--l", type=int, default=length,
                       help="window length in samples (default %(default)s)")
    p.add_argument("--out", help="write the full JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noisebits",
        description="Noise-based logic experiments on a single telegraph wave.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="exact hyperspace capacity of one wire")
    p.add_argument("--n", type=int, required=True, help="noise bits N")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--m", type=int, help="expansion shift steps M = 2kN")
    group.add_argument("--k", type=int, default=0, help="expansion rounds k")
    p.add_argument("--out", help="write the full JSON report here")
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("ortho", help="pairwise reference correlations")
    p.add_argument("--n", type=int, required=True, help="noise bits N")
    _add_common(p, length=1_000_000)
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_ortho)

    p = sub.add_parser("encode-decode",
                       help="random-set round trip through one wire")
    p.add_argument("--n", type=int, required=True, help="noise bits N")
    p.add_argument("--m-strings", type=int, default=5,
                   help="strings per set (default %(default)s)")
    p.add_argument("--seeds", type=int, default=1,
                   help="number of consecutive seeds to run (default %(default)s)")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    _add_common(p, length=None)
    p.add_argument("--l", type=int, default=None,
                   help="window length (default: policy max(1e4, 400*(m-1)))")
    p.set_defaults(func=_cmd_encode_decode)

    p = sub.add_parser("holographic",
                       help="decode a shifted superposition against unshifted references")
    p.add_argument("--n", type=int, required=True, help="noise bits N")
    p.add_argument("--d", type=int, default=1, help="whole-signal shift (periods)")
    p.add_argument("--strings",
                   help="comma-separated bit strings to encode; default sweeps "
                        "every singleton")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.add_argument("--csv", help="also write a correlations CSV here")
    _add_common(p, length=None)
    p.add_argument("--l", type=int, default=None,
                   help="window length (default: policy)")
    p.set_defaults(func=_cmd_holographic)

    p = sub.add_parser("noncommute",
                       help="multiply-then-shift vs shift-then-multiply")
    p.add_argument("--n", type=int, default=2, help="noise bits N")
    p.add_argument("--i", type=int, help="noise bit index (default: all pairs)")
    p.add_argument("--b", type=int, choices=(0, 1), default=0,
                   help="bit value, used together with --i")
    p.add_argument("--d", type=int, default=1, help="shift step (periods)")
    p.add_argument("--x", help="input product string bits (default all zeros)")
    p.add_argument("--csv", help="also write a correlations CSV here")
    _add_common(p, length=1_000_000)
    p.set_defaults(func=_cmd_noncommute)

    p = sub.add_parser("randshift",
                       help="fixed random shifts: hiding and restoring references")
    p.add_argument("--n", type=int, default=3, help="noise bits N")
    p.add_argument("--assign-seed", type=int, default=7,
                   help="seed of the shift assignment draw (default %(default)s)")
    p.add_argument("--r-max", type=int, default=None,
                   help="largest drawable shift (default 2 * n_eff)")
    p.add_argument("--repeats", action="store_true",
                   help="allow repeated shift values in the assignment")
    p.add_argument("--i", type=int, default=1, help="noise bit index to probe")
    p.add_argument("--b", type=int, choices=(0, 1), default=0, help="bit value")
    p.add_argument("--global-d", type=int, default=None,
                   help="global inverse-shift guess (default: the probed r)")
    p.add_argument("--csv", help="also write the assignment as CSV here")
    _add_common(p, length=1_000_000)
    p.set_defaults(func=_cmd_randshift)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
