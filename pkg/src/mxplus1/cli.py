"""Command line for trajectories, surveys, ruin tables, and parity tools.

Exit codes: 0 success, 2 configuration or validation failure (bad
polynomial text, inadmissible multiplier, unsupported q, ...), 3
internal invariant violation.  For a fixed argv the primary output is
byte-identical across runs; timing goes to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys
from fractions import Fraction

from .curve_ring import CurveRing
from .dynamics import (
    DEFAULT_DEGREE_CAP,
    CurveSystem,
    InternalInvariantError,
    LineSystem,
)
from . import parity_map, ruin, survey

__all__ = ["build_parser", "main"]

_DESK_PRESETS = {"line": (14, 10_000), "curve": (7, 10_000)}
_FULL_PRESETS = {"line": (20, 100_000), "curve": (10, 100_000)}


def _add_system_flags(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--ring",
        choices=("line", "curve"),
        default="line",
        help="which ring to iterate in: the polynomial line GF(2)[t] or the "
        "curve ring GF(2)[x,t]/(x^2+t*x+r)",
    )
    parser.add_argument(
        "--m",
        required=True,
        help="multiplier: an odd polynomial like t^2+t+1 on the line, or "
        "'m0 ; m1' meaning m0 + x*m1 on the curve",
    )
    parser.add_argument(
        "--r",
        default="t^2+t+1",
        help="curve ring modulus, an odd irreducible polynomial (default t^2+t+1)",
    )


def _add_output_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--output", help="write to this file instead of stdout")


def _build_system(args):
    from .gf2poly import parse_poly

    if args.ring == "line":
        return LineSystem(parse_poly(args.m))
    from .curve_ring import parse_curve_elem

    return CurveSystem(CurveRing(parse_poly(args.r)), parse_curve_elem(args.m))


def _open_output(args):
    if getattr(args, "output", None):
        return open(args.output, "w", newline="")
    return contextlib.nullcontext(sys.stdout)


def _write_csv(fh, header, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if value is None else value for value in row])


def _rows_to_objects(header, rows):
    return [dict(zip(header, row)) for row in rows]


def _emit(args, header, rows):
    with _open_output(args) as fh:
        if args.format == "json":
            json.dump(_rows_to_objects(header, rows), fh, indent=2)
            fh.write("\n")
        else:
            _write_csv(fh, header, rows)
    return 0


def _cmd_trajectory(args) -> int:
    system = _build_system(args)
    f = system.parse_element(args.f)
    if args.emit == "report":
        report = system.run_trajectory(f, cap=args.steps, degree_cap=args.degree_cap)
        header = ("sigma", "period", "max_degree", "steps_executed", "hit_degree_cap")
        rows = [
            (
                report.sigma,
                report.period,
                report.max_degree,
                report.steps_executed,
                report.hit_degree_cap,
            )
        ]
        return _emit(args, header, rows)
    if args.emit == "degrees":
        degrees = system.degree_sequence(f, args.steps)
        if args.plot:
            from .figures import save_degree_plot

            save_degree_plot(degrees, args.plot)
        return _emit(args, ("k", "degree"), list(enumerate(degrees)))
    rows = []
    v = f
    for k in range(args.steps + 1):
        rows.append((k, system.format_element(v)))
        if k < args.steps:
            v = system.step(v)
    return _emit(args, ("k", "f"), rows)


def _cmd_survey(args) -> int:
    system = _build_system(args)
    preset_degree, preset_cap = (_FULL_PRESETS if args.full else _DESK_PRESETS)[args.ring]
    max_degree = args.max_degree if args.max_degree is not None else preset_degree
    cap = args.cap if args.cap is not None else preset_cap
    if args.full:
        print(
            "warning: full-scale survey; expect a long run and high memory-free CPU use",
            file=sys.stderr,
        )
    spec = survey.SurveySpec(
        system=system,
        max_degree=max_degree,
        step_cap=cap,
        degree_cap=args.degree_cap,
        bucket_width=args.bucket_width,
    )
    report = survey.run_survey(spec, jobs=args.jobs)
    print(
        f"surveyed {report.elements_surveyed} elements in {report.elapsed_seconds:.2f}s",
        file=sys.stderr,
    )
    sigma_rows = survey.sigma_distribution_rows(report)
    summary_row = survey.timeout_summary_row(spec, report)
    lambda_header, lambda_rows = survey.lambda_powerlaw_rows(report)

    if args.outdir:
        os.makedirs(args.outdir, exist_ok=True)
        paths = {
            "sigma": os.path.join(args.outdir, "sigma_histogram.csv"),
            "summary": os.path.join(args.outdir, "timeout_summary.csv"),
            "lambda": os.path.join(args.outdir, "lambda_table.csv"),
        }
        with open(paths["sigma"], "w", newline="") as fh:
            _write_csv(fh, survey.SIGMA_HEADER, sigma_rows)
        with open(paths["summary"], "w", newline="") as fh:
            _write_csv(fh, survey.TIMEOUT_HEADER, [summary_row])
        with open(paths["lambda"], "w", newline="") as fh:
            _write_csv(fh, lambda_header, lambda_rows)
        with open(os.path.join(args.outdir, "survey.json"), "w") as fh:
            json.dump(_survey_json(args, spec, sigma_rows, summary_row, lambda_header, lambda_rows), fh, indent=2)
            fh.write("\n")
        from .figures import save_lambda_figure, save_sigma_histogram_figure

        save_sigma_histogram_figure(
            sigma_rows, os.path.join(args.outdir, "sigma_histogram.png")
        )
        save_lambda_figure(
            lambda_header, lambda_rows, os.path.join(args.outdir, "lambda_periods.png")
        )
        return 0

    with _open_output(args) as fh:
        if args.format == "json":
            json.dump(
                _survey_json(args, spec, sigma_rows, summary_row, lambda_header, lambda_rows),
                fh,
                indent=2,
            )
            fh.write("\n")
        else:
            _write_csv(fh, survey.SIGMA_HEADER, sigma_rows)
            fh.write("\n")
            _write_csv(fh, survey.TIMEOUT_HEADER, [summary_row])
            fh.write("\n")
            _write_csv(fh, lambda_header, lambda_rows)
    return 0


def _survey_json(args, spec, sigma_rows, summary_row, lambda_header, lambda_rows):
    doc = {
        "ring": args.ring,
        "m": args.m.strip(),
        "D": spec.max_degree,
        "cap": spec.step_cap,
        "degree_cap": spec.degree_cap,
        "bucket_width": spec.bucket_width,
        "sigma_histogram": _rows_to_objects(survey.SIGMA_HEADER, sigma_rows),
        "timeout_summary": dict(zip(survey.TIMEOUT_HEADER, summary_row)),
        "lambda_table": _rows_to_objects(lambda_header, lambda_rows),
    }
    if args.ring == "curve":
        doc["r"] = args.r.strip()
    return doc


def _cmd_ruin_table(args) -> int:
    q = Fraction(args.q)
    rows = []
    for d in range(1, args.d_max + 1):
        if args.method == "root":
            result = ruin.limit_probability(d, q)
        elif args.method == "linear-system":
            result = ruin.finite_ruin_probability(d, args.window, q)
        else:
            result = ruin.monte_carlo_ruin(d, q, args.trials, args.max_steps, args.seed + d)
        rows.append((d, result.probability, result.method, result.error_bound))
    if args.plot:
        from .figures import save_ruin_figure

        table = [(d, ruin.RuinResult(p, m, e)) for d, p, m, e in rows]
        save_ruin_figure(table, args.plot, title=f"Ruin probability, q={args.q}")
    return _emit(args, ("d", "P_d", "method", "error_bound"), rows)


def _cmd_parity_encode(args) -> int:
    system = _build_system(args)
    f = system.parse_element(args.f)
    seq = parity_map.encode(system, f, args.n)
    rows = [(args.m.strip(), args.f.strip(), args.n, parity_map.seq_to_str(seq))]
    return _emit(args, ("m", "f", "n", "parity"), rows)


def _cmd_parity_decode(args) -> int:
    system = _build_system(args)
    seq = parity_map.seq_from_str(args.seq)
    f = parity_map.decode(system, seq)
    rows = [(args.m.strip(), args.seq, system.format_element(f))]
    return _emit(args, ("m", "parity", "f"), rows)


def _cmd_make_stopper(args) -> int:
    system = _build_system(args)
    f = parity_map.construct_long_stopper(system, args.n)
    degrees = system.degree_sequence(f, args.n)
    expected = degrees[0] + args.n * (system.d - 1)
    sigma_exceeds = system.stopping_time(f, cap=args.n) is None
    if not sigma_exceeds or degrees[-1] != expected:
        raise InternalInvariantError("constructed element failed its certificate")
    header = ("f", "n", "deg_f", "deg_after_n", "expected_deg_after_n", "sigma_exceeds_n")
    rows = [(system.format_element(f), args.n, degrees[0], degrees[-1], expected, True)]
    return _emit(args, header, rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mxplus1",
        description="mx+1 dynamics over GF(2) polynomial rings: trajectories, "
        "stopping-time surveys, parity bijections, and ruin probabilities.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser(
        "trajectory",
        help="iterate one start value and emit values, degrees, or a summary",
        description="Iterate T from --f for --steps steps.  --emit values lists "
        "the visited elements; --emit degrees lists their degrees (optionally "
        "plotted with --plot); --emit report runs the combined stopping-time / "
        "cycle / degree-peak scan with --steps as the step cap.",
    )
    _add_system_flags(p)
    p.add_argument("--f", required=True, help="start element")
    p.add_argument("--steps", type=int, default=100, help="steps to iterate (default 100)")
    p.add_argument("--emit", choices=("values", "degrees", "report"), default="values")
    p.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    p.add_argument("--plot", help="with --emit degrees, also render a PNG degree plot")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_trajectory)

    p = sub.add_parser(
        "survey",
        help="run every element of degree < D and tabulate the results",
        description="Exhaustively survey all nonzero elements of degree below "
        "--max-degree: stopping-time histogram, timeout density against the "
        "predicted asymptote 1-P_d, and cycle-length counts per starting "
        "degree.  Without --outdir the three tables print to stdout; with "
        "--outdir each lands in its own CSV plus a JSON mirror and PNG charts.",
    )
    _add_system_flags(p)
    p.add_argument("--max-degree", type=int, help="survey elements of degree < this")
    p.add_argument("--cap", type=int, help="step cap per element (default 10000)")
    p.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    p.add_argument("--bucket-width", type=int, default=50)
    p.add_argument(
        "--full",
        action="store_true",
        help="use full-scale presets (line D=20, curve D=10, cap 100000); slow",
    )
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--outdir", help="directory for CSV/JSON/PNG outputs")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_survey)

    p = sub.add_parser(
        "ruin-table",
        help="tabulate ruin probabilities P_d for d = 1..d-max",
        description="Ruin probability of the degree random walk for each "
        "multiplier degree d, by the exact root method, a finite-buffer "
        "linear system, or Monte Carlo simulation.",
    )
    p.add_argument("--q", choices=("1/2", "1/4"), default="1/2", help="win probability")
    p.add_argument("--d-max", type=int, default=8)
    p.add_argument(
        "--method", choices=("root", "linear-system", "monte-carlo"), default="root"
    )
    p.add_argument("--window", type=int, default=500, help="buffer W for linear-system")
    p.add_argument("--trials", type=int, default=100_000, help="walks for monte-carlo")
    p.add_argument("--max-steps", type=int, default=10_000, help="steps per walk for monte-carlo")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", help="also render a PNG of P_d against d")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_ruin_table)

    p = sub.add_parser(
        "parity-encode",
        help="first n trajectory parities of an element",
        description="Emit the residues mod t of f, T(f), ..., T^(n-1)(f) as a "
        "string over 0/1 (line) or 0/1/x/w (curve).",
    )
    _add_system_flags(p)
    p.add_argument("--f", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_parity_encode)

    p = sub.add_parser(
        "parity-decode",
        help="the element (mod t^n) with a given parity string",
        description="Invert parity-encode: find the unique element mod t^n "
        "whose first n parities equal --seq.",
    )
    _add_system_flags(p)
    p.add_argument("--seq", required=True, help="parity string over 0/1 (line) or 0/1/x/w (curve)")
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_parity_decode)

    p = sub.add_parser(
        "make-stopper",
        help="construct an element whose stopping time exceeds n",
        description="Decode the all-multiply parity string of length n and "
        "verify the result: no degree drop within n steps, and the degree "
        "after n steps equals deg f + n*(deg m - 1).",
    )
    _add_system_flags(p)
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)
    p.set_defaults(handler=_cmd_make_stopper)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
