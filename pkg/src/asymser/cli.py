"""Command-line front end.

Subcommands: transform, continue, convert, direct, sweep.  All numeric output
is decimal text; exit codes are 0 (ok), 2 (usage), 3 (input error),
4 (numerical contract violated).
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal, localcontext
from fractions import Fraction

from .continuation import (
    DEFAULT_DIGITS,
    EmptyStateError,
    InsufficientConvergedError,
    NonIntegralPathError,
    SchemeConfig,
    ShiftedExpansion,
    continue_to_one_with_steps,
    extract_shifted,
    to_decimal,
)
from .conversion import (
    PlainExpansion,
    direct_trace,
    plain_to_shifted,
    shifted_to_plain,
    tail_agreement,
)
from .functions import (
    CoefficientParseError,
    DegeneratePoleError,
    build_series,
    format_decimal,
    load_coeffs,
    parse_generator,
    save_coeffs,
)
from .transform import AssociatedSeries, DegenerateRatiosError, TaylorSeries, associated, estimate_radius

_HALF_PI = Decimal("1.5707963267948966192313216916397514420985846996876")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4


def _open_out(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _write_rows(path, header, rows):
    out, close = _open_out(path)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if close:
            out.close()


def _parse_schedule(text: str) -> list[int]:
    """Parse '5..30', '5..30..5' or '5,10,20' into a list of m values."""
    if not text:
        return []
    if ".." in text:
        parts = text.split("..")
        if len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
            return list(range(lo, hi + 1))
        if len(parts) == 3:
            lo, hi, st = int(parts[0]), int(parts[1]), int(parts[2])
            return list(range(lo, hi + 1, st))
        raise ValueError(f"bad schedule {text!r}")
    return [int(p) for p in text.split(",") if p]


def _merge_config(args, keys):
    """Fill argparse values that are None from a JSON config file."""
    values = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            values = json.load(fh)
    merged = {}
    for key, fallback in keys.items():
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            merged[key] = cli_val
        elif key in values:
            merged[key] = values[key]
        else:
            merged[key] = fallback
    return merged


def _require(merged, names):
    missing = [n for n in names if merged.get(n) is None]
    if missing:
        raise ValueError(f"missing required option(s): {', '.join('--' + m for m in missing)}")


# ---------------------------------------------------------------- transform

def cmd_transform(args) -> int:
    digits = args.digits if args.digits is not None else DEFAULT_DIGITS
    spec = parse_generator(args.input, args.count, digits)
    series = build_series(spec)
    with localcontext() as ctx:
        ctx.prec = digits
        assoc = associated(series)
    exact = isinstance(series.coeffs[0], (Fraction, int))
    rows = []
    for n, (c, w) in enumerate(zip(series.coeffs, assoc.coeffs)):
        if exact:
            cf, wf = Fraction(c), Fraction(w)
            rows.append(
                [n, cf.numerator, cf.denominator, format_decimal(cf),
                 wf.numerator, wf.denominator, format_decimal(wf)]
            )
        else:
            rows.append([n, "", "", format_decimal(c), "", "", format_decimal(w)])
    _write_rows(
        args.out,
        ["n", "taylor_num", "taylor_den", "taylor_dec", "assoc_num", "assoc_den", "assoc_dec"],
        rows,
    )
    lag = args.lag if args.lag is not None else 4
    try:
        est = estimate_radius(assoc, lag)
    except DegenerateRatiosError:
        print(f"radius estimate (lag {lag}): degenerate (zero coefficients in every pair)")
    except ValueError as e:
        print(f"radius estimate (lag {lag}): unavailable ({e})")
    else:
        if est.limit_guess is not None:
            print(f"radius estimate (lag {lag}): {est.limit_guess:.9f}")
        else:
            print(f"radius estimate (lag {lag}): undetermined "
                  f"(last value {est.values[-1]:.9f} over {len(est.values)} comparisons)")
    return EXIT_OK


# ----------------------------------------------------------------- continue

def cmd_continue(args) -> int:
    merged = _merge_config(
        args, {"m": None, "dx": None, "alpha": None, "digits": DEFAULT_DIGITS, "count": 2}
    )
    _require(merged, ["m", "dx", "alpha"])
    m = int(merged["m"])
    digits = int(merged["digits"])
    config = SchemeConfig(m=m, step=str(merged["dx"]), alpha=str(merged["alpha"]), digits=digits)
    spec = parse_generator(args.input, m, digits)
    series = build_series(spec)
    with localcontext() as ctx:
        ctx.prec = digits
        assoc = associated(series)
    state, records = continue_to_one_with_steps(assoc, config)
    count = int(merged["count"])
    shifted = extract_shifted(state, count, center=series.center)
    doc = {
        "input": args.input,
        "m": m,
        "dx": str(config.step),
        "alpha": str(config.alpha),
        "digits": digits,
        "center": str(state.center),
        "converged_count": state.converged_count,
        "coefficients_at_one": [str(c) for c in state.coeffs],
        "shifted_coefficients": [str(c) for c in shifted.coeffs],
        "steps": [
            {"center": str(r.center), "carried": r.carried, "converged_count": r.converged_count}
            for r in records
        ],
    }
    if args.input == "arctan" and config.step == Decimal("0.5"):
        doc["note"] = (
            "step 0.5 passes within 0.5 of the nearest singularities of the "
            "arctangent companion function; instability with growing m is expected"
        )
    out, close = _open_out(args.out)
    try:
        json.dump(doc, out, indent=2)
        out.write("\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


# ------------------------------------------------------------------ convert

_DIRECTIONS = {
    "to-plain": "to-plain",
    "to-shifted": "to-shifted",
    "to-q": "to-plain",
    "to-qprime": "to-shifted",
}


def cmd_convert(args) -> int:
    direction = _DIRECTIONS.get(args.direction)
    if direction is None:
        raise ValueError(f"direction must be one of {sorted(_DIRECTIONS)}")
    digits = args.digits if args.digits is not None else DEFAULT_DIGITS
    series = load_coeffs(args.coeff_file, digits=digits)
    with localcontext() as ctx:
        ctx.prec = digits
        if direction == "to-plain":
            result = shifted_to_plain(ShiftedExpansion(coeffs=series.coeffs, center=0))
        else:
            result = plain_to_shifted(PlainExpansion(coeffs=series.coeffs, center=0))
    out_series = TaylorSeries(coeffs=result.coeffs, center=0)
    fmt = "json" if isinstance(series.coeffs[0], Decimal) else "csv"
    if args.out is None or args.out == "-":
        if fmt == "csv":
            rows = [[n, Fraction(c).numerator, Fraction(c).denominator]
                    for n, c in enumerate(result.coeffs)]
            _write_rows(None, ["n", "numerator", "denominator"], rows)
        else:
            json.dump([str(c) for c in result.coeffs], sys.stdout)
            sys.stdout.write("\n")
    else:
        save_coeffs(out_series, args.out, fmt=fmt)
    return EXIT_OK


# ------------------------------------------------------------------- direct

def cmd_direct(args) -> int:
    schedule = _parse_schedule(args.schedule)
    digits = args.digits if args.digits is not None else DEFAULT_DIGITS
    count = (max(schedule) + 1) if schedule else 1
    spec = parse_generator(args.input, count, digits)
    series = build_series(spec)
    with localcontext() as ctx:
        ctx.prec = digits
        trace = direct_trace(series, args.k, schedule, tol=args.tol)
    values = [v for _, v in trace.partials]
    rows = []
    for i, (m, val) in enumerate(trace.partials):
        running = tail_agreement(values[: i + 1], args.tol)
        rows.append([m, format_decimal(val, digits), "yes" if running else "no"])
    _write_rows(args.out, ["m", "partial", "converged"], rows)
    if trace.converged:
        print(f"limit: {format_decimal(trace.limit_guess, digits)}")
    else:
        print("not converged")
    return EXIT_OK


# -------------------------------------------------------------------- sweep

def _run_cell(payload):
    (coeff_strs, m, dx_str, alpha_str, digits, with_reference) = payload
    try:
        assoc = AssociatedSeries(tuple(Decimal(s) for s in coeff_strs[:m]))
        config = SchemeConfig(m=m, step=dx_str, alpha=alpha_str, digits=digits)
        state, records = continue_to_one_with_steps(assoc, config)
        c0 = state.coeffs[0] if len(state.coeffs) >= 1 else None
        c1 = state.coeffs[1] if len(state.coeffs) >= 2 else None
        err0 = err1 = ""
        if with_reference:
            with localcontext() as ctx:
                ctx.prec = digits + 8
                if c0 is not None:
                    err0 = format_decimal(abs(c0 - +_HALF_PI), 10)
                if c1 is not None:
                    err1 = format_decimal(abs(c1 - 1), 10)
        status = "converged" if state.converged_count >= 2 else "unconverged"
        return [
            m, dx_str, alpha_str, digits, config.steps,
            str(c0) if c0 is not None else "unconverged",
            str(c1) if c1 is not None else "unconverged",
            err0, err1, state.converged_count, status,
        ]
    except ArithmeticError as e:  # numerical blow-up is recorded, not fatal
        return [m, dx_str, alpha_str, digits, "", "unconverged", "unconverged",
                "", "", 0, f"error:{type(e).__name__}"]


SWEEP_HEADER = [
    "m", "dx", "alpha", "digits", "steps", "c0_at_1", "c1_at_1",
    "err0", "err1", "converged_count", "status",
]


def _as_str_list(value) -> list[str]:
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return [p for p in str(value).split(",") if p]


def cmd_sweep(args) -> int:
    merged = _merge_config(
        args, {"m": None, "dx": None, "alpha": None, "digits": DEFAULT_DIGITS, "jobs": 1}
    )
    _require(merged, ["m", "dx", "alpha"])
    m_list = sorted({int(v) for v in _as_str_list(merged["m"])})
    dx_list = sorted({str(Decimal(v)) for v in _as_str_list(merged["dx"])}, key=Decimal)
    alpha_list = sorted({str(Decimal(v)) for v in _as_str_list(merged["alpha"])}, key=Decimal)
    digits = int(merged["digits"])
    jobs = int(merged["jobs"])
    max_m = max(m_list)
    spec = parse_generator(args.input, max_m, digits)
    series = build_series(spec)
    with localcontext() as ctx:
        ctx.prec = digits
        assoc = associated(series)
    coeff_strs = tuple(str(to_decimal(c, digits)) for c in assoc.coeffs)
    with_reference = args.input == "arctan"
    cells = [
        (coeff_strs, m, dx, alpha, digits, with_reference)
        for m in m_list for dx in dx_list for alpha in alpha_list
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_run_cell, cells))
    else:
        rows = [_run_cell(cell) for cell in cells]
    _write_rows(args.out, SWEEP_HEADER, rows)
    return EXIT_OK


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asymser",
        description="Coefficients of negative-power expansions at infinity, "
                    "computed from Taylor coefficients at a finite center.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="companion coefficients and radius estimate")
    p.add_argument("--input", required=True, help="arctan | pole:A | altgeom | file:PATH")
    p.add_argument("--count", type=int, required=True, help="number of coefficients")
    p.add_argument("--lag", type=int, default=None, help="ratio-test lag (default 4)")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--out", default=None, help="CSV path (default stdout)")

    p = sub.add_parser("continue", help="continue the companion series to 1 and extract")
    p.add_argument("--input", required=True)
    p.add_argument("--m", type=int, default=None, help="input coefficient count")
    p.add_argument("--dx", default=None, help="center step, e.g. 0.25")
    p.add_argument("--alpha", default=None, help="convergence threshold")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--count", type=int, default=None, help="coefficients to extract")
    p.add_argument("--config", default=None, help="JSON config file; flags override")
    p.add_argument("--out", default=None, help="JSON path (default stdout)")

    p = sub.add_parser("convert", help="convert between expansion forms")
    p.add_argument("coeff_file", help="coefficient file (CSV or JSON)")
    p.add_argument("--direction", required=True,
                   help="to-plain | to-shifted (aliases: to-q, to-qprime)")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("direct", help="direct partial sums of a shifted coefficient")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True, help="coefficient index")
    p.add_argument("--schedule", required=True, help="m values: '5..30' or '5,10,20'")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("sweep", help="grid of continuation runs, CSV report")
    p.add_argument("--input", required=True)
    p.add_argument("--m", default=None, help="comma list of m values")
    p.add_argument("--dx", default=None, help="comma list of steps")
    p.add_argument("--alpha", default=None, help="comma list of thresholds")
    p.add_argument("--digits", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)

    return parser


_HANDLERS = {
    "transform": cmd_transform,
    "continue": cmd_continue,
    "convert": cmd_convert,
    "direct": cmd_direct,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except (NonIntegralPathError, InsufficientConvergedError, EmptyStateError,
            DegeneratePoleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (CoefficientParseError, OSError, json.JSONDecodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
