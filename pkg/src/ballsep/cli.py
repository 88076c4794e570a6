"""Command-line front end.

Subcommands: exact (closed forms for one instance), estimate (Monte
Carlo next to the closed forms), sweep (closed-form tables over a
dimension-by-gap grid), tessellate (multi-plane success estimation and
width planning), validate (built-in invariant grids).

Instances are given either explicitly (--c/--x/--r/--p/--k) or through
the symmetric generator (--dim/--sinphi with optional --r/--p and
--k-factor); --k overrides the generated bias range with an absolute
value.  Tables print 6 significant digits; CSV and JSON carry full
precision.  Exit codes: 0 success, 1 validation failure, 2 usage or
domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from . import selfcheck
from .errors import ArgumentOutOfRange, BallsepError
from .geometry import Ball, SeparationInstance, make_instance, symmetric_instance
from .montecarlo import (
    DEFAULT_SEED,
    McConfig,
    estimate_p_bias,
    estimate_p_full,
    estimate_p_weight,
)
from .probability import (
    asymptotic_envelope,
    p_fully_random,
    p_random_bias,
    p_random_weight,
    separation_report,
)
from .tessellation import MODES, estimate_all_pairs, plan_width

_EXACT_COLUMNS = ("n", "delta", "r", "p", "k", "sin_phi", "q", "p_bias", "p_weight", "p_full")
_SWEEP_COLUMNS = _EXACT_COLUMNS + ("envelope",)
_ESTIMATE_COLUMNS = ("estimator", "mean", "std_error", "exact", "z")
_TESSELLATE_COLUMNS = (
    "mode",
    "width",
    "samples",
    "per_pair_exact",
    "predicted",
    "estimate",
    "std_error",
    "target",
)

_EXACT_BY_MODE = {
    "fully-random": p_fully_random,
    "random-weight": p_random_weight,
    "random-bias": p_random_bias,
}


def _merge_vector_flags(argv: list) -> list:
    # argparse treats "-2,0" after "--c" as an unknown flag; fold the
    # value into the same token so negative coordinates parse
    merged = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in ("--c", "--x") and i + 1 < len(argv) and not argv[i + 1].startswith("--"):
            merged.append(f"{token}={argv[i + 1]}")
            i += 2
        else:
            merged.append(token)
            i += 1
    return merged


def _parse_vector(text: str, name: str) -> list:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ArgumentOutOfRange(f"could not parse {name} vector from {text!r}")
    if not values:
        raise ArgumentOutOfRange(f"{name} vector is empty")
    return values


def _parse_int_list(text: str, name: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo_text, hi_text = part.split("..", 1)
                lo, hi = int(lo_text), int(hi_text)
                if hi < lo:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise ArgumentOutOfRange(f"could not parse {name} list from {text!r}")
    if not out:
        raise ArgumentOutOfRange(f"{name} list is empty")
    return out


def _parse_float_list(text: str, name: str) -> list:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ArgumentOutOfRange(f"could not parse {name} list from {text!r}")
    if not values:
        raise ArgumentOutOfRange(f"{name} list is empty")
    return values


def _instance_from_args(args) -> SeparationInstance:
    explicit = args.c is not None or args.x is not None
    generated = args.dim is not None or args.sinphi is not None
    if explicit and generated:
        raise ArgumentOutOfRange("give either --c/--x or --dim/--sinphi, not both")
    if explicit:
        if args.c is None or args.x is None:
            raise ArgumentOutOfRange("explicit instances need both --c and --x")
        if args.k is None:
            raise ArgumentOutOfRange("explicit instances need --k")
        ball_a = Ball(_parse_vector(args.c, "--c"), args.r)
        ball_b = Ball(_parse_vector(args.x, "--x"), args.p)
        return make_instance(ball_a, ball_b, args.k)
    if args.dim is None or args.sinphi is None:
        raise ArgumentOutOfRange(
            "specify an instance with --c/--x/--k or with --dim/--sinphi"
        )
    inst = symmetric_instance(args.dim, args.sinphi, r=args.r, p=args.p, k_factor=args.k_factor)
    if args.k is not None:
        inst = make_instance(inst.ball_a, inst.ball_b, args.k)
    return inst


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if value is None:
        return ""
    return str(value)


def _csv_text(columns, records) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_cell(record[name]) for name in columns])
    return buffer.getvalue()


def _json_lines(records) -> str:
    return "".join(json.dumps(record) + "\n" for record in records)


def _table_value(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    if value is None:
        return "-"
    return str(value)


def _key_value_text(record) -> str:
    width = max(len(name) for name in record)
    lines = [f"{name:<{width}}  {_table_value(value)}" for name, value in record.items()]
    return "\n".join(lines) + "\n"


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _exact_record(inst: SeparationInstance) -> dict:
    report = separation_report(inst)
    return {
        "n": inst.dimension,
        "delta": inst.gap,
        "r": inst.ball_a.radius,
        "p": inst.ball_b.radius,
        "k": inst.bias_half_range,
        "sin_phi": report.sin_phi,
        "q": report.q_value,
        "p_bias": report.p_random_bias,
        "p_weight": report.p_random_weight,
        "p_full": report.p_fully_random,
    }


def cmd_exact(args) -> int:
    record = _exact_record(_instance_from_args(args))
    if args.format == "json":
        text = json.dumps(record, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(_EXACT_COLUMNS, [record])
    else:
        text = _key_value_text(record)
    _emit(text, args.out)
    return 0


def cmd_estimate(args) -> int:
    inst = _instance_from_args(args)
    cfg = McConfig(samples=args.samples, seed=args.seed, chunks=args.chunks)
    chosen = ("bias", "weight", "full") if args.which == "all" else (args.which,)
    runners = {
        "bias": (estimate_p_bias, p_random_bias),
        "weight": (estimate_p_weight, p_random_weight),
        "full": (estimate_p_full, p_fully_random),
    }
    records = []
    for name in chosen:
        run, closed = runners[name]
        estimate = run(inst, cfg)
        exact = closed(inst)
        if estimate.std_error > 0.0:
            z = (estimate.mean - exact) / estimate.std_error
        elif estimate.mean == exact:
            z = 0.0
        else:
            z = math.copysign(math.inf, estimate.mean - exact)
        records.append(
            {
                "estimator": name,
                "mean": estimate.mean,
                "std_error": estimate.std_error,
                "exact": exact,
                "z": z,
            }
        )
    if args.format == "json":
        text = _json_lines(records)
    elif args.format == "csv":
        text = _csv_text(_ESTIMATE_COLUMNS, records)
    else:
        header = f"{'estimator':<10} {'mean':>12} {'std_error':>12} {'exact':>12} {'z':>9}"
        rows = [
            f"{r['estimator']:<10} {r['mean']:>12.6g} {r['std_error']:>12.6g} "
            f"{r['exact']:>12.6g} {r['z']:>9.3g}"
            for r in records
        ]
        text = "\n".join([header] + rows) + "\n"
    _emit(text, args.out)
    return 0


def cmd_sweep(args) -> int:
    dims = sorted(set(_parse_int_list(args.dim, "--dim")))
    deltas = sorted(set(_parse_float_list(args.delta, "--delta")))
    if not args.k_factor >= 1.0:
        raise ArgumentOutOfRange(f"--k-factor must be >= 1, got {args.k_factor!r}")
    records = []
    for n in dims:
        for delta in deltas:
            if not delta > 0.0:
                raise ArgumentOutOfRange(f"--delta entries must be positive, got {delta!r}")
            distance = args.r + args.p + delta
            c = [0.0] * n
            c[0] = -0.5 * distance
            x = [0.0] * n
            x[0] = 0.5 * distance
            k = args.k if args.k is not None else args.k_factor * 0.5 * distance
            inst = make_instance(Ball(c, args.r), Ball(x, args.p), k)
            record = _exact_record(inst)
            record["envelope"] = asymptotic_envelope(n)
            records.append(record)
    if args.format == "json":
        text = _json_lines(records)
    else:
        text = _csv_text(_SWEEP_COLUMNS, records)
    _emit(text, args.out)
    return 0


def cmd_tessellate(args) -> int:
    if (args.width is None) == (args.target is None):
        raise ArgumentOutOfRange("exactly one of --width or --target is required")
    inst = _instance_from_args(args)
    per_pair = _EXACT_BY_MODE[args.mode](inst)
    if args.target is not None:
        width = plan_width(per_pair, args.target, args.mode).width
    else:
        width = args.width
    cfg = McConfig(samples=args.samples, seed=args.seed, chunks=args.chunks)
    estimate = estimate_all_pairs([inst], width, args.mode, cfg)
    predicted = -math.expm1(width * math.log1p(-per_pair)) if per_pair < 1.0 else 1.0
    record = {
        "mode": args.mode,
        "width": width,
        "samples": args.samples,
        "per_pair_exact": per_pair,
        "predicted": predicted,
        "estimate": estimate.mean,
        "std_error": estimate.std_error,
        "target": args.target,
    }
    if args.format == "json":
        text = json.dumps(record, indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(_TESSELLATE_COLUMNS, [record])
    else:
        text = _key_value_text(record)
    _emit(text, args.out)
    return 0


def cmd_validate(args) -> int:
    results = selfcheck.run_all(ordering_samples=args.samples, seed=args.seed)
    lines = [result.describe() for result in results]
    for result in results:
        for cell in result.failures[:3]:
            lines.append(f"  {result.name} failing cell: {cell}")
    failed = [result for result in results if not result.passed]
    total = sum(result.cells for result in results)
    if failed:
        lines.append(f"validation FAILED in {len(failed)} of {len(results)} checks")
    else:
        lines.append(f"all {len(results)} checks passed across {total} cells")
    _emit("\n".join(lines) + "\n", args.out)
    return 1 if failed else 0


def _add_instance_flags(sub) -> None:
    sub.add_argument("--c", help="center of the first ball, comma-separated reals")
    sub.add_argument("--x", help="center of the second ball, comma-separated reals")
    sub.add_argument("--r", type=float, default=1.0, help="radius of the first ball")
    sub.add_argument("--p", type=float, default=1.0, help="radius of the second ball")
    sub.add_argument("--k", type=float, default=None, help="bias half range (absolute)")
    sub.add_argument("--dim", type=int, default=None, help="dimension for the symmetric generator")
    sub.add_argument("--sinphi", type=float, default=None, help="sin of the cone half angle")
    sub.add_argument(
        "--k-factor",
        type=float,
        default=1.0,
        help="bias range as a multiple of max(|c|, |x|)",
    )


def _add_output_flags(sub, default_format=None) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default=default_format)
    sub.add_argument("--out", default=None, help="write output to FILE instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ballsep",
        description="Separation probabilities for ball pairs under partly random hyperplanes",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("exact", help="closed-form probabilities for one instance")
    _add_instance_flags(sub)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_exact)

    sub = commands.add_parser("estimate", help="Monte Carlo estimates next to the closed forms")
    _add_instance_flags(sub)
    sub.add_argument("--samples", type=int, default=100000)
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--chunks", type=int, default=1)
    sub.add_argument("--which", choices=("full", "weight", "bias", "all"), default="all")
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_estimate)

    sub = commands.add_parser("sweep", help="closed-form table over a dimension-by-gap grid")
    sub.add_argument("--dim", required=True, help="dimensions, e.g. 2,3,10 or 2..500")
    sub.add_argument("--delta", required=True, help="gaps, comma-separated positive reals")
    sub.add_argument("--r", type=float, default=1.0)
    sub.add_argument("--p", type=float, default=1.0)
    sub.add_argument("--k", type=float, default=None, help="absolute bias half range for all cells")
    sub.add_argument("--k-factor", type=float, default=1.0)
    _add_output_flags(sub, default_format="csv")
    sub.set_defaults(func=cmd_sweep)

    sub = commands.add_parser("tessellate", help="multi-plane success estimation and width planning")
    _add_instance_flags(sub)
    sub.add_argument("--width", type=int, default=None, help="number of hyperplanes")
    sub.add_argument("--target", type=float, default=None, help="target success probability")
    sub.add_argument("--mode", choices=MODES, default="fully-random")
    sub.add_argument("--samples", type=int, default=10000)
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--chunks", type=int, default=1)
    _add_output_flags(sub)
    sub.set_defaults(func=cmd_tessellate)

    sub = commands.add_parser("validate", help="run the built-in invariant grids")
    sub.add_argument("--samples", type=int, default=10000, help="random ordering-chain instances")
    sub.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = _merge_vector_flags(list(argv))
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BallsepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
