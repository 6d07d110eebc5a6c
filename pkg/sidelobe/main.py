"""Command line: design, compare and validate subcommands."""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

import numpy as np
from dotenv import load_dotenv

from sidelobe.config import DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE, VERSION, default_jobs, log_level, seed_override
from sidelobe.experiments import (
    AVAILABLE_VARIANTS,
    REPORT_COLUMNS,
    compare,
    cross_initialize,
    report_rows,
    run_design,
)
from sidelobe.metrics import correlation_level, isl, merit_factor, peak_correlation_level_db, power_spectrum
from sidelobe.seqcore import DesignRun, Mode, Variant, initial_sequence
from sidelobe.spectral import penalized_objective
from sidelobe.storage import (
    MaskFile,
    read_mask,
    read_sequence,
    write_correlation_level,
    write_csv,
    write_json,
    write_sequence,
    write_spectrum,
    write_trace,
)
from sidelobe.validation import format_table, run_checks

logger = logging.getLogger(__name__)

INITIALIZERS = ("random", "golomb", "frank")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _tolerance(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.APERIODIC.value)
    parser.add_argument("--seed", type=int, default=0, help="overridden by SIDELOBE_SEED")
    parser.add_argument("--tol", type=_tolerance, default=DEFAULT_TOLERANCE)
    parser.add_argument("--max-iters", type=_positive_int, default=DEFAULT_MAX_ITERS)
    parser.add_argument("--mask", type=Path, help="spectral mask JSON (bands or indices)")
    parser.add_argument("--out-dir", type=Path, default=Path("results"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sidelobe", description="Unimodular sequence design with low integrated sidelobe level."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    design = sub.add_parser("design", help="run one design and write its artifacts")
    design.add_argument("--variant", choices=AVAILABLE_VARIANTS, default=Variant.ACCEL_MISL.value)
    design.add_argument("-n", "--n", type=int, help="sequence length (taken from --init when it is a file)")
    design.add_argument(
        "--init", default="random", help="random, golomb, frank, or a sequence file (.json or text)"
    )
    design.add_argument("--accelerate", action="store_true", help="SQUAREM-wrap spectral-misl")
    _common_flags(design)

    comp = sub.add_parser("compare", help="paired trials over variants and lengths")
    comp.add_argument("--variant", nargs="+", choices=AVAILABLE_VARIANTS, required=True)
    comp.add_argument("-n", "--n", type=int, nargs="+", required=True)
    comp.add_argument("--trials", type=_positive_int, default=1)
    comp.add_argument("--jobs", type=_positive_int, default=None, help="default: SIDELOBE_JOBS or 1")
    comp.add_argument(
        "--cross-init", action="store_true",
        help="two variants, one length: restart each from the other's output",
    )
    _common_flags(comp)

    sub.add_parser("validate", help="run the oracle check suite")
    return parser


def _seed(args) -> int:
    override = seed_override()
    seed = args.seed if override is None else override
    if seed < 0:
        raise ValueError(f"Seed must be an unsigned integer, got {seed}")
    return seed


def _band_power_db(power: np.ndarray, bins: np.ndarray) -> tuple[float, float]:
    stop = np.zeros(power.size, dtype=bool)
    stop[bins] = True
    with np.errstate(divide="ignore"):
        stop_db = 10 * float(np.log10(power[stop].mean())) if stop.any() else -math.inf
        pass_db = 10 * float(np.log10(power[~stop].mean())) if (~stop).any() else -math.inf
    return stop_db, pass_db


def cmd_design(args) -> int:
    seed = _seed(args)
    mode = Mode(args.mode)
    if args.init in INITIALIZERS:
        if args.n is None:
            raise ValueError("-n is required unless --init names a sequence file")
        if args.n < 1:
            raise ValueError(f"Sequence length must be at least 1, got {args.n}")
        x0 = initial_sequence(args.init, args.n, seed)
    else:
        x0 = read_sequence(Path(args.init))
        if args.n is not None and args.n != x0.n:
            raise ValueError(f"-n {args.n} does not match the {x0.n}-entry initial sequence")
    n = x0.n
    mask = read_mask(args.mask, n) if args.mask else None
    run = DesignRun(
        variant=Variant(args.variant),
        n=n,
        mode=mode,
        seed=seed,
        tolerance=args.tol,
        max_iters=args.max_iters,
        mask=mask,
        accelerate=args.accelerate,
    )

    x, trace = run_design(run, x0)

    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = f"{run.variant.value}-{run.mode.value}-n{n}-seed{seed}"
    write_sequence(out_dir / f"{stem}.json", x)
    write_trace(out_dir / f"{stem}-trace.csv", trace)
    write_correlation_level(out_dir / f"{stem}-correlation.csv", *correlation_level(x, run.mode))
    if run.mode == Mode.APERIODIC:
        write_spectrum(out_dir / f"{stem}-spectrum.csv", power_spectrum(x))

    print(f"variant      {run.variant.value} ({run.mode.value}), N={n}, seed={seed}")
    print(f"iterations   {trace.iterations} ({'converged' if trace.converged else 'max_iters reached'})")
    print(f"ISL          {isl(x, run.mode):.6e}")
    print(f"merit factor {merit_factor(x):.4f}")
    print(f"peak level   {peak_correlation_level_db(x, run.mode):.2f} dB")
    if mask is not None:
        stop_db, pass_db = _band_power_db(power_spectrum(x), mask.bins(n))
        print(f"penalized J  {penalized_objective(x, mask):.6e}")
        print(f"stopband     {stop_db:.2f} dB/bin, passband {pass_db:.2f} dB/bin")
    print(f"artifacts    {out_dir / stem}*")
    return 0


def cmd_compare(args) -> int:
    seed = _seed(args)
    mode = Mode(args.mode)
    variants = [Variant(v) for v in args.variant]
    out_dir: Path = args.out_dir

    if args.cross_init:
        if len(variants) != 2 or len(args.n) != 1:
            raise ValueError("--cross-init needs exactly two variants and one length")
        if args.n[0] < 1:
            raise ValueError(f"Sequence length must be at least 1, got {args.n[0]}")
        traces = cross_initialize(
            variants[0], variants[1], args.n[0], seed, mode, args.tol, args.max_iters
        )
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, trace in traces.items():
            path = out_dir / f"cross-{name.replace('<-', '-from-')}-n{args.n[0]}-trace.csv"
            write_trace(path, trace)
            print(f"{name:<32} final ISL {trace.final_objective:.6e} after {trace.iterations} iterations")
        return 0

    mask_file = None
    if args.mask:
        mask_file = MaskFile.model_validate_json(args.mask.read_text())
    report = compare(
        variants,
        args.n,
        args.trials,
        base_seed=seed,
        mode=mode,
        tolerance=args.tol,
        max_iters=args.max_iters,
        jobs=args.jobs or default_jobs(),
        mask_file=mask_file,
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    write_json(out_dir / "report.json", report)
    write_csv(out_dir / "report.csv", REPORT_COLUMNS, report_rows(report))
    for item in report.aggregates:
        print(
            f"{item.variant:<16} N={item.n:<6} mean MF {item.mean_merit_factor:8.3f}  "
            f"median MF {item.median_merit_factor:8.3f}  mean time {item.mean_wall_time:.3f}s"
        )
    return 0


def cmd_validate(args) -> int:
    results = run_checks()
    print(format_table(results))
    return 0 if all(r.passed for r in results) else 1


_COMMANDS = {
    "design": cmd_design,
    "compare": cmd_compare,
    "validate": cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    load_dotenv()
    logging.basicConfig(
        level=log_level(), format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as e:
        logger.error("%s", e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
