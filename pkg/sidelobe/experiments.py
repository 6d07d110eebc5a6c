"""Design runs, paired multi-variant trials and the cross-initialization experiment."""

from __future__ import annotations

import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor

from pydantic import BaseModel, ConfigDict

from sidelobe.accel import run_accelerated
from sidelobe.baseline import run_can
from sidelobe.config import DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE
from sidelobe.metrics import isl, merit_factor
from sidelobe.misl import run_misl
from sidelobe.seqcore import DesignRun, Mode, Trace, UnimodularSequence, Variant, random_unimodular
from sidelobe.spectral import run_spectral
from sidelobe.storage import MaskFile

logger = logging.getLogger(__name__)

_RUNNERS = {
    Variant.MISL: run_misl,
    Variant.ACCEL_MISL: run_accelerated,
    Variant.BACKTRACK_MISL: run_accelerated,
    Variant.SPECTRAL_MISL: run_spectral,
    Variant.CAN: run_can,
    Variant.PECAN: run_can,
}

AVAILABLE_VARIANTS = [v.value for v in Variant]

# merit factor is infinite for sidelobe-free sequences; keep it as Infinity in JSON
_REPORT_CONFIG = ConfigDict(ser_json_inf_nan="constants")


def run_design(run: DesignRun, x0: UnimodularSequence) -> tuple[UnimodularSequence, Trace]:
    """Dispatch a design run to the solver for its variant."""
    return _RUNNERS[run.variant](run, x0)


class TrialRecord(BaseModel):
    model_config = _REPORT_CONFIG

    variant: str
    mode: str
    n: int
    seed: int
    final_objective: float
    aperiodic_isl: float
    merit_factor: float
    iterations: int
    converged: bool
    wall_time: float


class VariantSummary(BaseModel):
    model_config = _REPORT_CONFIG

    variant: str
    n: int
    trials: int
    mean_merit_factor: float
    median_merit_factor: float
    mean_wall_time: float
    median_wall_time: float


class ExperimentReport(BaseModel):
    model_config = _REPORT_CONFIG

    mode: str
    base_seed: int
    tolerance: float
    max_iters: int
    records: list[TrialRecord]
    aggregates: list[VariantSummary]

    def summary(self, variant: str, n: int) -> VariantSummary:
        for item in self.aggregates:
            if item.variant == variant and item.n == n:
                return item
        raise KeyError(f"No aggregate for {variant} at N={n}")


def run_trial(
    variant: Variant,
    n: int,
    seed: int,
    mode: Mode = Mode.APERIODIC,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERS,
    mask_file: MaskFile | None = None,
) -> TrialRecord:
    """One paired trial: every variant given the same (n, seed) starts from the same sequence."""
    run = DesignRun(
        variant=variant,
        n=n,
        mode=mode,
        seed=seed,
        tolerance=tolerance,
        max_iters=max_iters,
        mask=mask_file.to_mask(n) if mask_file is not None else None,
    )
    x0 = random_unimodular(n, seed)
    started = time.perf_counter()
    x, trace = run_design(run, x0)
    elapsed = time.perf_counter() - started
    return TrialRecord(
        variant=run.variant.value,
        mode=run.mode.value,
        n=n,
        seed=seed,
        final_objective=trace.final_objective,
        aperiodic_isl=isl(x, Mode.APERIODIC),
        merit_factor=merit_factor(x),
        iterations=trace.iterations,
        converged=trace.converged,
        wall_time=elapsed,
    )


def _summarize(records: list[TrialRecord]) -> list[VariantSummary]:
    groups: dict[tuple[str, int], list[TrialRecord]] = {}
    for record in records:
        groups.setdefault((record.variant, record.n), []).append(record)
    summaries = []
    for (variant, n), group in sorted(groups.items()):
        mf = sorted(r.merit_factor for r in group)
        times = sorted(r.wall_time for r in group)
        summaries.append(
            VariantSummary(
                variant=variant,
                n=n,
                trials=len(group),
                mean_merit_factor=statistics.fmean(mf),
                median_merit_factor=statistics.median(mf),
                mean_wall_time=statistics.fmean(times),
                median_wall_time=statistics.median(times),
            )
        )
    return summaries


def compare(
    variants: list[Variant],
    lengths: list[int],
    trials: int,
    base_seed: int = 0,
    mode: Mode = Mode.APERIODIC,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERS,
    jobs: int = 1,
    mask_file: MaskFile | None = None,
) -> ExperimentReport:
    """Run every variant on trials seeded base_seed + trial_index for each length."""
    if trials < 1:
        raise ValueError(f"Trial count must be at least 1, got {trials}")
    if not variants or not lengths:
        raise ValueError("At least one variant and one length are required")
    for n in lengths:
        if n < 1:
            raise ValueError(f"Sequence length must be at least 1, got {n}")
    variants = [Variant(v) for v in variants]
    if Variant.SPECTRAL_MISL in variants and mask_file is None:
        raise ValueError("spectral-misl requires a mask file")

    jobs_args = [
        (variant, n, base_seed + t, Mode(mode), tolerance, max_iters, mask_file)
        for n in lengths
        for t in range(trials)
        for variant in variants
    ]
    logger.info("Running %d trials on %d worker(s)", len(jobs_args), jobs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(run_trial, *zip(*jobs_args)))
    else:
        records = [run_trial(*args) for args in jobs_args]

    records.sort(key=lambda r: (r.variant, r.n, r.seed))
    return ExperimentReport(
        mode=Mode(mode).value,
        base_seed=base_seed,
        tolerance=tolerance,
        max_iters=max_iters,
        records=records,
        aggregates=_summarize(records),
    )


def cross_initialize(
    first: Variant,
    second: Variant,
    n: int,
    seed: int,
    mode: Mode = Mode.APERIODIC,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> dict[str, Trace]:
    """Run each variant to convergence from a shared random start, then restart
    the other variant from its output. Keys look like "can<-accel-misl"."""
    x0 = random_unimodular(n, seed)
    traces: dict[str, Trace] = {}
    for a, b in ((Variant(first), Variant(second)), (Variant(second), Variant(first))):
        run_a = DesignRun(variant=a, n=n, mode=mode, seed=seed, tolerance=tolerance, max_iters=max_iters)
        x_a, traces[a.value] = run_design(run_a, x0)
        run_b = DesignRun(variant=b, n=n, mode=mode, seed=seed, tolerance=tolerance, max_iters=max_iters)
        _, traces[f"{b.value}<-{a.value}"] = run_design(run_b, x_a)
    return traces


def report_rows(report: ExperimentReport):
    """CSV rows of merit factor and runtime against N."""
    for item in report.aggregates:
        yield [
            item.variant, item.n, item.trials,
            item.mean_merit_factor, item.median_merit_factor,
            item.mean_wall_time, item.median_wall_time,
        ]


REPORT_COLUMNS = [
    "variant", "n", "trials",
    "mean_mf", "median_mf", "mean_wall_time", "median_wall_time",
]
