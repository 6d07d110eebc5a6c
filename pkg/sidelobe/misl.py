"""MISL fixed-point map and driver loop, aperiodic and periodic.

One step:
    p      = |A^H x|^2
    y      = -A (Diag(p) - p_max I - N^2 I) A^H x
    x_next = exp(j arg(y))

The same loop (`iterate`) drives every variant with the stopping rule
|J(k+1) - J(k)| / max(1, J(k)) <= tolerance on consecutive iterates,
starting from the pair (x0, x1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from sidelobe.config import DESCENT_SLACK
from sidelobe.metrics import isl_freq, isl_from_power
from sidelobe.seqcore import DesignRun, Mode, Trace, UnimodularSequence, Variant
from sidelobe.transform import adjoint_grid, as_complex, forward_grid, grid_size

logger = logging.getLogger(__name__)

# step(x) -> (next x, objective at next x, extra trace columns)
StepFn = Callable[[UnimodularSequence], tuple[UnimodularSequence, float, dict]]


@dataclass
class MislStepDiagnostics:
    p: np.ndarray
    p_max: float
    objective_before: float
    objective_after: float


def fixed_point_map(
    x: UnimodularSequence, mode: Mode, bump: np.ndarray | None = None
) -> tuple[UnimodularSequence, np.ndarray, float]:
    """Shared MISL update. `bump` is added to p before taking the max.

    Returns (next sequence, p, max of the bumped p).
    """
    n = x.n
    f = forward_grid(x, mode).values
    p = np.abs(f) ** 2
    weights = p if bump is None else p + bump
    w_max = float(np.max(weights))
    y = -adjoint_grid((weights - w_max - n**2) * f, mode, n)
    return UnimodularSequence.from_complex(y), p, w_max


def misl_step(
    x: UnimodularSequence, mode: Mode = Mode.APERIODIC
) -> tuple[UnimodularSequence, MislStepDiagnostics]:
    mode = Mode(mode)
    x_next, p, p_max = fixed_point_map(x, mode)
    diagnostics = MislStepDiagnostics(
        p=p,
        p_max=p_max,
        objective_before=isl_from_power(p, x.n, mode),
        objective_after=isl_freq(x_next, mode),
    )
    return x_next, diagnostics


def surrogate_value(
    x, x_k, mode: Mode = Mode.APERIODIC, L: float | None = None
) -> float:
    """u_L(x, x_k) = 4 Re(x^H A (Diag(p_k) - L I) A^H x_k) + 4 L G N - 3 sum p_k^2.

    G is the grid size. L defaults to p_max + N^2, where u_L is a global
    majorizer of sum_p |a_p^H x|^4 that touches it at x = x_k.
    """
    mode = Mode(mode)
    f_k = forward_grid(x_k, mode).values
    f_x = forward_grid(x, mode).values
    n = as_complex(x_k).size
    p = np.abs(f_k) ** 2
    if L is None:
        L = float(np.max(p)) + n**2
    cross = np.real(np.vdot(f_x, (p - L) * f_k))
    return float(4 * cross + 4 * L * grid_size(n, mode) * n - 3 * np.sum(p**2))


def is_nonincreasing(values, slack: float) -> bool:
    """True when each value exceeds its predecessor by at most slack * max(1, |prev|)."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return True
    prev = values[:-1]
    return bool(np.all(values[1:] <= prev + slack * np.maximum(1.0, np.abs(prev))))


def iterate(
    run: DesignRun,
    x0: UnimodularSequence,
    step: StepFn,
    objective0: float,
    objective_name: str = "isl",
    extras0: dict | None = None,
) -> tuple[UnimodularSequence, Trace]:
    """Apply `step` until the relative-change rule holds or max_iters is reached."""
    run.check_initial(x0)
    trace = Trace(objective_name=objective_name)
    trace.record(0, objective0, **(extras0 or {}))
    x, previous = x0, objective0
    for k in range(1, run.max_iters + 1):
        x, objective, extras = step(x)
        trace.record(k, objective, **extras)
        logger.debug("%s iter %d: %s = %.6e", run.variant.value, k, objective_name, objective)
        if run.variant.monotone and objective > previous + DESCENT_SLACK * max(1.0, abs(previous)):
            logger.warning(
                "%s iter %d: %s rose from %.6e to %.6e",
                run.variant.value, k, objective_name, previous, objective,
            )
        if abs(objective - previous) / max(1.0, previous) <= run.tolerance:
            trace.converged = True
            break
        previous = objective
    if trace.converged:
        logger.info(
            "%s N=%d converged after %d iterations, %s = %.6e",
            run.variant.value, run.n, trace.iterations, objective_name, trace.final_objective,
        )
    else:
        logger.warning(
            "%s N=%d stopped at max_iters=%d, %s = %.6e",
            run.variant.value, run.n, run.max_iters, objective_name, trace.final_objective,
        )
    run.trace = trace.as_pairs()
    return x, trace


def run_misl(run: DesignRun, x0: UnimodularSequence) -> tuple[UnimodularSequence, Trace]:
    if run.variant != Variant.MISL:
        raise ValueError(f"run_misl cannot run variant '{run.variant.value}'")

    def step(x):
        x_next, diagnostics = misl_step(x, run.mode)
        return x_next, diagnostics.objective_after, {"p_max": diagnostics.p_max}

    return iterate(run, x0, step, isl_freq(x0, run.mode))
