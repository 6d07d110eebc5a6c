"""Accelerated MISL: SQUAREM extrapolation and backtracking on the majorizer constant L."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from sidelobe.config import LADDER_SLACK, MAX_SQUAREM_HALVINGS
from sidelobe.metrics import isl_freq, isl_from_power
from sidelobe.misl import fixed_point_map, iterate
from sidelobe.seqcore import DesignRun, Mode, Trace, UnimodularSequence, Variant
from sidelobe.transform import adjoint_grid, forward_grid, grid_size

if TYPE_CHECKING:
    from sidelobe.spectral import SpectralMask

logger = logging.getLogger(__name__)


class LadderExhaustedError(RuntimeError):
    """Backtracking went past the rung where u_L is a global majorizer."""


@dataclass
class SquaremStepRecord:
    alpha: float
    halvings: int
    objective_before: float
    objective_after: float


@dataclass
class BacktrackStepRecord:
    i_k: int
    L: float
    accepted: bool
    objective_before: float = math.nan
    objective_after: float = math.nan


def ladder_bound(n: int) -> int:
    """Rung at which (2^i - 1) N >= N^2, i.e. L >= p_max + N^2."""
    return math.ceil(math.log2(n + 1))


def extrapolate(
    x: UnimodularSequence,
    x1: UnimodularSequence,
    x2: UnimodularSequence,
    alpha: float,
) -> UnimodularSequence:
    """exp(j arg(x - 2 alpha r + alpha^2 v)), r = x1 - x, v = x2 - x1 - r."""
    r = x1.values - x.values
    v = x2.values - x1.values - r
    return UnimodularSequence.from_complex(x.values - 2 * alpha * r + alpha**2 * v)


def squarem_step(
    x: UnimodularSequence,
    mode: Mode = Mode.APERIODIC,
    mask: SpectralMask | None = None,
) -> tuple[UnimodularSequence, SquaremStepRecord]:
    """One SQUAREM step over the MISL map (spectral-MISL map when a mask is given).

    The step length is pulled toward -1 by alpha <- (alpha - 1)/2 until the
    objective does not increase.
    """
    mode = Mode(mode)
    if mask is not None:
        from sidelobe.spectral import penalized_objective, spectral_misl_step

        def base(z):
            return spectral_misl_step(z, mask)

        def objective(z):
            return penalized_objective(z, mask)
    else:
        def base(z):
            return fixed_point_map(z, mode)[0]

        def objective(z):
            return isl_freq(z, mode)

    before = objective(x)
    x1 = base(x)
    x2 = base(x1)
    r = x1.values - x.values
    v = x2.values - x1.values - r
    r_norm, v_norm = np.linalg.norm(r), np.linalg.norm(v)
    if r_norm == 0 or v_norm == 0:
        return x2, SquaremStepRecord(-1.0, 0, before, objective(x2))

    alpha = -r_norm / v_norm
    candidate = extrapolate(x, x1, x2, alpha)
    after = objective(candidate)
    halvings = 0
    while after > before:
        if halvings == MAX_SQUAREM_HALVINGS:
            logger.warning(
                "SQUAREM backtracking hit %d halvings at N=%d, falling back to the plain double step",
                MAX_SQUAREM_HALVINGS, x.n,
            )
            candidate, after = x2, objective(x2)
            break
        alpha = (alpha - 1) / 2
        halvings += 1
        candidate = extrapolate(x, x1, x2, alpha)
        after = objective(candidate)
    return candidate, SquaremStepRecord(alpha, halvings, before, after)


def backtracking_misl_step(
    x: UnimodularSequence, mode: Mode = Mode.APERIODIC
) -> tuple[UnimodularSequence, BacktrackStepRecord]:
    """Smallest L on the ladder p_max + (2^i - 1) N whose minimizer x_L
    satisfies u_L(x_L, x) >= f(x_L), f = sum_p |a_p^H x|^4."""
    mode = Mode(mode)
    n = x.n
    f = forward_grid(x, mode).values
    p = np.abs(f) ** 2
    p_max = float(np.max(p))
    constant = 4 * grid_size(n, mode) * n
    quartic_k = float(np.sum(p**2))
    before = isl_from_power(p, n, mode)

    for i_k in range(ladder_bound(n) + 3):
        L = p_max + (2**i_k - 1) * n
        x_L = UnimodularSequence.from_complex(adjoint_grid((L - p) * f, mode, n))
        f_L = forward_grid(x_L, mode).values
        p_L = np.abs(f_L) ** 2
        quartic_L = float(np.sum(p_L**2))
        bound = 4 * np.real(np.vdot(f_L, (p - L) * f)) + constant * L - 3 * quartic_k
        if bound >= quartic_L - LADDER_SLACK * max(1.0, quartic_L):
            record = BacktrackStepRecord(
                i_k, L, True, before, isl_from_power(p_L, n, mode)
            )
            return x_L, record
        logger.debug("Ladder rung %d rejected (L=%.6e)", i_k, L)
    raise LadderExhaustedError(
        f"No ladder rung up to {ladder_bound(n) + 2} satisfied u_L >= f at N={n}"
    )


def run_accelerated(run: DesignRun, x0: UnimodularSequence) -> tuple[UnimodularSequence, Trace]:
    if run.variant == Variant.ACCEL_MISL:
        def step(x):
            x_next, record = squarem_step(x, run.mode)
            return x_next, record.objective_after, {
                "alpha": record.alpha, "halvings": record.halvings,
            }
    elif run.variant == Variant.BACKTRACK_MISL:
        def step(x):
            x_next, record = backtracking_misl_step(x, run.mode)
            return x_next, record.objective_after, {"i_k": record.i_k, "L": record.L}
    else:
        raise ValueError(f"run_accelerated cannot run variant '{run.variant.value}'")

    return iterate(run, x0, step, isl_freq(x0, run.mode))
