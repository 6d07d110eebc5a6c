"""CAN and PeCAN baselines: alternating projections on ||A^H x - sqrt(N) v||^2."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from sidelobe.metrics import isl_from_power
from sidelobe.misl import iterate
from sidelobe.seqcore import DesignRun, Mode, Trace, UnimodularSequence, Variant, phase_of
from sidelobe.transform import adjoint_grid, forward_grid


@dataclass
class CanStepRecord:
    objective_can: float
    isl_value: float


def can_record(x: UnimodularSequence, mode: Mode = Mode.APERIODIC) -> CanStepRecord:
    """CAN criterion with v = exp(j arg(A^H x)) (the optimal v for this x), plus ISL."""
    grid = forward_grid(x, mode)
    magnitude = np.abs(grid.values)
    return CanStepRecord(
        objective_can=float(np.sum((magnitude - np.sqrt(x.n)) ** 2)),
        isl_value=isl_from_power(magnitude**2, x.n, mode),
    )


def can_objective(x: UnimodularSequence, mode: Mode = Mode.APERIODIC) -> float:
    return can_record(x, mode).objective_can


def can_step(x: UnimodularSequence, mode: Mode = Mode.APERIODIC) -> UnimodularSequence:
    """v_p = exp(j arg(f_p)); x_n = exp(j arg((A v)_n)). Periodic mode is PeCAN."""
    mode = Mode(mode)
    f = forward_grid(x, mode).values
    v = np.exp(1j * phase_of(f))
    return UnimodularSequence.from_complex(adjoint_grid(v, mode, x.n))


def run_can(run: DesignRun, x0: UnimodularSequence) -> tuple[UnimodularSequence, Trace]:
    """Stops on the relative ISL change like the MISL family; CAN's ISL need not be monotone."""
    if run.variant not in (Variant.CAN, Variant.PECAN):
        raise ValueError(f"run_can cannot run variant '{run.variant.value}'")
    mode = Mode.PERIODIC if run.variant == Variant.PECAN else run.mode

    def step(x):
        x_next = can_step(x, mode)
        record = can_record(x_next, mode)
        return x_next, record.isl_value, {"objective_can": record.objective_can}

    start = can_record(x0, mode)
    return iterate(
        run, x0, step, start.isl_value, extras0={"objective_can": start.objective_can}
    )
