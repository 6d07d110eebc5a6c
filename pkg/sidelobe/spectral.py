"""Spectral-MISL: ISL minimization with a lambda-weighted stopband power penalty.

The update replaces p by p_bar = p + lambda/2 on the stopband bins. That step
descends sum_p (|f_p|^2 - N)^2 + lambda * P = 4N * ISL + lambda * P, so the
objective tracked here, on the ISL scale, is

    J(x) = ISL(x) + lambda * P(x) / (4N),   P(x) = sum_{k in Omega} |f_k|^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from sidelobe.metrics import check_bins, isl_from_power
from sidelobe.misl import fixed_point_map, iterate
from sidelobe.seqcore import DesignRun, Mode, Trace, UnimodularSequence, Variant
from sidelobe.transform import forward_grid

# Bin edges that land within this distance of an integer count as on the edge
_EDGE_TOL = 1e-9


@dataclass(frozen=True)
class SpectralMask:
    """Stopband bins (0-based, w_k = pi*k/N on the 2N grid) and penalty weight."""

    omega: tuple[int, ...]
    lam: float

    def __post_init__(self):
        omega = tuple(sorted(set(int(k) for k in self.omega)))
        if omega and omega[0] < 0:
            raise ValueError("Stopband bin indices must be nonnegative")
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise ValueError(f"Penalty weight lambda must be >= 0, got {self.lam}")
        object.__setattr__(self, "omega", omega)

    def bins(self, n: int) -> np.ndarray:
        return check_bins(self.omega, n)

    def bump(self, n: int) -> np.ndarray:
        """lambda/2 on stopband bins, 0 elsewhere."""
        b = np.zeros(2 * n)
        b[self.bins(n)] = self.lam / 2
        return b

    @classmethod
    def from_bands(cls, bands, n: int, lam: float) -> SpectralMask:
        return cls(band_to_indices(bands, n), lam)


def band_to_indices(bands, n: int) -> tuple[int, ...]:
    """All 0-based bins k with lo <= pi*k/N < hi for some band [lo, hi)."""
    if n < 1:
        raise ValueError(f"Sequence length must be at least 1, got {n}")
    indices: set[int] = set()
    for band in bands:
        lo, hi = (float(v) for v in band)
        if not (0 <= lo < hi <= 2 * math.pi + _EDGE_TOL):
            raise ValueError(
                f"Band [{lo}, {hi}) must satisfy 0 <= lo < hi <= 2*pi"
            )
        first = math.ceil(lo * n / math.pi - _EDGE_TOL)
        stop = min(math.ceil(hi * n / math.pi - _EDGE_TOL), 2 * n)
        indices.update(range(first, stop))
    return tuple(sorted(indices))


def penalized_from_power(p: np.ndarray, n: int, mask: SpectralMask) -> float:
    stop = float(np.sum(p[mask.bins(n)]))
    return isl_from_power(p, n, Mode.APERIODIC) + mask.lam * stop / (4 * n)


def penalized_objective(x: UnimodularSequence, mask: SpectralMask) -> float:
    """J(x) = ISL(x) + lambda * spectral_power(x, Omega) / (4N)."""
    return penalized_from_power(forward_grid(x, Mode.APERIODIC).power, x.n, mask)


def spectral_misl_step(x: UnimodularSequence, mask: SpectralMask) -> UnimodularSequence:
    # with lambda = 0 or an empty mask the bump is all zeros and p_bar == p
    bump = mask.bump(x.n) if mask.lam and mask.omega else None
    x_next, _, _ = fixed_point_map(x, Mode.APERIODIC, bump)
    return x_next


def run_spectral(run: DesignRun, x0: UnimodularSequence) -> tuple[UnimodularSequence, Trace]:
    if run.variant != Variant.SPECTRAL_MISL or run.mask is None:
        raise ValueError("run_spectral needs variant spectral-misl and a mask")
    mask = run.mask
    mask.bins(run.n)

    if run.accelerate:
        from sidelobe.accel import squarem_step

        def step(x):
            x_next, record = squarem_step(x, Mode.APERIODIC, mask=mask)
            return x_next, record.objective_after, {
                "alpha": record.alpha, "halvings": record.halvings,
            }
    else:
        def step(x):
            x_next = spectral_misl_step(x, mask)
            return x_next, penalized_objective(x_next, mask), {}

    return iterate(run, x0, step, penalized_objective(x0, mask), objective_name="penalized")
