"""Autocorrelation, ISL (time and frequency domain), merit factor, correlation level, spectral power."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from sidelobe.seqcore import Mode, UnimodularSequence
from sidelobe.transform import as_complex, forward_grid

# Lags are summed directly up to this length so exact zeros stay exact;
# longer sequences go through the FFT.
DIRECT_ACF_MAX_N = 4096


@dataclass(frozen=True)
class AutocorrelationProfile:
    """Lags r_0..r_{N-1}; r_{-k} = conj(r_k) is implied."""

    lags: np.ndarray
    mode: Mode

    @property
    def n(self) -> int:
        return self.lags.size

    @property
    def sidelobes(self) -> np.ndarray:
        return self.lags[1:]

    def symmetric(self) -> tuple[np.ndarray, np.ndarray]:
        """(lag indices 1-N..N-1, r at those lags)."""
        k = np.arange(1 - self.n, self.n)
        r = np.concatenate([np.conj(self.lags[:0:-1]), self.lags])
        return k, r


def autocorrelation(x, mode: Mode = Mode.APERIODIC) -> AutocorrelationProfile:
    """r_k = sum_n x_n conj(x_{n+k}) (cyclic index in periodic mode), k = 0..N-1."""
    mode = Mode(mode)
    v = as_complex(x)
    n = v.size
    if n <= DIRECT_ACF_MAX_N:
        if mode == Mode.APERIODIC:
            # np.correlate(v, v)[N-1-k] = sum_m v[m] conj(v[m+k])
            lags = np.correlate(v, v, mode="full")[n - 1::-1]
        else:
            wrapped = np.concatenate([v, v[:-1]])
            lags = np.conj(np.correlate(wrapped, v, mode="valid"))
    else:
        p = forward_grid(v, mode).power
        lags = np.conj(sfft.ifft(p))[:n]
    return AutocorrelationProfile(np.asarray(lags, dtype=complex), mode)


def isl(x, mode: Mode = Mode.APERIODIC) -> float:
    """Integrated sidelobe level sum_{k=1}^{N-1} |r_k|^2."""
    return float(np.sum(np.abs(autocorrelation(x, mode).sidelobes) ** 2))


def isl_from_power(p: np.ndarray, n: int, mode: Mode = Mode.APERIODIC) -> float:
    """Frequency-domain ISL from the grid power |f_p|^2 of a unimodular sequence."""
    if Mode(mode) == Mode.APERIODIC:
        return float(np.sum((p - n) ** 2) / (4 * n))
    return float(np.sum((p - n) ** 2) / n)


def isl_freq(x, mode: Mode = Mode.APERIODIC) -> float:
    """ISL through the spectrum: (1/4N) sum (|f_p|^2 - N)^2, periodic (1/N) sum (|f_p|^2 - N)^2."""
    grid = forward_grid(x, mode)
    return isl_from_power(grid.power, grid.n, mode)


def quartic_objective(x, mode: Mode = Mode.APERIODIC) -> float:
    """f(x) = sum_p |f_p|^4, the quartic MISL majorizes."""
    return float(np.sum(forward_grid(x, mode).power ** 2))


def isl_quartic(x, mode: Mode = Mode.APERIODIC) -> float:
    """ISL via the expanded square: (f(x) - 2N^3)/(4N), periodic (f(x) - N^3)/N."""
    n = as_complex(x).size
    if Mode(mode) == Mode.APERIODIC:
        return (quartic_objective(x, mode) - 2 * n**3) / (4 * n)
    return (quartic_objective(x, mode) - n**3) / n


def merit_factor(x) -> float:
    """N^2 / (2 ISL). A sequence without sidelobes returns math.inf."""
    n = as_complex(x).size
    value = isl(x, Mode.APERIODIC)
    if value == 0:
        return math.inf
    return n**2 / (2 * value)


def correlation_level(x, mode: Mode = Mode.APERIODIC) -> tuple[np.ndarray, np.ndarray]:
    """20 log10 |r_k / r_0| over lags 1-N..N-1; exact zeros map to -inf."""
    lags, r = autocorrelation(x, mode).symmetric()
    r0 = abs(r[lags == 0][0])
    if r0 == 0:
        raise ValueError("Zero-lag autocorrelation is zero")
    with np.errstate(divide="ignore"):
        levels = 20 * np.log10(np.abs(r) / r0)
    return lags, levels


def peak_sidelobe_level(x, mode: Mode = Mode.APERIODIC) -> float:
    """max_{k>=1} |r_k|. Reported, never optimized."""
    side = autocorrelation(x, mode).sidelobes
    return float(np.max(np.abs(side))) if side.size else 0.0


def peak_correlation_level_db(x, mode: Mode = Mode.APERIODIC) -> float:
    lags, levels = correlation_level(x, mode)
    off_peak = levels[lags != 0]
    return float(np.max(off_peak)) if off_peak.size else -math.inf


def power_spectrum(x) -> np.ndarray:
    """|f_p|^2 on the 2N aperiodic grid."""
    return forward_grid(x, Mode.APERIODIC).power


def check_bins(indices, n: int) -> np.ndarray:
    indices = np.asarray(sorted(set(int(k) for k in indices)), dtype=np.int64)
    if indices.size and (indices[0] < 0 or indices[-1] >= 2 * n):
        raise ValueError(
            f"Bin indices must lie in [0, {2 * n - 1}] for N={n}"
        )
    return indices


def spectral_power(x, omega) -> float:
    """sum_{k in omega} |f_{k+1}|^2 over 0-based bins of the 2N grid."""
    n = as_complex(x).size
    bins = check_bins(omega, n)
    if not bins.size:
        return 0.0
    return float(np.sum(power_spectrum(x)[bins]))
