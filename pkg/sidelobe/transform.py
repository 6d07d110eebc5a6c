"""FFT evaluation of the grid products A^H x, A z (2N bins) and their N-bin periodic analogs.

Convention: forward kernel exp(-j*2*pi*m*n/G) and an unnormalized adjoint
(conjugate kernel, no 1/G), G = 2N aperiodic or N periodic. Every scale factor
in the solvers assumes A A^H = G * I.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from sidelobe.seqcore import Mode, UnimodularSequence


def grid_size(n: int, mode: Mode) -> int:
    return 2 * n if Mode(mode) == Mode.APERIODIC else n


@dataclass(frozen=True)
class SpectrumGrid:
    values: np.ndarray
    mode: Mode

    def __post_init__(self):
        if Mode(self.mode) == Mode.APERIODIC and self.values.size % 2:
            raise ValueError(
                f"Aperiodic grid must have 2N bins, got {self.values.size}"
            )

    @property
    def n(self) -> int:
        """Sequence length the grid belongs to."""
        return self.values.size // 2 if self.mode == Mode.APERIODIC else self.values.size

    @property
    def power(self) -> np.ndarray:
        return np.abs(self.values) ** 2


def as_complex(x) -> np.ndarray:
    if isinstance(x, UnimodularSequence):
        return x.values
    return np.asarray(x, dtype=complex).reshape(-1)


def forward_grid(x, mode: Mode = Mode.APERIODIC) -> SpectrumGrid:
    """f_p = sum_n x_n exp(-j*w_p*(n-1)) on the 2N (or N) grid."""
    mode = Mode(mode)
    values = as_complex(x)
    # zero padding to 2N is done by the transform length argument
    f = sfft.fft(values, n=grid_size(values.size, mode))
    return SpectrumGrid(f, mode)


def adjoint_grid(z, mode: Mode = Mode.APERIODIC, n: int | None = None) -> np.ndarray:
    """A z: first N entries of the unnormalized inverse transform of z."""
    mode = Mode(mode)
    if isinstance(z, SpectrumGrid):
        if z.mode != mode:
            raise ValueError(f"Grid mode {z.mode.value} does not match {mode.value}")
        z = z.values
    z = np.asarray(z, dtype=complex).reshape(-1)
    if n is None:
        if mode == Mode.APERIODIC and z.size % 2:
            raise ValueError(f"Aperiodic grid must have 2N bins, got {z.size}")
        n = z.size // 2 if mode == Mode.APERIODIC else z.size
    if n < 1 or z.size != grid_size(n, mode):
        raise ValueError(
            f"Grid of length {z.size} does not match N={n} in {mode.value} mode"
        )
    # norm="forward" leaves the inverse unscaled
    return sfft.ifft(z, norm="forward")[:n]
