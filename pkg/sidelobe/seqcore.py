"""Unimodular sequences, design-run configuration, classic initializers."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

import numpy as np

from sidelobe.config import DEFAULT_MAX_ITERS, DEFAULT_TOLERANCE

# cos/sin of multiples of pi/2 leave residues near 1e-16
_SNAP = 1e-15

if TYPE_CHECKING:
    from sidelobe.spectral import SpectralMask


class Mode(str, enum.Enum):
    APERIODIC = "aperiodic"
    PERIODIC = "periodic"


class Variant(str, enum.Enum):
    MISL = "misl"
    ACCEL_MISL = "accel-misl"
    BACKTRACK_MISL = "backtrack-misl"
    SPECTRAL_MISL = "spectral-misl"
    CAN = "can"
    PECAN = "pecan"

    @property
    def monotone(self) -> bool:
        """MISL-family variants guarantee a nonincreasing objective trace."""
        return self not in (Variant.CAN, Variant.PECAN)


def phase_of(values: np.ndarray) -> np.ndarray:
    """Element-wise arg() with the convention arg(0) = 0.

    np.angle alone maps -0.0 + 0j to pi, so exact zeros are masked first.
    """
    values = np.asarray(values, dtype=complex)
    return np.where(values == 0, 0.0, np.angle(values))


class UnimodularSequence:
    """N unit-modulus complex entries x_n = exp(j * theta_n), stored as phases.

    The phase vector is read-only; every operation returns a new sequence.
    """

    __slots__ = ("_phases",)

    def __init__(self, phases):
        phases = np.array(phases, dtype=float).reshape(-1)
        if phases.size < 1:
            raise ValueError("Sequence length must be at least 1")
        if not np.all(np.isfinite(phases)):
            raise ValueError("Sequence phases must be finite")
        phases.setflags(write=False)
        self._phases = phases

    @classmethod
    def from_complex(cls, values) -> UnimodularSequence:
        """Project an arbitrary complex vector onto the unit circle."""
        return cls(phase_of(values))

    @property
    def phases(self) -> np.ndarray:
        return self._phases

    @property
    def n(self) -> int:
        return self._phases.size

    @property
    def values(self) -> np.ndarray:
        """exp(j*theta). Quarter-turn phases come out exactly as 1, j, -1, -j."""
        v = np.exp(1j * self._phases)
        v.real[np.abs(v.real) < _SNAP] = 0.0
        v.imag[np.abs(v.imag) < _SNAP] = 0.0
        return v

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"UnimodularSequence(n={self.n})"


@dataclass
class TraceEntry:
    iteration: int
    objective: float
    extras: dict[str, float] = field(default_factory=dict)


@dataclass
class Trace:
    """Per-iteration objective record of one design run.

    Entry 0 is the initial sequence; entry k is the iterate after step k.
    """

    objective_name: str = "isl"
    entries: list[TraceEntry] = field(default_factory=list)
    converged: bool = False

    def record(self, iteration: int, objective: float, **extras: float) -> None:
        self.entries.append(TraceEntry(iteration, float(objective), dict(extras)))

    @property
    def objectives(self) -> np.ndarray:
        return np.array([e.objective for e in self.entries])

    @property
    def iterations(self) -> int:
        return max(len(self.entries) - 1, 0)

    @property
    def final_objective(self) -> float:
        return self.entries[-1].objective

    def as_pairs(self) -> list[tuple[int, float]]:
        return [(e.iteration, e.objective) for e in self.entries]


@dataclass
class DesignRun:
    variant: Variant
    n: int
    mode: Mode = Mode.APERIODIC
    seed: int = 0
    tolerance: float = DEFAULT_TOLERANCE
    max_iters: int = DEFAULT_MAX_ITERS
    mask: SpectralMask | None = None
    accelerate: bool = False  # SQUAREM-wrap spectral-MISL
    trace: list[tuple[int, float]] = field(default_factory=list)

    def __post_init__(self):
        self.variant = Variant(self.variant)
        self.mode = Mode(self.mode)
        if self.n < 1:
            raise ValueError(f"Sequence length must be at least 1, got {self.n}")
        if self.seed < 0:
            raise ValueError(f"Seed must be an unsigned integer, got {self.seed}")
        if not self.tolerance > 0:
            raise ValueError(f"Tolerance must be positive, got {self.tolerance}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be at least 1, got {self.max_iters}")
        if self.variant == Variant.PECAN:
            self.mode = Mode.PERIODIC
        if self.variant == Variant.SPECTRAL_MISL:
            if self.mask is None:
                raise ValueError("spectral-misl requires a spectral mask")
            if self.mode != Mode.APERIODIC:
                raise ValueError("spectral-misl is defined on the aperiodic grid only")

    def check_initial(self, x0: UnimodularSequence) -> None:
        if x0.n != self.n:
            raise ValueError(
                f"Initial sequence has length {x0.n}, run expects {self.n}"
            )


def random_unimodular(n: int, seed: int) -> UnimodularSequence:
    """Phases 2*pi*theta_n with theta_n ~ U[0, 1) from PCG64 seeded by `seed`."""
    if n < 1:
        raise ValueError(f"Sequence length must be at least 1, got {n}")
    if seed < 0:
        raise ValueError(f"Seed must be an unsigned integer, got {seed}")
    rng = np.random.default_rng(seed)
    return UnimodularSequence(2 * np.pi * rng.random(n))


def golomb_sequence(n: int) -> UnimodularSequence:
    """x_n = exp(j*pi*(n-1)*n/N), n = 1..N, phases reduced to [0, 2*pi)."""
    if n < 1:
        raise ValueError(f"Sequence length must be at least 1, got {n}")
    m = np.arange(n, dtype=np.int64)
    # pi * m(m+1)/N is periodic in m(m+1) with period 2N
    return UnimodularSequence(np.pi * ((m * (m + 1)) % (2 * n)) / n)


def frank_sequence(m: int) -> UnimodularSequence:
    """Length M^2 Frank code: phase 2*pi*p*q/M over (p, q), row-major."""
    if m < 1:
        raise ValueError(f"Frank order must be at least 1, got {m}")
    p, q = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    return UnimodularSequence(2 * np.pi * ((p * q) % m).reshape(-1) / m)


def initial_sequence(kind: str, n: int, seed: int) -> UnimodularSequence:
    """Named initializer used by the CLI: random, golomb or frank."""
    if kind == "random":
        return random_unimodular(n, seed)
    if kind == "golomb":
        return golomb_sequence(n)
    if kind == "frank":
        m = math.isqrt(n)
        if m * m != n:
            raise ValueError(f"Frank initialization needs a square length, got {n}")
        return frank_sequence(m)
    raise ValueError(
        f"Unknown initializer '{kind}'. Choose from: random, golomb, frank"
    )
