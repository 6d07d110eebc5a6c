"""Brute-force references for tests and `validate`.

Nothing here is used by the solvers; every object is dense and guarded by size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg

from sidelobe.config import BRUTEFORCE_MAX_N, PHI_MAX_N
from sidelobe.metrics import AutocorrelationProfile
from sidelobe.seqcore import Mode, UnimodularSequence, phase_of
from sidelobe.transform import as_complex, grid_size


# matrix-product round-off on a bin that is exactly zero in exact arithmetic
_ZERO_BIN = 1e-12


class OracleSizeError(ValueError):
    """Requested dense object is too large."""


def _guard(n: int, limit: int, what: str) -> None:
    if n < 1:
        raise ValueError(f"Sequence length must be at least 1, got {n}")
    if n > limit:
        raise OracleSizeError(f"{what} is limited to N <= {limit}, got {n}")


def dense_grid_matrix(n: int, mode: Mode = Mode.APERIODIC) -> np.ndarray:
    """A = [a_1, ..., a_G], a_p = [1, e^{j w_p}, ..., e^{j w_p (N-1)}]^T, w_p = 2 pi (p-1)/G."""
    _guard(n, BRUTEFORCE_MAX_N, "Dense grid matrix")
    g = grid_size(n, mode)
    return np.exp(2j * np.pi * np.outer(np.arange(n), np.arange(g)) / g)


def forward_dense(x, mode: Mode = Mode.APERIODIC) -> np.ndarray:
    v = as_complex(x)
    return dense_grid_matrix(v.size, mode).conj().T @ v


def can_step_dense(x, mode: Mode = Mode.APERIODIC) -> UnimodularSequence:
    """Dense CAN update. Entries below _ZERO_BIN times the largest count as exact zeros, so arg(0) = 0 applies."""
    v = as_complex(x)
    a = dense_grid_matrix(v.size, mode)
    f = a.conj().T @ v
    f[np.abs(f) < _ZERO_BIN * np.max(np.abs(f))] = 0
    g = a @ np.exp(1j * phase_of(f))
    g[np.abs(g) < _ZERO_BIN * np.max(np.abs(g))] = 0
    return UnimodularSequence.from_complex(g)


def misl_step_dense(x, mode: Mode = Mode.APERIODIC) -> UnimodularSequence:
    v = as_complex(x)
    n = v.size
    a = dense_grid_matrix(n, mode)
    p = np.abs(a.conj().T @ v) ** 2
    middle = np.diag(p - p.max() - n**2)
    return UnimodularSequence.from_complex(-a @ middle @ a.conj().T @ v)


def acf_bruteforce(x, mode: Mode = Mode.APERIODIC) -> AutocorrelationProfile:
    """Literal double sum for r_k (aperiodic) or r_k with cyclic indexing."""
    mode = Mode(mode)
    v = [complex(c) for c in as_complex(x)]
    n = len(v)
    _guard(n, BRUTEFORCE_MAX_N, "Brute-force autocorrelation")
    lags = []
    for k in range(n):
        total = 0j
        if mode == Mode.APERIODIC:
            for i in range(n - k):
                total += v[i] * v[i + k].conjugate()
        else:
            for i in range(n):
                total += v[i] * v[(i + k) % n].conjugate()
        lags.append(total)
    return AutocorrelationProfile(np.array(lags, dtype=complex), mode)


def isl_bruteforce(x, mode: Mode = Mode.APERIODIC) -> float:
    lags = acf_bruteforce(x, mode).lags
    return float(sum(abs(r) ** 2 for r in lags[1:]))


@dataclass(frozen=True)
class PhiMatrix:
    """Phi = sum_p vec(a_p a_p^H) vec(a_p a_p^H)^H, an N^2 x N^2 real symmetric matrix.

    Row/column i = m + n*N (0-based) holds the (m, n) entry of the vectorized
    N x N matrix, so i belongs to the index class k = m - n.
    """

    n: int
    matrix: np.ndarray


def index_classes(n: int) -> dict[int, np.ndarray]:
    """I_k = {m + n*N : m - n = k}, k = 1-N..N-1."""
    m, col = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    offsets = (m - col).reshape(-1, order="F")
    return {k: np.flatnonzero(offsets == k) for k in range(1 - n, n)}


def _phi_from_outer_products(n: int) -> np.ndarray:
    a = dense_grid_matrix(n, Mode.APERIODIC)
    # column p of w is vec(a_p a_p^H), column-major
    w = np.stack(
        [np.outer(a[:, p], a[:, p].conj()).reshape(-1, order="F") for p in range(2 * n)],
        axis=1,
    )
    phi = w @ w.conj().T
    if np.max(np.abs(phi.imag)) > 1e-9:
        raise RuntimeError("Phi built from outer products is not real")
    return phi.real


def _phi_from_indicator(n: int) -> np.ndarray:
    m, col = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    offsets = (m - col).reshape(-1, order="F")
    return 2.0 * n * (offsets[:, None] == offsets[None, :])


def build_phi(n: int) -> PhiMatrix:
    """Build Phi from outer products and from the indicator formula; they must agree."""
    _guard(n, PHI_MAX_N, "Phi construction")
    summed = _phi_from_outer_products(n)
    indicator = _phi_from_indicator(n)
    gap = float(np.max(np.abs(summed - indicator)))
    if gap > 1e-9:
        raise RuntimeError(f"Phi constructions disagree by {gap:.3e} at N={n}")
    return PhiMatrix(n, indicator)


def phi_eigen(n: int) -> tuple[float, np.ndarray]:
    """Largest eigenvalue of Phi and a unit eigenvector for it."""
    values, vectors = linalg.eigh(build_phi(n).matrix)
    return float(values[-1]), vectors[:, -1]


def lambda_max_phi(n: int) -> float:
    return phi_eigen(n)[0]


def quadratic_form_identity(n: int, x) -> float:
    """|x^T (2N^2 I - Phi) x - 2N (sum_k sum_{i<j in I_k} (x_i - x_j)^2 + sum_k |k| sum_{i in I_k} x_i^2)|."""
    _guard(n, PHI_MAX_N, "Phi quadratic form")
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != n * n:
        raise ValueError(f"Vector must have length N^2 = {n * n}, got {x.size}")
    phi = build_phi(n).matrix
    direct = float(x @ (2 * n**2 * x - phi @ x))
    classwise = 0.0
    for k, members in index_classes(n).items():
        xs = x[members]
        diffs = xs[:, None] - xs[None, :]
        classwise += float(np.sum(np.triu(diffs**2, k=1)))
        classwise += abs(k) * float(np.sum(xs**2))
    return abs(direct - 2 * n * classwise)


def quadratic_majorizer(l_mat, m_mat, x, x0) -> float:
    """x^H M x + 2 Re(x^H (L - M) x0) + x0^H (M - L) x0, an upper bound on x^H L x when M >= L."""
    x = np.asarray(x, dtype=complex)
    x0 = np.asarray(x0, dtype=complex)
    return float(
        np.real(
            np.vdot(x, m_mat @ x)
            + 2 * np.vdot(x, (l_mat - m_mat) @ x0).real
            + np.vdot(x0, (m_mat - l_mat) @ x0)
        )
    )
