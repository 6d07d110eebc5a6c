"""Oracle check suite behind `python -m sidelobe validate`."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from sidelobe.baseline import can_step
from sidelobe.metrics import autocorrelation, isl, isl_freq, quartic_objective
from sidelobe.misl import misl_step, surrogate_value
from sidelobe.oracle import (
    acf_bruteforce,
    build_phi,
    can_step_dense,
    forward_dense,
    lambda_max_phi,
    quadratic_form_identity,
)
from sidelobe.seqcore import Mode, UnimodularSequence, frank_sequence, random_unimodular
from sidelobe.transform import forward_grid

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _relative(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    return float(np.max(np.abs(a - b)) / max(1.0, float(np.max(np.abs(b)))))


def check_lambda_max(lengths=range(1, 9)) -> list[CheckResult]:
    results = []
    for n in lengths:
        value = lambda_max_phi(n)
        expected = 2 * n**2
        error = abs(value - expected) / expected
        results.append(
            CheckResult(
                f"lambda_max(Phi) N={n}",
                error <= 1e-9,
                f"{value:.10g} (expected {expected})",
            )
        )
    return results


def check_phi_constructions(lengths=range(1, 9)) -> CheckResult:
    try:
        for n in lengths:
            build_phi(n)
    except RuntimeError as e:
        return CheckResult("Phi constructions agree", False, str(e))
    return CheckResult("Phi constructions agree", True, f"N={min(lengths)}..{max(lengths)}")


def check_quadratic_identity(lengths=range(2, 7), vectors: int = 50, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    results = []
    for n in lengths:
        worst = max(quadratic_form_identity(n, rng.standard_normal(n * n)) for _ in range(vectors))
        results.append(
            CheckResult(f"x^T(2N^2 I - Phi)x identity N={n}", worst <= 1e-8, f"max residual {worst:.3e}")
        )
    return results


def check_isl_equivalence(lengths=range(1, 65), samples: int = 100) -> CheckResult:
    worst = 0.0
    for mode in Mode:
        for n in lengths:
            for s in range(samples):
                x = random_unimodular(n, s)
                exact = isl(x, mode)
                worst = max(worst, abs(exact - isl_freq(x, mode)) / max(1.0, exact))
    return CheckResult("ISL time/frequency equivalence", worst <= 1e-9, f"max rel. error {worst:.3e}")


def check_dense_oracles(samples: int = 100) -> CheckResult:
    worst = 0.0
    for mode in Mode:
        for n in range(1, 17):
            for s in range(samples):
                x = random_unimodular(n, 1000 + s)
                worst = max(worst, _relative(forward_grid(x, mode).values, forward_dense(x, mode)))
                worst = max(
                    worst,
                    _relative(autocorrelation(x, mode).lags, acf_bruteforce(x, mode).lags),
                )
                worst = max(
                    worst,
                    _relative(can_step(x, mode).values, can_step_dense(x, mode).values),
                )
    return CheckResult("FFT paths match dense oracles", worst <= 1e-10, f"max rel. error {worst:.3e}")


def check_majorizer(pairs: int = 50, seed: int = 1) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst_gap, worst_touch = 0.0, 0.0
    for n in range(1, 17):
        for _ in range(pairs):
            x = UnimodularSequence(2 * np.pi * rng.random(n))
            x_k = UnimodularSequence(2 * np.pi * rng.random(n))
            f_x = quartic_objective(x)
            worst_gap = max(worst_gap, (f_x - surrogate_value(x, x_k)) / max(1.0, f_x))
            f_k = quartic_objective(x_k)
            worst_touch = max(worst_touch, abs(surrogate_value(x_k, x_k) - f_k) / max(1.0, f_k))
    passed = worst_gap <= 1e-8 and worst_touch <= 1e-8
    return CheckResult(
        "MISL majorizer u(x, x_k) >= f(x)",
        passed,
        f"max violation {worst_gap:.3e}, touch error {worst_touch:.3e}",
    )


def check_fixed_point() -> CheckResult:
    x = UnimodularSequence([0.0, 0.0])
    x_misl, diagnostics = misl_step(x)
    x_can = can_step(x)
    passed = (
        np.allclose(diagnostics.p, [4, 2, 0, 2])
        and np.allclose(x_misl.values, [1, 1])
        and np.allclose(x_can.values, [1, 1])
        and np.allclose(can_step_dense(x).values, [1, 1])
        and abs(isl(x) - 1) < 1e-12
    )
    return CheckResult("N=2 fixed point [1, 1]", passed, f"p={np.round(diagnostics.p, 12).tolist()}")


def check_frank_perfect(orders=range(1, 9)) -> CheckResult:
    worst = max(isl(frank_sequence(m), Mode.PERIODIC) for m in orders)
    return CheckResult("Frank sequences have zero periodic ISL", worst <= 1e-9, f"max ISL {worst:.3e}")


def run_checks() -> list[CheckResult]:
    results: list[CheckResult] = []
    results.extend(check_lambda_max())
    results.append(check_phi_constructions())
    results.extend(check_quadratic_identity())
    results.append(check_isl_equivalence())
    results.append(check_dense_oracles())
    results.append(check_majorizer())
    results.append(check_fixed_point())
    results.append(check_frank_perfect())
    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.error("%d check(s) failed: %s", len(failed), ", ".join(failed))
    return results


def format_table(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'check'.ljust(width)}  result  detail"]
    for r in results:
        lines.append(f"{r.name.ljust(width)}  {'PASS' if r.passed else 'FAIL'}    {r.detail}")
    return "\n".join(lines)
