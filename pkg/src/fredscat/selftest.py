"""Runtime invariant battery behind the CLI's selftest command.

Each check returns a CheckResult; exceptions raised inside a check are
captured and reported as failures so a misconfiguration (say an absurd
det_tolerance) surfaces as FAIL lines instead of a crash.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .fredholm import (
    KernelSpec,
    SolverConfig,
    determinant_coefficients,
    fredholm_determinant,
    resolvent_grid,
    solve_neumann,
    solve_nystrom,
    solve_resolvent,
)
from .quadrature import Interval, gauss_rule, integrate_1d, uniform_rule
from .scattering import (
    PotentialSpec,
    ReducedKernelChoice,
    amplitude_range,
    coulomb_potential,
    derive_params,
    greens_function,
    podolsky_potential,
    reduced_kernel,
    sample_wavefunction,
)
from .special import _e1_continued_fraction, _e1_power_series, e1_complex


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


PAPER_PARAMS = derive_params(mass=2.0, hbar=1.0, energy=0.25, charge=1.0)
UNIT = Interval(0.0, 1.0)
SCATTER_INTERVAL = Interval(1.0, 5.0)


def _rank1_kernel() -> KernelSpec:
    return KernelSpec.separable(lambda x: complex(x), lambda t: complex(t), UNIT)


def _far_field_kernel() -> KernelSpec:
    return reduced_kernel(
        PotentialSpec.coulomb(1.0),
        PAPER_PARAMS,
        SCATTER_INTERVAL,
        ReducedKernelChoice.separable_far_field(),
    )


def _check_e1_conjugate_symmetry(config: SolverConfig) -> CheckResult:
    rng = np.random.default_rng(20240817)
    worst = 0.0
    for _ in range(100):
        radius = float(rng.uniform(0.1, 20.0))
        arg = float(rng.uniform(0.05, 3.0))
        z = radius * cmath.exp(1j * arg)
        upper = e1_complex(z)
        worst = max(worst, abs(e1_complex(z.conjugate()) - upper.conjugate()) / abs(upper))
    return CheckResult("e1_conjugate_symmetry", worst <= 1e-12, f"worst relative deviation {worst:.2e}")


def _check_e1_derivative(config: SolverConfig) -> CheckResult:
    worst = 0.0
    for z in (1.0 + 0j, 1j, 2 + 2j, -1 + 1j, 0.5 - 3j, 6 + 1j):
        exact = -cmath.exp(-z) / z
        for h in (1e-5, 1e-5j):
            numeric = (e1_complex(z + h) - e1_complex(z - h)) / (2 * h)
            worst = max(worst, abs(numeric - exact) / abs(exact))
    return CheckResult("e1_derivative_identity", worst <= 1e-6, f"worst relative error {worst:.2e}")


def _check_e1_overlap_band(config: SolverConfig) -> CheckResult:
    worst = 0.0
    for radius in (3.0, 3.5, 4.0, 4.5, 5.0):
        for arg in np.linspace(-3.0, 3.0, 25):
            if abs(arg) < 0.02:
                continue
            z = radius * cmath.exp(1j * float(arg))
            series = _e1_power_series(z)
            fraction = _e1_continued_fraction(z)
            worst = max(worst, abs(series - fraction) / abs(series))
    return CheckResult("e1_series_fraction_overlap", worst <= 1e-10, f"worst relative gap {worst:.2e}")


def _check_quadrature_weight_sums(config: SolverConfig) -> CheckResult:
    worst = 0.0
    for interval in (UNIT, SCATTER_INTERVAL, Interval(-3.0, 7.5)):
        for n in (1, 2, 7, 64, 128):
            for rule in (uniform_rule(interval, n), gauss_rule(interval, n)):
                worst = max(worst, abs(rule.weights.sum() - interval.length))
    return CheckResult("quadrature_weight_sums", worst <= 1e-12, f"worst |sum w - (b-a)| = {worst:.2e}")


def _check_gauss_convergence(config: SolverConfig) -> CheckResult:
    integrands: list[Callable[[float], complex]] = [
        lambda t: cmath.exp(1j * t),
        lambda t: cmath.exp(-1j * t) / t,
        lambda t: cmath.exp(1j * t) / t**2,
    ]
    worst = 0.0
    for f in integrands:
        coarse = integrate_1d(f, gauss_rule(SCATTER_INTERVAL, 128))
        fine = integrate_1d(f, gauss_rule(SCATTER_INTERVAL, 256))
        worst = max(worst, abs(coarse - fine))
    return CheckResult("gauss_self_convergence", worst < 1e-10, f"worst |g(128) - g(256)| = {worst:.2e}")


def _check_midpoint_order(config: SolverConfig) -> CheckResult:
    exact = (cmath.exp(5j) - cmath.exp(1j)) / 1j
    errors = [
        abs(integrate_1d(lambda t: cmath.exp(1j * t), uniform_rule(SCATTER_INTERVAL, n)) - exact)
        for n in (64, 128, 256)
    ]
    ratios = [c / f for c, f in zip(errors, errors[1:])]
    ok = all(3.5 < r < 4.5 for r in ratios)
    return CheckResult("midpoint_second_order", ok, f"error ratios {[f'{r:.2f}' for r in ratios]}")


def _check_rank1_determinant(config: SolverConfig) -> CheckResult:
    kernel = _rank1_kernel()
    det = fredholm_determinant(kernel, 1.0, config)
    d = determinant_coefficients(kernel, config)
    d2 = abs(d[2]) if d.size > 2 else 0.0
    ok = abs(det - 2.0 / 3.0) <= 1e-10 and d2 <= 1e-10
    return CheckResult("rank1_determinant", ok, f"|Delta - 2/3| = {abs(det - 2/3):.2e}, |d2| = {d2:.2e}")


def _check_resolvent_equation(config: SolverConfig) -> CheckResult:
    kernel = _rank1_kernel()
    grid = np.linspace(0.1, 0.9, 5)
    rule = gauss_rule(UNIT, max(config.nodes, 64))
    worst = 0.0
    for lam in (-1.0, 0.5, 1.0):
        r_on_grid = resolvent_grid(kernel, grid, grid, lam, config)
        r_nodes = resolvent_grid(kernel, rule.nodes, grid, lam, config)
        for i, x in enumerate(grid):
            k_xs = np.array([kernel(float(x), float(s)) for s in rule.nodes])
            for j, t in enumerate(grid):
                integral = np.sum(rule.weights * k_xs * r_nodes[:, j])
                worst = max(worst, abs(r_on_grid[i, j] - (kernel(float(x), float(t)) + lam * integral)))
    return CheckResult("resolvent_integral_equation", worst <= 1e-8, f"worst residual {worst:.2e}")


def _check_cross_solver_agreement(config: SolverConfig) -> CheckResult:
    kernel = _far_field_kernel()
    grid = np.linspace(1.0, 5.0, 21)
    lam = PAPER_PARAMS.lam

    def forcing(x: float) -> complex:
        return cmath.exp(1j * x)

    u_res = solve_resolvent(kernel, forcing, lam, grid, config)
    u_nys = solve_nystrom(kernel, forcing, lam, config, grid=grid)
    u_neu = solve_neumann(kernel, forcing, lam, 80, config, grid=grid)
    dev = max(
        float(np.abs(u_res.values - u_nys.values).max()),
        float(np.abs(u_res.values - u_neu.values).max()),
    )
    return CheckResult("cross_solver_agreement", dev <= 1e-6, f"max deviation {dev:.2e}")


def _check_separable_determinant_consistency(config: SolverConfig) -> CheckResult:
    kernel = _far_field_kernel()
    lam = -1.0
    rule = gauss_rule(SCATTER_INTERVAL, max(config.nodes, 128))
    overlap = sum(w * kernel(float(t), float(t)) for t, w in zip(rule.nodes, rule.weights))
    gap = abs(fredholm_determinant(kernel, lam, config) - (1 - lam * overlap))
    return CheckResult("separable_determinant_consistency", gap <= 1e-10, f"|Delta - (1 - lam m)| = {gap:.2e}")


def _check_rank2_determinant(config: SolverConfig) -> CheckResult:
    kernel = KernelSpec.general(lambda x, t: x * t + x**2 * t**2, UNIT)
    m = np.array([[1.0 / 3.0, 1.0 / 4.0], [1.0 / 4.0, 1.0 / 5.0]])
    worst = 0.0
    for lam in (-1.0, 1.0):
        expected = np.linalg.det(np.eye(2) - lam * m)
        worst = max(worst, abs(fredholm_determinant(kernel, lam, config) - expected))
    return CheckResult("rank2_determinant", worst <= 1e-8, f"worst gap {worst:.2e}")


def _check_helmholtz_residual(config: SolverConfig) -> CheckResult:
    k, h = 1.0, 1e-3
    worst = 0.0
    for rho in np.linspace(0.5, 10.0, 200):
        u = lambda r: r * greens_function(float(r), k)
        second = (u(rho + h) - 2.0 * u(rho) + u(rho - h)) / h**2
        worst = max(worst, abs(second + k * k * u(rho)) / abs(u(rho)))
    return CheckResult("helmholtz_residual", worst <= 1e-5, f"worst relative residual {worst:.2e}")


def _check_potential_ordering(config: SolverConfig) -> CheckResult:
    rs = np.logspace(-6, 3, 120)
    ok = True
    for a in (0.5, 1.0, 5.0, 20.0):
        vals = [podolsky_potential(float(r), 1.0, a) for r in rs]
        coul = [coulomb_potential(float(r), 1.0) for r in rs]
        ok &= all(0.0 <= p <= c for p, c in zip(vals, coul))
        ok &= all(u > v for u, v in zip(vals, vals[1:]))
        ok &= all(
            abs(podolsky_potential(float(r), 1.0, a) / coulomb_potential(float(r), 1.0) - 1.0) < 0.01
            for r in rs
            if r > 10.0 * a
        )
    return CheckResult("potential_ordering_and_limits", bool(ok), "bound, monotonicity, far-field limit")


def _check_closed_form_identity(config: SolverConfig) -> CheckResult:
    from .scattering import psi_coulomb_closed, psi_podolsky_closed

    worst = max(
        abs(psi_podolsky_closed(x, 0.0, -1.0) - psi_coulomb_closed(x, -1.0))
        for x in (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
    )
    return CheckResult("closed_form_zero_screening_identity", worst <= 1e-12, f"worst gap {worst:.2e}")


def _check_incident_wave_recovery(config: SolverConfig) -> CheckResult:
    from .scattering import psi_coulomb_closed, psi_podolsky_closed

    xs = np.linspace(10.0, 100.0, 40)
    ok = True
    for psi in (lambda x: psi_coulomb_closed(x, -1.0), lambda x: psi_podolsky_closed(x, 2.0, -1.0)):
        fitted = [abs(psi(float(x)) - cmath.exp(1j * float(x))) * float(x) for x in xs]
        ok &= max(fitted) - min(fitted) <= 1e-10 * max(max(fitted), 1e-300)
    return CheckResult("incident_wave_recovery", bool(ok), "scattered term scales as C/x with stable C")


def _check_stabilization_metric(config: SolverConfig) -> CheckResult:
    grid = np.arange(0.5, 5.0 + 1e-9, 0.01)
    coulomb = amplitude_range(sample_wavefunction("coulomb", grid, 0.0, PAPER_PARAMS))
    podolsky = amplitude_range(sample_wavefunction("podolsky", grid, 5.0, PAPER_PARAMS))
    return CheckResult(
        "stabilization_metric",
        podolsky < coulomb,
        f"amplitude range coulomb = {coulomb:.6f}, podolsky a=5 = {podolsky:.6e}",
    )


_CHECKS = [
    _check_e1_conjugate_symmetry,
    _check_e1_derivative,
    _check_e1_overlap_band,
    _check_quadrature_weight_sums,
    _check_gauss_convergence,
    _check_midpoint_order,
    _check_rank1_determinant,
    _check_resolvent_equation,
    _check_cross_solver_agreement,
    _check_separable_determinant_consistency,
    _check_rank2_determinant,
    _check_helmholtz_residual,
    _check_potential_ordering,
    _check_closed_form_identity,
    _check_incident_wave_recovery,
    _check_stabilization_metric,
]


def run_selftest(config: SolverConfig) -> list[CheckResult]:
    """Run every invariant check; a raised exception becomes a failed result."""
    results = []
    for check in _CHECKS:
        name = check.__name__.removeprefix("_check_")
        try:
            result = check(config)
            result.passed = bool(result.passed)  # numpy bools do not serialize
            results.append(result)
        except Exception as exc:  # any raise means the invariant could not be shown
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
