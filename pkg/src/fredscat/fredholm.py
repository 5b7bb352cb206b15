"""Fredholm machinery for u(x) = f(x) + lambda * int_a^b K(x,t) u(t) dt.

Three independent solution routes are provided so they can cross-check each
other:

* ``solve_resolvent`` builds the determinant series Delta(lambda) and the
  first-minor series Delta(x,t;lambda) and applies
  u = f + lambda * int R f with R = Delta(x,t;lambda) / Delta(lambda);
* ``solve_nystrom`` discretizes to the dense system
  (delta_pq - lambda K_pq w_q) u_q = f_p and row-reduces with partial
  pivoting;
* ``solve_neumann`` iterates u <- f + lambda * int K u (usable when
  |lambda| ||K|| < 1).

The series coefficients d_n are the n-fold tensor-product quadratures of the
n x n node determinants.  Those sums are evaluated through an exact algebraic
collapse rather than literal nested loops: tuples with a repeated index
contribute a zero determinant, and each distinct index set appears n! times,
so the tensor sum equals n! * e_n(A) with A the weighted kernel matrix and
e_n its elementary symmetric polynomial (Newton's identities from traces of
matrix powers).  The bordered sums d_n(x,t) obey the analogous recursion
d_n(x,t) = d_n K(x,t) - n * sum_s w_s K(x,s) d_{n-1}(s,t).  Both identities
are verified against brute-force nested summation in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DivergenceError,
    EvaluationError,
    InvalidArgumentError,
    SingularDeterminantError,
    SingularMatrixError,
)
from .quadrature import Interval, QuadratureRule, gauss_rule, uniform_rule

ComplexFn = Callable[[float], complex]
KernelFn = Callable[[float, float], complex]

_PIVOT_RTOL = 1e-13
_AMPLIFICATION_LIMIT = 1e12
_DIVERGENCE_GROWTH = 1e6


@dataclass(frozen=True)
class KernelSpec:
    """Complex kernel K(x,t) on an interval.

    Either a general callable ``eval_fn(x, t)`` or a separable rank-1 pair
    with K(x,t) = g(x) * h(t).  Values must be finite at every node pair the
    solvers touch, diagonal included.
    """

    domain: Interval
    eval_fn: KernelFn | None = None
    g: ComplexFn | None = None
    h: ComplexFn | None = None

    def __post_init__(self) -> None:
        has_pair = self.g is not None or self.h is not None
        if self.g is None and self.h is not None or self.g is not None and self.h is None:
            raise InvalidArgumentError("separable kernels need both g and h")
        if (self.eval_fn is None) == (not has_pair):
            raise InvalidArgumentError("provide exactly one of eval_fn or the (g, h) pair")

    @classmethod
    def general(cls, fn: KernelFn, domain: Interval) -> "KernelSpec":
        return cls(domain=domain, eval_fn=fn)

    @classmethod
    def separable(cls, g: ComplexFn, h: ComplexFn, domain: Interval) -> "KernelSpec":
        return cls(domain=domain, g=g, h=h)

    @property
    def is_separable(self) -> bool:
        return self.eval_fn is None

    def __call__(self, x: float, t: float) -> complex:
        if self.eval_fn is not None:
            return complex(self.eval_fn(x, t))
        return complex(self.g(x)) * complex(self.h(t))


@dataclass(frozen=True)
class SolverConfig:
    """Discretization and truncation knobs shared by all solvers."""

    nodes: int = 64
    series_order_max: int = 4
    det_tolerance: float = 1e-10
    rule_kind: str = "gauss"

    def __post_init__(self) -> None:
        if not isinstance(self.nodes, int) or self.nodes < 2:
            raise InvalidArgumentError(f"nodes must be an integer >= 2, got {self.nodes}")
        if not isinstance(self.series_order_max, int) or not 1 <= self.series_order_max <= 6:
            raise InvalidArgumentError(
                f"series_order_max must lie in [1, 6], got {self.series_order_max}"
            )
        if not self.det_tolerance > 0:
            raise InvalidArgumentError(f"det_tolerance must be positive, got {self.det_tolerance}")
        if self.rule_kind not in ("uniform", "gauss"):
            raise InvalidArgumentError(f"rule_kind must be 'uniform' or 'gauss', got {self.rule_kind!r}")


@dataclass(frozen=True)
class SampledFunction:
    """Complex values on a strictly increasing real grid."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if grid.ndim != 1 or grid.shape != values.shape:
            raise InvalidArgumentError("grid and values must be equal-length 1-d arrays")
        if grid.size == 0:
            raise InvalidArgumentError("grid must not be empty")
        if not np.all(np.isfinite(grid)):
            raise InvalidArgumentError("grid must be finite")
        if grid.size > 1 and not np.all(np.diff(grid) > 0):
            raise InvalidArgumentError("grid must be strictly increasing")
        grid.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.grid.size

    def value_at(self, x: float) -> complex:
        """Value at a grid point (exact match up to 1e-12)."""
        idx = int(np.argmin(np.abs(self.grid - x)))
        if abs(self.grid[idx] - x) > 1e-12 * max(1.0, abs(x)):
            raise InvalidArgumentError(f"{x} is not a grid point")
        return complex(self.values[idx])


def _rule_for(kernel: KernelSpec, config: SolverConfig) -> QuadratureRule:
    if config.rule_kind == "gauss":
        return gauss_rule(kernel.domain, config.nodes)
    return uniform_rule(kernel.domain, config.nodes)


def _kernel_matrix(kernel: KernelSpec, xs: np.ndarray, ts: np.ndarray) -> np.ndarray:
    """K evaluated on the grid xs x ts; raises if any value is non-finite."""
    xs = np.asarray(xs, dtype=float)
    ts = np.asarray(ts, dtype=float)
    if kernel.is_separable:
        gx = np.array([complex(kernel.g(float(x))) for x in xs])
        ht = np.array([complex(kernel.h(float(t))) for t in ts])
        out = np.outer(gx, ht)
    else:
        out = np.empty((xs.size, ts.size), dtype=complex)
        for i, x in enumerate(xs):
            for j, t in enumerate(ts):
                out[i, j] = kernel.eval_fn(float(x), float(t))
    if not np.all(np.isfinite(out.view(float))):
        raise EvaluationError("kernel evaluated to a non-finite value")
    return out


def _complex_values(f: ComplexFn, xs: np.ndarray) -> np.ndarray:
    vals = np.array([complex(f(float(x))) for x in xs])
    if not np.all(np.isfinite(vals.view(float))):
        raise EvaluationError("forcing function evaluated to a non-finite value")
    return vals


def determinant_coefficients(kernel: KernelSpec, config: SolverConfig) -> np.ndarray:
    """d_0 .. d_N of the determinant series, d_0 = 1.

    d_n is the tensor-product quadrature of the n-fold integral of the n x n
    node determinant, computed as n! e_n(A) (see module docstring).
    """
    rule = _rule_for(kernel, config)
    k_nodes = _kernel_matrix(kernel, rule.nodes, rule.nodes)
    weighted = k_nodes * rule.weights[None, :]
    return _coefficients_from_matrix(weighted, config.series_order_max)


def _coefficients_from_matrix(weighted: np.ndarray, order: int) -> np.ndarray:
    traces = np.empty(order + 1, dtype=complex)
    power = weighted
    for k in range(1, order + 1):
        traces[k] = np.trace(power)
        if k < order:
            power = power @ weighted
    elem = np.empty(order + 1, dtype=complex)
    elem[0] = 1.0
    for n in range(1, order + 1):
        acc = 0j
        for k in range(1, n + 1):
            acc += (-1) ** (k - 1) * elem[n - k] * traces[k]
        elem[n] = acc / n
    return elem * np.array([math.factorial(n) for n in range(order + 1)])


def determinant_series_terms(kernel: KernelSpec, lam: complex, config: SolverConfig) -> np.ndarray:
    """Terms (-1)^n lambda^n / n! d_n for n = 0 .. series_order_max.

    The magnitude of the last entry is the truncation diagnostic: it bounds
    how much raising the order cap could still change the determinant.
    """
    lam = complex(lam)
    d = determinant_coefficients(kernel, config)
    n = np.arange(d.size)
    return d * (-lam) ** n / np.array([math.factorial(int(m)) for m in n])


def fredholm_determinant(kernel: KernelSpec, lam: complex, config: SolverConfig) -> complex:
    """Determinant series Delta(lambda) truncated at series_order_max."""
    return complex(determinant_series_terms(kernel, lam, config).sum())


def _minor_tables(kernel: KernelSpec, config: SolverConfig):
    """Shared node-space tables for the first-minor series."""
    rule = _rule_for(kernel, config)
    k_nodes = _kernel_matrix(kernel, rule.nodes, rule.nodes)
    weighted = k_nodes * rule.weights[None, :]
    d = _coefficients_from_matrix(weighted, config.series_order_max)
    return rule, k_nodes, weighted, d


def first_minor_grid(
    kernel: KernelSpec,
    xs: Sequence[float],
    ts: Sequence[float],
    lam: complex,
    config: SolverConfig,
) -> np.ndarray:
    """Delta(x,t;lambda) for every pair of xs and ts; shape (len(xs), len(ts))."""
    lam = complex(lam)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    rule, k_nodes, weighted, d = _minor_tables(kernel, config)

    k_xt = _kernel_matrix(kernel, xs, ts)
    k_xs = _kernel_matrix(kernel, xs, rule.nodes) * rule.weights[None, :]
    bordered_nodes = _kernel_matrix(kernel, rule.nodes, ts)  # d_0(s, t) at the nodes

    total = k_xt.copy()
    coeff = 1.0 + 0j
    prev = bordered_nodes
    for n in range(1, config.series_order_max + 1):
        coeff *= -lam / n
        bordered_x = d[n] * k_xt - n * (k_xs @ prev)
        total += coeff * bordered_x
        if n < config.series_order_max:
            prev = d[n] * bordered_nodes - n * (weighted @ prev)
    return total


def fredholm_first_minor(
    kernel: KernelSpec, x: float, t: float, lam: complex, config: SolverConfig
) -> complex:
    """First-minor series Delta(x,t;lambda) truncated at series_order_max."""
    return complex(first_minor_grid(kernel, [x], [t], lam, config)[0, 0])


def resolvent_grid(
    kernel: KernelSpec,
    xs: Sequence[float],
    ts: Sequence[float],
    lam: complex,
    config: SolverConfig,
) -> np.ndarray:
    """Resolvent R(x,t;lambda) = Delta(x,t;lambda)/Delta(lambda) on xs x ts."""
    det = fredholm_determinant(kernel, lam, config)
    if abs(det) < config.det_tolerance:
        raise SingularDeterminantError(
            f"|Delta(lambda)| = {abs(det):.3e} is below det_tolerance = "
            f"{config.det_tolerance:.3e}; lambda = {lam} is numerically a characteristic value"
        )
    return first_minor_grid(kernel, xs, ts, lam, config) / det


def resolvent(kernel: KernelSpec, x: float, t: float, lam: complex, config: SolverConfig) -> complex:
    return complex(resolvent_grid(kernel, [x], [t], lam, config)[0, 0])


def solve_resolvent(
    kernel: KernelSpec,
    f: ComplexFn,
    lam: complex,
    grid: Sequence[float],
    config: SolverConfig,
) -> SampledFunction:
    """u(x) = f(x) + lambda * int R(x,t;lambda) f(t) dt sampled on the grid."""
    lam = complex(lam)
    grid = np.asarray(grid, dtype=float)
    rule = _rule_for(kernel, config)
    r_matrix = resolvent_grid(kernel, grid, rule.nodes, lam, config)
    f_nodes = _complex_values(f, rule.nodes)
    f_grid = _complex_values(f, grid)
    u = f_grid + lam * (r_matrix * rule.weights[None, :]) @ f_nodes
    return SampledFunction(grid, u)


def _solve_partial_pivot(matrix: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting on a dense complex system."""
    a = matrix.astype(complex, copy=True)
    b = rhs.astype(complex, copy=True)
    n = b.size
    scale = np.abs(a).max()
    if scale == 0:
        raise SingularMatrixError("zero system matrix")
    for col in range(n):
        pivot_row = col + int(np.argmax(np.abs(a[col:, col])))
        pivot = a[pivot_row, col]
        if abs(pivot) < _PIVOT_RTOL * scale:
            raise SingularMatrixError(
                f"no usable pivot in column {col}: |pivot| = {abs(pivot):.3e} "
                f"< {_PIVOT_RTOL:.0e} * scale"
            )
        if pivot_row != col:
            a[[col, pivot_row]] = a[[pivot_row, col]]
            b[[col, pivot_row]] = b[[pivot_row, col]]
        factors = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col:] -= np.outer(factors, a[col, col:])
        b[col + 1 :] -= factors * b[col]
    x = np.empty(n, dtype=complex)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1 :] @ x[row + 1 :]) / a[row, row]
    return x


def solve_nystrom(
    kernel: KernelSpec,
    f: ComplexFn,
    lam: complex,
    config: SolverConfig,
    grid: Sequence[float] | None = None,
) -> SampledFunction:
    """Dense solve of (delta_pq - lambda K_pq w_q) u_q = f_p.

    With ``grid=None`` the result lives on the quadrature nodes; otherwise
    off-node values are recovered through the interpolation formula
    u(x) = f(x) + lambda sum_q w_q K(x,t_q) u_q.

    Raises SingularMatrixError either when a pivot falls below 1e-13 times
    the matrix scale or when the solution norm blows up relative to the
    forcing (conditioning failure: elimination growth can leave every pivot
    above threshold at a characteristic value).
    """
    lam = complex(lam)
    rule = _rule_for(kernel, config)
    k_nodes = _kernel_matrix(kernel, rule.nodes, rule.nodes)
    system = np.eye(len(rule), dtype=complex) - lam * k_nodes * rule.weights[None, :]
    f_nodes = _complex_values(f, rule.nodes)
    u_nodes = _solve_partial_pivot(system, f_nodes)
    f_scale = float(np.abs(f_nodes).max())
    if f_scale > 0 and float(np.abs(u_nodes).max()) > _AMPLIFICATION_LIMIT * f_scale:
        raise SingularMatrixError(
            f"solution amplification {float(np.abs(u_nodes).max()) / f_scale:.3e} "
            f"exceeds {_AMPLIFICATION_LIMIT:.0e}: condition-number blowup, "
            "lambda sits at a characteristic value"
        )
    if grid is None:
        return SampledFunction(rule.nodes, u_nodes)
    grid = np.asarray(grid, dtype=float)
    k_grid = _kernel_matrix(kernel, grid, rule.nodes)
    u = _complex_values(f, grid) + lam * (k_grid * rule.weights[None, :]) @ u_nodes
    return SampledFunction(grid, u)


def solve_neumann(
    kernel: KernelSpec,
    f: ComplexFn,
    lam: complex,
    iterations: int,
    config: SolverConfig,
    grid: Sequence[float] | None = None,
) -> SampledFunction:
    """Fixed-point iteration u <- f + lambda * int K u; needs |lambda| ||K|| < 1.

    Raises DivergenceError once the sup norm of the iterate exceeds 1e6 times
    its starting value.
    """
    lam = complex(lam)
    if not isinstance(iterations, int) or iterations < 1:
        raise InvalidArgumentError(f"iterations must be an integer >= 1, got {iterations}")
    rule = _rule_for(kernel, config)
    weighted = _kernel_matrix(kernel, rule.nodes, rule.nodes) * rule.weights[None, :]
    f_nodes = _complex_values(f, rule.nodes)
    u = f_nodes.copy()
    start_norm = max(float(np.abs(u).max()), 1e-300)
    for _ in range(iterations):
        u = f_nodes + lam * (weighted @ u)
        if float(np.abs(u).max()) > _DIVERGENCE_GROWTH * start_norm:
            raise DivergenceError(
                f"iterate norm grew beyond {_DIVERGENCE_GROWTH:.0e} times its start; "
                f"|lambda| ||K|| likely exceeds 1"
            )
    if grid is None:
        return SampledFunction(rule.nodes, u)
    grid = np.asarray(grid, dtype=float)
    k_grid = _kernel_matrix(kernel, grid, rule.nodes)
    u_grid = _complex_values(f, grid) + lam * (k_grid * rule.weights[None, :]) @ u
    return SampledFunction(grid, u_grid)
