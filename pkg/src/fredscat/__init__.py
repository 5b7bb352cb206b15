"""Fredholm determinant/resolvent solver with a 1D scattering application."""

from .errors import (
    DivergenceError,
    DomainError,
    EvaluationError,
    FredscatError,
    InvalidArgumentError,
    NumericalError,
    SingularDeterminantError,
    SingularMatrixError,
    SingularPointError,
    ValidationError,
)
from .fredholm import (
    KernelSpec,
    SampledFunction,
    SolverConfig,
    determinant_coefficients,
    determinant_series_terms,
    first_minor_grid,
    fredholm_determinant,
    fredholm_first_minor,
    resolvent,
    resolvent_grid,
    solve_neumann,
    solve_nystrom,
    solve_resolvent,
)
from .quadrature import Interval, QuadratureRule, gauss_rule, integrate_1d, uniform_rule
from .scattering import (
    PhysicalParams,
    PotentialSpec,
    ReducedKernelChoice,
    amplitude_range,
    coulomb_potential,
    derive_params,
    greens_function,
    podolsky_potential,
    psi_coulomb_closed,
    psi_podolsky_closed,
    reduced_kernel,
    sample_wavefunction,
)
from .special import e1_complex, plane_wave

__all__ = [
    "DivergenceError",
    "DomainError",
    "EvaluationError",
    "FredscatError",
    "Interval",
    "InvalidArgumentError",
    "KernelSpec",
    "NumericalError",
    "PhysicalParams",
    "PotentialSpec",
    "QuadratureRule",
    "ReducedKernelChoice",
    "SampledFunction",
    "SingularDeterminantError",
    "SingularMatrixError",
    "SingularPointError",
    "SolverConfig",
    "ValidationError",
    "amplitude_range",
    "coulomb_potential",
    "derive_params",
    "determinant_coefficients",
    "determinant_series_terms",
    "e1_complex",
    "first_minor_grid",
    "fredholm_determinant",
    "fredholm_first_minor",
    "gauss_rule",
    "greens_function",
    "integrate_1d",
    "plane_wave",
    "podolsky_potential",
    "psi_coulomb_closed",
    "psi_podolsky_closed",
    "reduced_kernel",
    "resolvent",
    "resolvent_grid",
    "sample_wavefunction",
    "solve_neumann",
    "solve_nystrom",
    "solve_resolvent",
    "uniform_rule",
]

__version__ = "0.1.0"
