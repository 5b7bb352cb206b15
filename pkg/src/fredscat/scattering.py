"""Physics layer: potentials, Green's function, closed-form waves, 1D kernels.

The closed-form waves are tied to the unit-wave-number scenario on the
interval [1, 5]: their constants (e^{6i}, sin 4, E1(i), E1(5i)) encode k = 1
and those integration limits, so ``sample_wavefunction`` refuses parameter
sets with k != 1 instead of emitting curves the formulas do not describe.

Two reduced 1D kernel families feed the numeric solvers.  Neither claims to
reproduce the closed forms (no rank-1 kernel can produce both their numerator
and denominator structure); agreement between the numeric pipeline and the
closed forms is exploratory output only.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError, SingularPointError
from .fredholm import KernelSpec, SampledFunction
from .quadrature import Interval
from .special import e1_complex

FOUR_PI = 4.0 * math.pi

DEFAULT_REGULARIZATION_EPSILON = 0.05


def coulomb_potential(r: float, charge: float) -> float:
    """Point-charge potential Q^2 / (4 pi r); diverges toward the origin."""
    if not (math.isfinite(r) and math.isfinite(charge)):
        raise InvalidArgumentError(f"arguments must be finite, got r={r}, Q={charge}")
    if r <= 0:
        raise SingularPointError(f"Coulomb potential is singular at r <= 0, got r={r}")
    return charge * charge / (FOUR_PI * r)


def podolsky_potential(r: float, charge: float, a: float) -> float:
    """Screened potential Q^2/(4 pi) * (1 - e^(-r/a)) / r.

    Finite at the origin, where it takes the limit value Q^2 / (4 pi a);
    a = 0 collapses to the Coulomb potential.
    """
    if not (math.isfinite(r) and math.isfinite(charge) and math.isfinite(a)):
        raise InvalidArgumentError(f"arguments must be finite, got r={r}, Q={charge}, a={a}")
    if r < 0:
        raise InvalidArgumentError(f"distance must be >= 0, got r={r}")
    if a < 0:
        raise InvalidArgumentError(f"screening length must be >= 0, got a={a}")
    if a == 0:
        return coulomb_potential(r, charge)
    if r == 0:
        return charge * charge / (FOUR_PI * a)
    # -expm1 keeps precision where r << a; the screening factor lies in [0, 1]
    # and multiplies the Coulomb value, so the Coulomb bound holds exactly
    return -math.expm1(-r / a) * coulomb_potential(r, charge)


def greens_function(rho: float, k: float) -> complex:
    """Outgoing-wave kernel -e^(i k rho) / (4 pi rho) of the Helmholtz operator."""
    if not (math.isfinite(rho) and math.isfinite(k)):
        raise InvalidArgumentError(f"arguments must be finite, got rho={rho}, k={k}")
    if rho <= 0:
        raise SingularPointError(f"Green's function is singular at rho <= 0, got rho={rho}")
    return -cmath.exp(1j * k * rho) / (FOUR_PI * rho)


@dataclass(frozen=True)
class PhysicalParams:
    """Scenario parameters with the derived wave number and coupling."""

    mass: float
    hbar: float
    energy: float
    charge: float
    k: float
    lam: float


def derive_params(mass: float, hbar: float, energy: float, charge: float) -> PhysicalParams:
    """k = sqrt(2 m E) / hbar and lambda = -m Q^2 / (2 hbar^2)."""
    values = (mass, hbar, energy, charge)
    if not all(math.isfinite(v) for v in values):
        raise InvalidArgumentError(f"parameters must be finite, got {values}")
    if mass <= 0 or hbar <= 0 or energy <= 0:
        raise InvalidArgumentError(
            f"mass, hbar, and energy must be positive, got m={mass}, hbar={hbar}, E={energy}"
        )
    k = math.sqrt(2.0 * mass * energy) / hbar
    lam = -mass * charge * charge / (2.0 * hbar * hbar)
    return PhysicalParams(mass=mass, hbar=hbar, energy=energy, charge=charge, k=k, lam=lam)


@dataclass(frozen=True)
class PotentialSpec:
    """Coulomb or Podolsky potential with its parameters."""

    kind: str
    charge: float
    screening: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in ("coulomb", "podolsky"):
            raise InvalidArgumentError(f"kind must be 'coulomb' or 'podolsky', got {self.kind!r}")
        if not math.isfinite(self.charge):
            raise InvalidArgumentError(f"charge must be finite, got {self.charge}")
        if not (math.isfinite(self.screening) and self.screening >= 0):
            raise InvalidArgumentError(f"screening length must be >= 0, got {self.screening}")

    @classmethod
    def coulomb(cls, charge: float) -> "PotentialSpec":
        return cls(kind="coulomb", charge=charge)

    @classmethod
    def podolsky(cls, charge: float, a: float) -> "PotentialSpec":
        return cls(kind="podolsky", charge=charge, screening=a)

    @property
    def singular_at_origin(self) -> bool:
        return self.kind == "coulomb" or self.screening == 0.0

    def evaluate(self, r: float) -> float:
        if self.kind == "coulomb":
            return coulomb_potential(r, self.charge)
        return podolsky_potential(r, self.charge, self.screening)


@dataclass(frozen=True)
class ReducedKernelChoice:
    """Which documented 1D kernel family the numeric pipeline should use."""

    kind: str
    epsilon: float = DEFAULT_REGULARIZATION_EPSILON

    def __post_init__(self) -> None:
        if self.kind not in ("closed-form-only", "regularized-green", "separable-far-field"):
            raise InvalidArgumentError(f"unknown kernel choice {self.kind!r}")
        if self.kind == "regularized-green" and not self.epsilon > 0:
            raise InvalidArgumentError(f"epsilon must be positive, got {self.epsilon}")

    @classmethod
    def closed_form_only(cls) -> "ReducedKernelChoice":
        return cls(kind="closed-form-only")

    @classmethod
    def regularized_green(cls, epsilon: float = DEFAULT_REGULARIZATION_EPSILON) -> "ReducedKernelChoice":
        return cls(kind="regularized-green", epsilon=epsilon)

    @classmethod
    def separable_far_field(cls) -> "ReducedKernelChoice":
        return cls(kind="separable-far-field")


def reduced_kernel(
    potential: PotentialSpec,
    params: PhysicalParams,
    interval: Interval,
    choice: ReducedKernelChoice,
) -> KernelSpec:
    """Build the 1D kernel fed to the Fredholm solvers.

    regularized-green:    K(x,t) = e^(i k rho) / rho * V(t), rho = sqrt((x-t)^2 + eps^2)
    separable-far-field:  K(x,t) = g(x) h(t), g(x) = e^(i k x)/x, h(t) = e^(-i k t) V(t)
    """
    if choice.kind == "closed-form-only":
        raise InvalidArgumentError("closed-form-only bypasses the solver; pick a kernel family")
    if potential.singular_at_origin and interval.a <= 0:
        raise SingularPointError(
            f"interval [{interval.a}, {interval.b}] touches the potential singularity at r = 0"
        )
    if interval.a < 0:
        raise SingularPointError("radial interval must lie in [0, inf)")
    k = params.k

    if choice.kind == "separable-far-field":
        if interval.a <= 0:
            raise SingularPointError("far-field factor 1/x needs an interval within (0, inf)")

        def g(x: float) -> complex:
            return cmath.exp(1j * k * x) / x

        def h(t: float) -> complex:
            return cmath.exp(-1j * k * t) * potential.evaluate(t)

        return KernelSpec.separable(g, h, interval)

    epsilon = choice.epsilon

    def green_eval(x: float, t: float) -> complex:
        rho = math.hypot(x - t, epsilon)
        return cmath.exp(1j * k * rho) / rho * potential.evaluate(t)

    return KernelSpec.general(green_eval, interval)


def _closed_form_denominator(a: float, lam: float) -> complex:
    return 1.0 + lam * (e1_complex(complex(-a, 1.0)) - e1_complex(complex(-a, 5.0)))


def _coulomb_amplitude(lam: float) -> complex:
    """Coefficient of the 1/x scattered term of the Coulomb closed form."""
    return cmath.exp(6j) * math.sin(4.0) * lam / _closed_form_denominator(0.0, lam)


def _podolsky_amplitude(a: float, lam: float) -> complex:
    """Coefficient of the 1/x scattered term of the Podolsky closed form.

    The prefactor e^(2i-5a)(e^(4a) - e^(8i))/(a - 2i) is expanded to
    (e^(2i-a) - e^(10i-5a))/(a - 2i) so large a cannot overflow e^(4a).
    """
    numerator = cmath.exp(complex(-a, 2.0)) - cmath.exp(complex(-5.0 * a, 10.0))
    return numerator / complex(a, -2.0) * lam / _closed_form_denominator(a, lam)


def psi_coulomb_closed(x: float, lam: float) -> complex:
    """Closed-form stationary wave for the Coulomb potential, e^(ix) + C(lam)/x."""
    if not (math.isfinite(x) and math.isfinite(lam)):
        raise InvalidArgumentError(f"arguments must be finite, got x={x}, lam={lam}")
    if x <= 0:
        raise SingularPointError(f"closed-form wave is undefined at x <= 0, got x={x}")
    return cmath.exp(1j * x) + _coulomb_amplitude(lam) / x


def psi_podolsky_closed(x: float, a: float, lam: float) -> complex:
    """Closed-form stationary wave for the Podolsky potential; a = 0 gives Coulomb."""
    if not (math.isfinite(x) and math.isfinite(a) and math.isfinite(lam)):
        raise InvalidArgumentError(f"arguments must be finite, got x={x}, a={a}, lam={lam}")
    if x <= 0:
        raise SingularPointError(f"closed-form wave is undefined at x <= 0, got x={x}")
    if a < 0:
        raise InvalidArgumentError(f"screening length must be >= 0, got a={a}")
    return cmath.exp(1j * x) + _podolsky_amplitude(a, lam) / x


def sample_wavefunction(
    which: str,
    grid: Sequence[float],
    a: float,
    params: PhysicalParams,
) -> SampledFunction:
    """Closed-form wave sampled on a positive grid, for figure emission."""
    grid = np.asarray(grid, dtype=float)
    if grid.size and grid.min() <= 0:
        raise SingularPointError("closed-form waves need grid points > 0")
    if abs(params.k - 1.0) > 1e-9:
        raise InvalidArgumentError(
            f"closed forms are derived at unit wave number, got k = {params.k}"
        )
    if which == "coulomb":
        amplitude = _coulomb_amplitude(params.lam)
    elif which == "podolsky":
        if a < 0:
            raise InvalidArgumentError(f"screening length must be >= 0, got a={a}")
        amplitude = _podolsky_amplitude(a, params.lam)
    else:
        raise InvalidArgumentError(f"which must be 'coulomb' or 'podolsky', got {which!r}")
    values = np.exp(1j * grid) + amplitude / grid
    return SampledFunction(grid, values)


def amplitude_range(wave: SampledFunction) -> float:
    """max|psi| - min|psi| over the sample; the wave-stabilization metric."""
    magnitudes = np.abs(wave.values)
    return float(magnitudes.max() - magnitudes.min())
