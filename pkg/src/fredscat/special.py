"""Complex-argument exponential integral and elementary wave helpers.

``e1_complex`` evaluates E1(z) = integral_z^inf e^-u/u du on the principal
branch (cut along the closed negative real axis).  Two classical methods are
combined: the convergent power series

    E1(z) = -gamma - log z + sum_{n>=1} (-1)^(n+1) z^n / (n * n!)

below |z| = 4 and a modified-Lentz continued fraction above.  The fraction
converges slowly in a narrow wedge hugging the branch cut; exactly there the
series carries no cancellation (the result dominates every term because
|E1| ~ e^|Re z|/|z| for Re z < 0), so the series doubles as a fallback when
Lentz stalls.
"""

from __future__ import annotations

import cmath
import math

from .errors import DomainError, EvaluationError, InvalidArgumentError

EULER_GAMMA = 0.5772156649015328606065120900824024310422

_SERIES_CF_SPLIT = 4.0
_SERIES_MAX_TERMS = 2000
_CF_MAX_ITER = 10_000
_TINY = 1e-300


def _e1_power_series(z: complex, max_terms: int = _SERIES_MAX_TERMS) -> complex:
    """Power series for E1(z); converges for every z off the cut."""
    total = -EULER_GAMMA - cmath.log(z)
    term = z
    for n in range(1, max_terms):
        total += term
        if n > 3 and abs(term) <= 1e-18 * abs(total):
            return total
        # term_{n+1} = term_n * (-z) * n / (n+1)^2
        term *= -z * n / ((n + 1) * (n + 1))
    raise EvaluationError(f"E1 power series did not converge for z = {z}")


def _e1_continued_fraction(z: complex, max_iter: int = _CF_MAX_ITER) -> complex:
    """Modified Lentz evaluation of E1(z) = e^-z / (z + 1 - 1/(z + 3 - 4/...)).

    Raises EvaluationError when the iteration stalls; that happens only for
    z close to the negative real axis at moderate |z|.
    """
    b = z + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0 else 1.0 / _TINY
    h = d
    for i in range(1, max_iter + 1):
        a = -float(i) * float(i)
        b += 2.0
        den = a * d + b
        if den == 0:
            den = _TINY
        c = b + a / c
        if c == 0:
            c = _TINY
        d = 1.0 / den
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 5e-16:
            return h * cmath.exp(-z)
    raise EvaluationError(f"E1 continued fraction stalled for z = {z}")


def e1_complex(z: complex) -> complex:
    """Exponential integral E1 on the principal branch.

    Accurate to better than 1e-12 relative for |z| <= 50.  Raises DomainError
    for z = 0 or z on the closed negative real axis.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"E1 argument must be finite, got {z}")
    if z.imag == 0.0 and z.real <= 0.0:
        raise DomainError(f"E1 is undefined at 0 and on the negative real axis, got {z}")

    if abs(z) < _SERIES_CF_SPLIT:
        result = _e1_power_series(z)
    else:
        try:
            result = _e1_continued_fraction(z)
        except EvaluationError:
            if z.real >= 0.0:
                raise
            # Near-cut stall: series is cancellation-free in the left half plane.
            result = _e1_power_series(z)

    if not (math.isfinite(result.real) and math.isfinite(result.imag)):
        raise EvaluationError(f"E1 overflowed for z = {z}")
    return result


def plane_wave(x: float, k: float) -> complex:
    """Incident wave e^(i k x); unit modulus up to roundoff."""
    if not (math.isfinite(x) and math.isfinite(k)):
        raise InvalidArgumentError(f"plane_wave arguments must be finite, got x={x}, k={k}")
    return cmath.exp(1j * k * x)
