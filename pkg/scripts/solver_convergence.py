#!/usr/bin/env python3
"""Node-count convergence study for the three solver routes.

Solves the far-field kernel problem on [1, 5] at lambda = -1 for a sweep of
quadrature sizes and prints, per size, the deviation of each route from a
high-resolution Nystrom reference.  Both the midpoint and Gauss rules are
swept so their convergence orders are visible side by side.
"""

import cmath

import numpy as np

from fredscat.fredholm import SolverConfig, solve_neumann, solve_nystrom, solve_resolvent
from fredscat.quadrature import Interval
from fredscat.scattering import PotentialSpec, ReducedKernelChoice, derive_params, reduced_kernel


def forcing(x: float) -> complex:
    return cmath.exp(1j * x)


def main() -> None:
    params = derive_params(mass=2.0, hbar=1.0, energy=0.25, charge=1.0)
    kernel = reduced_kernel(
        PotentialSpec.coulomb(1.0),
        params,
        Interval(1.0, 5.0),
        ReducedKernelChoice.separable_far_field(),
    )
    grid = np.linspace(1.0, 5.0, 17)
    reference = solve_nystrom(
        kernel, forcing, params.lam, SolverConfig(nodes=400, rule_kind="gauss"), grid=grid
    ).values

    print(f"{'rule':>8} {'n':>5} {'resolvent':>12} {'nystrom':>12} {'neumann':>12}")
    for rule_kind in ("uniform", "gauss"):
        for n in (8, 16, 32, 64, 128):
            cfg = SolverConfig(nodes=n, rule_kind=rule_kind)
            dev = []
            for solver in (
                lambda: solve_resolvent(kernel, forcing, params.lam, grid, cfg).values,
                lambda: solve_nystrom(kernel, forcing, params.lam, cfg, grid=grid).values,
                lambda: solve_neumann(kernel, forcing, params.lam, 80, cfg, grid=grid).values,
            ):
                dev.append(float(np.abs(solver() - reference).max()))
            print(f"{rule_kind:>8} {n:>5} {dev[0]:12.3e} {dev[1]:12.3e} {dev[2]:12.3e}")


if __name__ == "__main__":
    main()
