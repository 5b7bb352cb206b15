"""Command-line front end: figure data, numeric solves, and self-tests.

Output contract: CSV files carry an exact header line, scientific notation
with 12 significant digits, comma separators, LF line endings, and no
trailing separator.  JSON output mirrors the CSV columns as arrays under a
top-level object whose ``meta`` block records the fully resolved
configuration.  Identical configurations produce byte-identical files.

Exit codes: 0 success, 1 validation error, 2 numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import NumericalError, ValidationError
from .fredholm import SolverConfig, solve_nystrom, solve_resolvent
from .quadrature import Interval
from .scattering import (
    DEFAULT_REGULARIZATION_EPSILON,
    PhysicalParams,
    PotentialSpec,
    ReducedKernelChoice,
    coulomb_potential,
    derive_params,
    podolsky_potential,
    reduced_kernel,
    sample_wavefunction,
)
from .selftest import run_selftest
from .special import plane_wave

COMMANDS = ("potentials", "closed-form", "solve", "figures", "selftest")
DATA_COMMANDS = ("potentials", "closed-form", "solve", "figures")

DEFAULT_GRID = (0.05, 10.0, 0.01)
DEFAULT_INTERVAL = (1.0, 5.0)
FIG2_SCREENINGS = (1.0, 2.0, 3.0, 4.0, 5.0)
FIG3_SCREENINGS = (0.0, 2.0, 5.0)
FIG4_X_GRID = (0.1, 10.0, 0.1)
FIG4_A_GRID = (0.5, 50.0, 0.5)

THREADS_ENV_VAR = "FREDHOLM_SEED_THREADS"


@dataclass
class RunConfig:
    """Fully resolved invocation: one command plus every knob it may read."""

    command: str = "figures"
    interval: Interval = field(default_factory=lambda: Interval(*DEFAULT_INTERVAL))
    grid_start: float = DEFAULT_GRID[0]
    grid_stop: float = DEFAULT_GRID[1]
    grid_step: float = DEFAULT_GRID[2]
    a_values: tuple[float, ...] | None = None
    mass: float = 2.0
    hbar: float = 1.0
    energy: float = 0.25
    charge: float = 1.0
    nodes: int = 128
    series_order: int = 4
    det_tolerance: float = 1e-10
    kernel: str = "separable"
    epsilon: float = DEFAULT_REGULARIZATION_EPSILON
    out_format: str = "csv"
    out_dir: str = "."
    threads: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if not self.grid_step > 0:
            raise ValidationError(f"grid step must be positive, got {self.grid_step}")
        if not self.grid_stop > self.grid_start:
            raise ValidationError(
                f"grid stop must exceed start, got {self.grid_start}:{self.grid_stop}"
            )
        if self.command in DATA_COMMANDS and self.grid_start <= 0:
            raise ValidationError(
                f"grid must start above 0 for {self.command} (the origin is singular), "
                f"got {self.grid_start}"
            )
        if self.a_values is not None and any(a < 0 for a in self.a_values):
            raise ValidationError(f"screening lengths must be >= 0, got {self.a_values}")
        if self.kernel not in ("separable", "regularized"):
            raise ValidationError(f"kernel must be 'separable' or 'regularized', got {self.kernel!r}")
        if not self.epsilon > 0:
            raise ValidationError(f"epsilon must be positive, got {self.epsilon}")
        if self.out_format not in ("csv", "json"):
            raise ValidationError(f"format must be 'csv' or 'json', got {self.out_format!r}")

    def solver_config(self) -> SolverConfig:
        return SolverConfig(
            nodes=self.nodes,
            series_order_max=self.series_order,
            det_tolerance=self.det_tolerance,
            rule_kind="gauss",
        )

    def physical_params(self) -> PhysicalParams:
        return derive_params(self.mass, self.hbar, self.energy, self.charge)

    def grid(self) -> np.ndarray:
        return make_grid(self.grid_start, self.grid_stop, self.grid_step)

    def kernel_choice(self) -> ReducedKernelChoice:
        if self.kernel == "separable":
            return ReducedKernelChoice.separable_far_field()
        return ReducedKernelChoice.regularized_green(self.epsilon)

    def meta(self) -> dict:
        params = self.physical_params()
        return {
            "command": self.command,
            "interval": [self.interval.a, self.interval.b],
            "grid": [self.grid_start, self.grid_stop, self.grid_step],
            "a_values": list(self.a_values) if self.a_values is not None else None,
            "mass": self.mass,
            "hbar": self.hbar,
            "energy": self.energy,
            "charge": self.charge,
            "k": params.k,
            "lambda": params.lam,
            "nodes": self.nodes,
            "series_order": self.series_order,
            "det_tolerance": self.det_tolerance,
            "kernel": self.kernel,
            "epsilon": self.epsilon,
            "format": self.out_format,
            "out": self.out_dir,
            "threads": self.threads,
        }


def make_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive arithmetic grid; the stop point is kept when step divides the span."""
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def format_number(value: float) -> str:
    """Scientific notation with 12 significant digits."""
    return f"{value:.11e}"


def screening_label(a: float) -> str:
    return f"a{a:g}"


def wave_columns(label: str, values: np.ndarray) -> list[tuple[str, np.ndarray]]:
    suffix = f"_{label}" if label else ""
    return [
        (f"re_psi{suffix}", values.real.copy()),
        (f"im_psi{suffix}", values.imag.copy()),
        (f"abs_psi{suffix}", np.abs(values)),
    ]


def write_dataset(path: Path, columns: list[tuple[str, np.ndarray]], meta: dict, fmt: str) -> None:
    names = [name for name, _ in columns]
    if len(set(names)) != len(names):
        raise ValidationError(f"duplicate column names in {path.name}")
    lengths = {len(series) for _, series in columns}
    if len(lengths) != 1:
        raise ValidationError(f"ragged columns in {path.name}")
    if fmt == "csv":
        lines = [",".join(names)]
        for row in zip(*(series for _, series in columns)):
            lines.append(",".join(format_number(float(v)) for v in row))
        path.write_bytes(("\n".join(lines) + "\n").encode("ascii"))
    else:
        payload = {
            "meta": meta,
            "columns": {name: [float(v) for v in series] for name, series in columns},
        }
        path.write_bytes((json.dumps(payload, indent=2) + "\n").encode("ascii"))


def _dataset_path(out_dir: str, stem: str, fmt: str) -> Path:
    return Path(out_dir) / f"{stem}.{fmt}"


def cmd_figures(config: RunConfig) -> int:
    params = config.physical_params()
    grid = config.grid()
    meta = config.meta()
    fmt = config.out_format
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    # fig1: the bare point-charge curve
    coulomb = sample_wavefunction("coulomb", grid, 0.0, params)
    columns = [("x", grid.copy())] + wave_columns("", coulomb.values)
    write_dataset(_dataset_path(config.out_dir, "fig1", fmt), columns, meta, fmt)

    # fig2: screened curves, one group per screening length
    fig2_a = config.a_values if config.a_values else FIG2_SCREENINGS
    columns = [("x", grid.copy())]
    for a in fig2_a:
        wave = sample_wavefunction("podolsky", grid, a, params)
        columns += wave_columns(screening_label(a), wave.values)
    write_dataset(_dataset_path(config.out_dir, "fig2", fmt), columns, meta, fmt)

    # fig3: overlay of the point-charge curve with selected screenings
    fig3_a = config.a_values if config.a_values else FIG3_SCREENINGS
    columns = [("x", grid.copy())] + wave_columns("coulomb", coulomb.values)
    for a in fig3_a:
        wave = sample_wavefunction("podolsky", grid, a, params)
        columns += wave_columns(screening_label(a), wave.values)
    write_dataset(_dataset_path(config.out_dir, "fig3", fmt), columns, meta, fmt)

    # fig4: (x, a) surface in long format
    xs = make_grid(*FIG4_X_GRID)
    screenings = make_grid(*FIG4_A_GRID)
    x_col = np.tile(xs, screenings.size)
    a_col = np.repeat(screenings, xs.size)
    values = np.empty(x_col.size, dtype=complex)
    for i, a in enumerate(screenings):
        wave = sample_wavefunction("podolsky", xs, float(a), params)
        values[i * xs.size : (i + 1) * xs.size] = wave.values
    columns = [("x", x_col), ("a", a_col.astype(float))] + wave_columns("", values)
    write_dataset(_dataset_path(config.out_dir, "fig4", fmt), columns, meta, fmt)
    print(f"wrote fig1..fig4 ({fmt}) to {out.resolve()}")
    return 0


def cmd_solve(config: RunConfig) -> int:
    params = config.physical_params()
    grid = config.grid()
    if config.a_values:
        potential = PotentialSpec.podolsky(config.charge, config.a_values[0])
        screening = config.a_values[0]
    else:
        potential = PotentialSpec.coulomb(config.charge)
        screening = 0.0
    kernel = reduced_kernel(potential, params, config.interval, config.kernel_choice())
    solver = config.solver_config()

    def forcing(x: float) -> complex:
        return plane_wave(x, params.k)

    u_resolvent = solve_resolvent(kernel, forcing, params.lam, grid, solver)
    u_nystrom = solve_nystrom(kernel, forcing, params.lam, solver, grid=grid)

    columns = [("x", grid.copy())]
    columns += wave_columns("resolvent", u_resolvent.values)
    columns += wave_columns("nystrom", u_nystrom.values)
    deviation = float(np.abs(u_resolvent.values - u_nystrom.values).max())

    closed_note = ""
    if abs(params.k - 1.0) <= 1e-9:
        which = "podolsky" if config.a_values else "coulomb"
        closed = sample_wavefunction(which, grid, screening, params)
        columns += wave_columns("closed", closed.values)
        closed_gap = float(np.abs(u_resolvent.values - closed.values).max())
        closed_note = f"; closed-form column included, max |resolvent - closed| = {closed_gap:.6e}"
    else:
        closed_note = "; closed-form column omitted (wave number is not 1)"

    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_dataset(_dataset_path(config.out_dir, "solve", config.out_format), columns, config.meta(), config.out_format)
    print(f"max |resolvent - nystrom| = {deviation:.6e}{closed_note}")
    print(f"wrote solve.{config.out_format} to {out.resolve()}")
    return 0


def cmd_potentials(config: RunConfig) -> int:
    grid = config.grid()
    screenings = config.a_values if config.a_values else FIG2_SCREENINGS
    columns = [("r", grid.copy())]
    columns.append(("v_coulomb", np.array([coulomb_potential(float(r), config.charge) for r in grid])))
    for a in screenings:
        series = np.array([podolsky_potential(float(r), config.charge, a) for r in grid])
        columns.append((f"v_podolsky_{screening_label(a)}", series))
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_dataset(_dataset_path(config.out_dir, "potentials", config.out_format), columns, config.meta(), config.out_format)
    print(f"wrote potentials.{config.out_format} to {out.resolve()}")
    return 0


def cmd_closed_form(config: RunConfig) -> int:
    params = config.physical_params()
    grid = config.grid()
    screenings = config.a_values if config.a_values else FIG2_SCREENINGS
    coulomb = sample_wavefunction("coulomb", grid, 0.0, params)
    columns = [("x", grid.copy())] + wave_columns("coulomb", coulomb.values)
    for a in screenings:
        wave = sample_wavefunction("podolsky", grid, a, params)
        columns += wave_columns(screening_label(a), wave.values)
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_dataset(_dataset_path(config.out_dir, "closed_form", config.out_format), columns, config.meta(), config.out_format)
    print(f"wrote closed_form.{config.out_format} to {out.resolve()}")
    return 0


def cmd_selftest(config: RunConfig) -> int:
    results = run_selftest(config.solver_config())
    if config.out_format == "json":
        payload = [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ]
        print(json.dumps({"meta": config.meta(), "checks": payload}, indent=2))
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name} - {r.detail}")
    failures = sum(not r.passed for r in results)
    if failures:
        print(f"{failures} of {len(results)} checks failed", file=sys.stderr)
        return 2
    # keep stdout pure JSON in json mode
    summary_stream = sys.stderr if config.out_format == "json" else sys.stdout
    print(f"all {len(results)} checks passed", file=summary_stream)
    return 0


def _read_thread_cap() -> int:
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        print(f"ignoring non-integer {THREADS_ENV_VAR}={raw!r}", file=sys.stderr)
        return 1


def _parse_interval(text: str) -> Interval:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValidationError(f"interval must look like 'a:b', got {text!r}")
    try:
        return Interval(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ValidationError(f"bad interval {text!r}: {exc}") from None


def _parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must look like 'start:stop:step', got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), float(parts[2])
    except ValueError:
        raise ValidationError(f"bad grid {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fredscat",
        description="Fredholm resolvent solver and closed-form wave data for 1D "
        "scattering by point-charge and screened potentials.",
    )
    parser.add_argument("--command", choices=COMMANDS, default="figures",
                        help="what to run (default: figures)")
    parser.add_argument("--a", action="append", type=float, default=None, metavar="A",
                        help="screening length; repeat for several values")
    parser.add_argument("--interval", default=f"{DEFAULT_INTERVAL[0]}:{DEFAULT_INTERVAL[1]}",
                        metavar="A:B", help="integration interval for the solver (default 1:5)")
    parser.add_argument("--grid", default=f"{DEFAULT_GRID[0]}:{DEFAULT_GRID[1]}:{DEFAULT_GRID[2]}",
                        metavar="START:STOP:STEP", help="output grid (default 0.05:10:0.01)")
    parser.add_argument("--mass", type=float, default=2.0)
    parser.add_argument("--hbar", type=float, default=1.0)
    parser.add_argument("--energy", type=float, default=0.25)
    parser.add_argument("--charge", type=float, default=1.0)
    parser.add_argument("--nodes", type=int, default=128, help="quadrature nodes (default 128)")
    parser.add_argument("--series-order", type=int, default=4,
                        help="determinant series truncation order, 1..6 (default 4)")
    parser.add_argument("--det-tolerance", type=float, default=1e-10,
                        help="threshold below which the determinant counts as singular")
    parser.add_argument("--kernel", choices=("regularized", "separable"), default="separable",
                        help="reduced kernel family for the solve command")
    parser.add_argument("--epsilon", type=float, default=DEFAULT_REGULARIZATION_EPSILON,
                        help="regularization length for the regularized kernel")
    parser.add_argument("--format", choices=("csv", "json"), default="csv", dest="out_format")
    parser.add_argument("--out", default=".", metavar="DIR", help="output directory")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    grid = _parse_grid(args.grid)
    return RunConfig(
        command=args.command,
        interval=_parse_interval(args.interval),
        grid_start=grid[0],
        grid_stop=grid[1],
        grid_step=grid[2],
        a_values=tuple(args.a) if args.a else None,
        mass=args.mass,
        hbar=args.hbar,
        energy=args.energy,
        charge=args.charge,
        nodes=args.nodes,
        series_order=args.series_order,
        det_tolerance=args.det_tolerance,
        kernel=args.kernel,
        epsilon=args.epsilon,
        out_format=args.out_format,
        out_dir=args.out,
        threads=_read_thread_cap(),
    )


_DISPATCH = {
    "figures": cmd_figures,
    "solve": cmd_solve,
    "potentials": cmd_potentials,
    "closed-form": cmd_closed_form,
    "selftest": cmd_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        config.validate()
        # constructing these validates solver and physical settings up front
        config.solver_config()
        config.physical_params()
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    try:
        return _DISPATCH[config.command](config)
    except ValidationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
