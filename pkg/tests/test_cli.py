"""Tests for the command-line front end and its file contracts."""

import json
import math

import numpy as np
import pytest

from fredscat.cli import RunConfig, format_number, main, make_grid
from fredscat.scattering import psi_coulomb_closed


def read_csv(path):
    text = path.read_bytes().decode("ascii")
    assert "\r" not in text
    lines = text.split("\n")
    assert lines[-1] == ""  # file ends with a single LF
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:-1]]
    columns = {
        name: np.array([float(row[i]) for row in rows]) for i, name in enumerate(header)
    }
    return header, rows, columns


class TestHelpers:
    def test_format_number_has_twelve_significant_digits(self):
        assert format_number(1.0) == "1.00000000000e+00"
        assert format_number(-0.25) == "-2.50000000000e-01"
        assert format_number(123456.789) == "1.23456789000e+05"

    def test_make_grid_hits_the_stop_point(self):
        grid = make_grid(0.05, 10.0, 0.01)
        assert grid.size == 996
        assert abs(grid[0] - 0.05) < 1e-15
        assert abs(grid[-1] - 10.0) < 1e-9

    def test_run_config_defaults_give_unit_wavenumber(self):
        config = RunConfig()
        params = config.physical_params()
        assert params.k == 1.0
        assert params.lam == -1.0


@pytest.fixture(scope="module")
def fig_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("figs")
    assert main(["--command", "figures", "--out", str(out)]) == 0
    return out


class TestFiguresCommand:
    def test_emits_four_files(self, fig_dir):
        for stem in ("fig1", "fig2", "fig3", "fig4"):
            path = fig_dir / f"{stem}.csv"
            assert path.exists() and path.stat().st_size > 0

    def test_fig1_structure(self, fig_dir):
        header, rows, columns = read_csv(fig_dir / "fig1.csv")
        assert header == ["x", "re_psi", "im_psi", "abs_psi"]
        assert len(rows) >= 100
        assert not any(row[-1].endswith(",") for row in rows)

    def test_fig1_matches_closed_form_at_unit_distance(self, fig_dir):
        _, _, columns = read_csv(fig_dir / "fig1.csv")
        idx = int(np.argmin(np.abs(columns["x"] - 1.0)))
        x = float(columns["x"][idx])
        expected = psi_coulomb_closed(x, -1.0)
        assert abs(columns["re_psi"][idx] - expected.real) < 1e-9
        assert abs(columns["im_psi"][idx] - expected.imag) < 1e-9
        assert abs(columns["abs_psi"][idx] - abs(expected)) < 1e-9

    def test_fig2_has_five_screening_groups(self, fig_dir):
        header, _, _ = read_csv(fig_dir / "fig2.csv")
        for a in (1, 2, 3, 4, 5):
            assert f"re_psi_a{a}" in header

    def test_fig3_zero_screening_equals_coulomb(self, fig_dir):
        _, _, columns = read_csv(fig_dir / "fig3.csv")
        for base in ("re_psi", "im_psi", "abs_psi"):
            gap = np.abs(columns[f"{base}_coulomb"] - columns[f"{base}_a0"]).max()
            assert gap < 1e-12

    def test_fig4_surface_extents(self, fig_dir):
        header, rows, columns = read_csv(fig_dir / "fig4.csv")
        assert header[:2] == ["x", "a"]
        assert "abs_psi" in header
        assert len(rows) >= 100
        assert abs(columns["x"].min() - 0.1) < 1e-12
        assert abs(columns["a"].min() - 0.5) < 1e-12
        assert columns["a"].max() >= 49.5

    def test_determinism_across_runs(self, fig_dir, tmp_path):
        assert main(["--command", "figures", "--out", str(tmp_path)]) == 0
        for stem in ("fig1", "fig2", "fig3", "fig4"):
            first = (fig_dir / f"{stem}.csv").read_bytes()
            second = (tmp_path / f"{stem}.csv").read_bytes()
            assert first == second


class TestSolveCommand:
    def test_solver_columns_and_report(self, tmp_path, capsys):
        code = main(
            [
                "--command", "solve",
                "--grid", "1:5:0.2",
                "--nodes", "64",
                "--out", str(tmp_path),
            ]
        )
        assert code == 0
        header, _, columns = read_csv(tmp_path / "solve.csv")
        for group in ("resolvent", "nystrom", "closed"):
            assert f"re_psi_{group}" in header
        deviation = np.abs(
            columns["re_psi_resolvent"] - columns["re_psi_nystrom"]
        ).max()
        assert deviation < 1e-6
        assert "max |resolvent - nystrom|" in capsys.readouterr().out

    def test_zero_coupling_gives_plane_wave_everywhere(self, tmp_path):
        code = main(
            [
                "--command", "solve",
                "--charge", "0",
                "--grid", "1:5:0.5",
                "--nodes", "32",
                "--out", str(tmp_path),
            ]
        )
        assert code == 0
        _, _, columns = read_csv(tmp_path / "solve.csv")
        xs = columns["x"]
        for group in ("resolvent", "nystrom", "closed"):
            assert np.abs(columns[f"re_psi_{group}"] - np.cos(xs)).max() < 1e-12
            assert np.abs(columns[f"im_psi_{group}"] - np.sin(xs)).max() < 1e-12

    def test_singular_determinant_exits_two(self, tmp_path, capsys):
        code = main(
            [
                "--command", "solve",
                "--det-tolerance", "10",
                "--grid", "1:5:1",
                "--nodes", "32",
                "--out", str(tmp_path),
            ]
        )
        assert code == 2
        assert "SingularDeterminant" in capsys.readouterr().err


class TestOtherCommands:
    def test_potentials_columns(self, tmp_path):
        code = main(
            ["--command", "potentials", "--a", "1", "--a", "3", "--grid", "0.5:10:0.5", "--out", str(tmp_path)]
        )
        assert code == 0
        header, _, columns = read_csv(tmp_path / "potentials.csv")
        assert header == ["r", "v_coulomb", "v_podolsky_a1", "v_podolsky_a3"]
        assert np.all(columns["v_podolsky_a1"] <= columns["v_coulomb"])

    def test_closed_form_output(self, tmp_path):
        code = main(["--command", "closed-form", "--grid", "0.5:5:0.5", "--out", str(tmp_path)])
        assert code == 0
        header, rows, _ = read_csv(tmp_path / "closed_form.csv")
        assert header[0] == "x"
        assert "re_psi_coulomb" in header
        assert "re_psi_a5" in header

    def test_selftest_passes_by_default(self, capsys):
        assert main(["--command", "selftest", "--nodes", "64"]) == 0
        out = capsys.readouterr().out
        assert "PASS rank1_determinant" in out
        assert "|d2|" in out

    def test_selftest_reports_injected_misconfiguration(self, capsys):
        code = main(["--command", "selftest", "--nodes", "64", "--det-tolerance", "1e3"])
        assert code == 2
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "SingularDeterminant" in out

    def test_selftest_json_is_machine_readable(self, capsys):
        assert main(["--command", "selftest", "--nodes", "64", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert {"name", "passed", "detail"} <= set(payload["checks"][0])
        assert all(check["passed"] for check in payload["checks"])


class TestJsonFormat:
    def test_json_mirrors_csv_columns(self, tmp_path):
        assert main(["--command", "figures", "--format", "json", "--out", str(tmp_path)]) == 0
        payload = json.loads((tmp_path / "fig1.json").read_text())
        assert payload["meta"]["command"] == "figures"
        assert payload["meta"]["lambda"] == -1.0
        assert payload["meta"]["k"] == 1.0
        assert set(payload["columns"]) == {"x", "re_psi", "im_psi", "abs_psi"}
        xs = payload["columns"]["x"]
        assert len(xs) == len(payload["columns"]["re_psi"]) >= 100


class TestValidation:
    @pytest.mark.parametrize(
        "argv",
        [
            ["--grid", "0:10:0.01"],
            ["--grid", "1:0.5:0.01"],
            ["--grid", "1:5:-0.1"],
            ["--grid", "nonsense"],
            ["--interval", "5:1"],
            ["--a", "-1"],
            ["--mass", "-2"],
            ["--series-order", "9"],
            ["--epsilon", "0", "--kernel", "regularized"],
        ],
    )
    def test_bad_config_exits_one_without_output(self, argv, tmp_path, capsys):
        code = main(argv + ["--out", str(tmp_path)])
        assert code == 1
        assert "error:" in capsys.readouterr().err
        assert list(tmp_path.iterdir()) == []
