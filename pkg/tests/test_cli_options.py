"""
Tests for CLI commands and flags.

Runs the CLI in a subprocess with an isolated config directory.
"""

import csv
import json
import os
import subprocess
import sys

import pytest


@pytest.fixture
def cli(tmp_path):
    """Run `python -m lattice_floquet ARGS` with XDG_CONFIG_HOME in a temp dir."""
    env = dict(os.environ, XDG_CONFIG_HOME=str(tmp_path / "xdg"))
    env.pop("LATTICE_FLOQUET_THREADS", None)
    env.pop("LATTICE_FLOQUET_DEBUG", None)

    def run(*args, timeout=600):
        return subprocess.run(
            [sys.executable, "-m", "lattice_floquet", *args],
            capture_output=True,
            text=True,
            env=env,
            timeout=timeout,
        )

    return run


class TestCLIFlags:
    """Top-level flags."""

    def test_help_flag(self, cli):
        """Test: lattice-floquet --help"""
        result = cli("--help")
        assert result.returncode == 0
        assert "lattice-floquet" in result.stdout
        assert "USAGE" in result.stdout
        assert "builtin:NAME" in result.stdout

    def test_help_short_flag(self, cli):
        result = cli("-h")
        assert result.returncode == 0
        assert "COMMANDS" in result.stdout

    def test_version_flag(self, cli):
        """Test: lattice-floquet --version"""
        result = cli("--version")
        assert result.returncode == 0
        assert result.stdout.strip() == "lattice-floquet 0.1.0"

    def test_version_short_flag(self, cli):
        result = cli("-v")
        assert result.returncode == 0
        assert "0.1.0" in result.stdout

    def test_empty_invocation(self, cli):
        """No command prints help to stderr and exits 2."""
        result = cli()
        assert result.returncode == 2
        assert result.stdout == ""
        assert "USAGE" in result.stderr

    def test_invalid_flag_rejected(self, cli):
        result = cli("spectrum", "--not-a-flag")
        assert result.returncode == 2


class TestSpectrum:
    """The spectrum command."""

    def test_free_square_json(self, cli):
        result = cli("spectrum", "--lattice", "square", "--grid", "8", "8")
        assert result.returncode == 0, result.stderr
        data = json.loads(result.stdout)
        assert data["schema"] == 1
        assert data["command"] == "spectrum"
        assert data["periods"] == [1, 1]
        assert data["components"] == 1
        assert data["intervals"][0] == pytest.approx([-4.0, 4.0], abs=1e-9)
        assert data["gaps"] == []

    def test_builtin_fills_lattice_and_periods(self, cli):
        result = cli("spectrum", "--potential", "builtin:hex-1x1-Z", "--lambda", "0.25", "--grid", "16", "16")
        assert result.returncode == 0, result.stderr
        data = json.loads(result.stdout)
        assert data["lattice"] == "hexagonal"
        assert data["components"] == 2
        gap = data["gaps"][0]
        assert gap["left"] == pytest.approx(-0.25, abs=1e-6)
        assert gap["right"] == pytest.approx(0.25, abs=1e-6)
        assert gap["nearest_exceptional"] == 0.0

    def test_csv(self, cli):
        result = cli(
            "spectrum", "--potential", "builtin:hex-1x1-Z", "--lambda", "0.25",
            "--grid", "16", "16", "--format", "csv",
        )
        assert result.returncode == 0, result.stderr
        rows = list(csv.reader(result.stdout.splitlines()))
        assert rows[0] == ["component", "left", "right"]
        assert [r[0] for r in rows[1:]] == ["0", "1"]

    def test_out_file(self, cli, tmp_path):
        out = tmp_path / "spectrum.json"
        result = cli("spectrum", "--lattice", "triangular", "--grid", "8", "8", "--out", str(out))
        assert result.returncode == 0, result.stderr
        assert result.stdout == ""
        assert json.loads(out.read_text())["intervals"][0][1] == pytest.approx(6.0)

    def test_seed_fills_random_potential(self, cli):
        """--seed N with random:SUP matches random:SUP:N; another seed gives another spectrum."""
        base = ("spectrum", "--lattice", "triangular", "--periods", "2", "2", "--lambda", "1", "--grid", "8", "8")
        seeded = json.loads(cli(*base, "--potential", "random:0.5", "--seed", "4").stdout)
        inline = json.loads(cli(*base, "--potential", "random:0.5:4").stdout)
        other = json.loads(cli(*base, "--potential", "random:0.5", "--seed", "5").stdout)
        assert seeded["seed"] == 4
        assert seeded["intervals"] == inline["intervals"]
        assert seeded["intervals"] != other["intervals"]


class TestBands:

    def test_csv_and_samples(self, cli, tmp_path):
        samples = tmp_path / "samples.csv"
        result = cli(
            "bands", "--lattice", "hexagonal", "--format", "csv",
            "--grid", "8", "8", "--samples", str(samples),
        )
        assert result.returncode == 0, result.stderr
        rows = list(csv.reader(result.stdout.splitlines()))
        assert rows[0][:3] == ["k", "emin", "emax"]
        assert len(rows) == 3

        grid_rows = list(csv.reader(samples.read_text().splitlines()))
        assert grid_rows[0] == ["theta1", "theta2", "E1", "E2"]
        assert len(grid_rows) == 1 + 64

    def test_json(self, cli):
        result = cli("bands", "--potential", "builtin:tri-2x2", "--lambda", "0.1", "--grid", "8", "8")
        data = json.loads(result.stdout)
        assert [b["k"] for b in data["bands"]] == [0, 1, 2, 3]
        assert all(b["emin"] <= b["emax"] for b in data["bands"])


class TestGapScan:

    def test_linear_exponent(self, cli):
        result = cli(
            "gap-scan", "--potential", "builtin:hex-1x1-Z", "--grid", "16", "16",
            "--lambda-min", "0.05", "--lambda-max", "0.2", "--steps", "3", "--log", "--energy", "0",
        )
        assert result.returncode == 0, result.stderr
        data = json.loads(result.stdout)
        assert len(data["rows"]) == 3
        assert data["exponents"]["0"] == pytest.approx(1.0, abs=1e-3)

    def test_csv_exponent_rows(self, cli):
        result = cli(
            "gap-scan", "--potential", "builtin:hex-1x1-Z", "--grid", "16", "16",
            "--lambda-min", "0.1", "--lambda-max", "0.2", "--steps", "2", "--energy", "0", "--format", "csv",
        )
        assert result.returncode == 0, result.stderr
        lines = result.stdout.splitlines()
        assert lines[0] == "lambda,components,energy,gap_left,gap_right,width"
        assert lines[-1].startswith("# exponent,0,")

    def test_log_needs_positive_minimum(self, cli):
        result = cli(
            "gap-scan", "--lattice", "square", "--lambda-min", "0", "--lambda-max", "1", "--log",
        )
        assert result.returncode == 2


class TestUsageErrors:
    """Bad input exits 2 with a diagnostic on stderr."""

    @pytest.mark.parametrize("args", [
        ("spectrum", "--lattice", "kagome"),
        ("spectrum", "--lattice", "square", "--periods", "0", "1"),
        ("spectrum", "--potential", "random:0.1"),
        ("spectrum", "--lattice", "square", "--potential", "builtin:tri-2x2"),
        ("spectrum", "--lattice", "square", "--potential", "builtin:nope"),
        ("spectrum", "--lattice", "square", "--merge-tol", "0"),
        ("verify", "--builtin-override", "tri-2x2"),
    ])
    def test_exit_code(self, cli, args):
        result = cli(*args)
        assert result.returncode == 2
        assert "Error" in result.stderr
        assert result.stdout == ""

    def test_missing_potential_file(self, cli, tmp_path):
        result = cli("spectrum", "--lattice", "square", "--potential", f"file:{tmp_path / 'absent.json'}")
        assert result.returncode == 2
        assert "file" in result.stderr


class TestVerify:

    def test_lemmas_pass(self, cli):
        result = cli("verify", "--suite", "lemmas")
        assert result.returncode == 0, result.stderr
        data = json.loads(result.stdout)
        assert data["passed"] is True
        assert data["suite"] == "lemmas"
        assert all(c["status"] == "pass" for c in data["checks"])
        assert "checks passed" in result.stderr

    def test_negative_control(self, cli):
        """A random potential in place of tri-2x2 must fail the triangular suite."""
        result = cli("verify", "--suite", "tri", "--builtin-override", "tri-2x2=random:1:7")
        assert result.returncode == 1
        data = json.loads(result.stdout)
        assert data["passed"] is False
        assert data["overrides"] == ["tri-2x2"]
        failed = {c["check_id"] for c in data["checks"] if c["status"] != "pass"}
        assert "tri.det_identity" in failed
        assert "tri.w_factorizations" not in failed

    def test_unknown_suite(self, cli):
        assert cli("verify", "--suite", "everything").returncode == 2


class TestConfig:

    def test_path(self, cli, tmp_path):
        result = cli("config", "path")
        assert result.returncode == 0
        assert result.stdout.strip() == str(tmp_path / "xdg" / "lattice-floquet" / "config.json")

    def test_init_then_show(self, cli, tmp_path):
        assert cli("config", "init").returncode == 0
        assert (tmp_path / "xdg" / "lattice-floquet" / "config.json").exists()
        data = json.loads(cli("config", "show").stdout)
        assert data["grid"]["n1"] == 64

    def test_broken_config(self, cli, tmp_path):
        path = tmp_path / "xdg" / "lattice-floquet" / "config.json"
        path.parent.mkdir(parents=True)
        path.write_text("{broken")
        result = cli("spectrum", "--lattice", "square", "--grid", "8", "8")
        assert result.returncode == 1
        assert "config" in result.stderr


class TestDeterminism:
    """Same arguments, same config, same bytes on stdout."""

    @pytest.mark.parametrize("args", [
        ("spectrum", "--lattice", "hexagonal", "--periods", "2", "2", "--potential", "random:0.3",
         "--seed", "11", "--grid", "8", "8", "--threads", "2"),
        ("bands", "--lattice", "ehm", "--periods", "2", "1", "--potential", "random:0.2",
         "--seed", "3", "--grid", "8", "8", "--format", "csv"),
        ("verify", "--suite", "tri", "--seed", "5", "--builtin-override", "tri-2x2=random:1"),
    ])
    def test_repeat_runs_identical(self, cli, args):
        first = cli(*args)
        second = cli(*args)
        assert first.returncode == second.returncode
        assert first.returncode in (0, 1), first.stderr
        assert first.stdout
        assert first.stdout == second.stdout

    def test_verify_seed_reaches_overrides(self, cli):
        args = ("verify", "--suite", "tri", "--builtin-override", "tri-2x2=random:1")
        first = json.loads(cli(*args, "--seed", "5").stdout)
        second = json.loads(cli(*args, "--seed", "6").stdout)
        measured = {c["check_id"]: c["measured"] for c in first["checks"]}
        other = {c["check_id"]: c["measured"] for c in second["checks"]}
        assert measured["tri.det_identity"] != other["tri.det_identity"]
