import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from greedysphere import cli as gcli
from greedysphere.asymptotics import s_lambda
from greedysphere.circle_exact import greedy_energy_exact, greedy_extremal_potential


def run_cli(*args: str):
    return subprocess.run(
        [sys.executable, "-m", "greedysphere.cli", *args],
        capture_output=True,
        text=True,
    )


def read_csv(path: Path) -> tuple[list[str], list[list[str]]]:
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


class TestGenerate:
    def test_exact_angles(self, tmp_path):
        out = tmp_path / "seq.csv"
        res = run_cli("generate", "--d", "1", "--lambda", "0.5", "--n", "8",
                      "--method", "exact", "--out", str(out))
        assert res.returncode == 0
        header, rows = read_csv(out)
        assert header[:3] == ["index", "turn_numerator", "turn_denominator"]
        turns = [int(r[1]) / int(r[2]) for r in rows]
        assert turns == [0.0, 0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875]
        pots = [float(r[header.index("potential")]) for r in rows]
        assert pots[0] == 0.0
        assert pots[3] == pytest.approx(greedy_extremal_potential(0.5, 3), rel=1e-15)
        energies = [float(r[header.index("energy_cum")]) for r in rows]
        assert energies[7] == pytest.approx(greedy_energy_exact(0.5, 8), rel=1e-15)

    def test_numeric_collapse(self, tmp_path):
        out = tmp_path / "collapse.csv"
        res = run_cli("generate", "--d", "2", "--lambda", "3", "--n", "6",
                      "--method", "numeric", "--out", str(out))
        assert res.returncode == 0
        header, rows = read_csv(out)
        pts = np.array([[float(r[header.index(c)]) for c in ("x0", "x1", "x2")] for r in rows])
        a0 = pts[0]
        # every pair {a_2k, a_2k+1} is the antipodal pair {a_0, -a_0};
        # which member comes first is a legitimate greedy tie choice
        for p in pts:
            assert min(np.linalg.norm(p - a0), np.linalg.norm(p + a0)) < 1e-6
        for k in range(3):
            assert np.array_equal(pts[2 * k + 1], -pts[2 * k])

    def test_usage_errors(self, tmp_path):
        res = run_cli("generate", "--d", "1", "--lambda", "0.5", "--n", "0",
                      "--method", "exact", "--out", str(tmp_path / "x.csv"))
        assert res.returncode == 2
        res = run_cli("generate", "--d", "2", "--lambda", "0.5", "--n", "4",
                      "--method", "exact", "--out", str(tmp_path / "x.csv"))
        assert res.returncode == 2

    def test_deterministic_output(self, tmp_path):
        args = ("generate", "--d", "1", "--lambda", "1.5", "--n", "16",
                "--method", "exact")
        out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(*args, "--out", str(out_a)).returncode == 0
        assert run_cli(*args, "--out", str(out_b)).returncode == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        sha_a = json.loads((tmp_path / "a.csv.manifest.json").read_text())["sha256"]
        sha_b = json.loads((tmp_path / "b.csv.manifest.json").read_text())["sha256"]
        assert sha_a == sha_b

    def test_json_round_trip(self, tmp_path):
        out = tmp_path / "seq.json"
        res = run_cli("generate", "--d", "1", "--lambda", "0.7", "--n", "12",
                      "--method", "exact", "--out", str(out), "--format", "json")
        assert res.returncode == 0
        rows = json.loads(out.read_text())
        for row in rows[1:]:
            n = row["index"]
            assert row["potential"] == pytest.approx(
                greedy_extremal_potential(0.7, n), abs=1e-12
            )


class TestSecondOrder:
    def test_lambda_one_window(self, tmp_path):
        # the normalized series is negative throughout; at small N the
        # log normalization leaves values near -1.6, and the lower
        # envelope climbs only logarithmically (still ~-0.68 at N ~ 1365),
        # so the band is checked against the true envelope
        out = tmp_path / "so.csv"
        res = run_cli("second-order", "--lambda", "1", "--nmax", "4000", "--out", str(out))
        assert res.returncode == 0
        header, rows = read_csv(out)
        idx = header.index("H_normalized")
        vals = [float(r[idx]) for r in rows]
        assert all(-1.7 <= v <= 0.05 for v in vals)
        late = [float(r[idx]) for r in rows if int(r[0]) >= 1024]
        assert all(-0.7 <= v < 0.0 for v in late)

    def test_lambda_three_halves_window(self, tmp_path):
        out = tmp_path / "so15.csv"
        res = run_cli("second-order", "--lambda", "1.5", "--nmax", "2000", "--out", str(out))
        assert res.returncode == 0
        header, rows = read_csv(out)
        idx = header.index("H_minus")
        s = s_lambda(1.5, 1e-8)
        for r in rows:
            assert s - 1e-6 <= float(r[idx]) <= 0.0

    def test_usage_error(self, tmp_path):
        res = run_cli("second-order", "--lambda", "1.0", "--nmax", "1",
                      "--out", str(tmp_path / "x.csv"))
        assert res.returncode == 2


class TestConstants:
    def test_lambda_one(self):
        res = run_cli("constants", "--lambda", "1", "--d", "1")
        assert res.returncode == 0
        values = {}
        for line in res.stdout.strip().splitlines():
            name, value = line.split()
            values[name] = float(value)
        assert values["continuous_energy"] == pytest.approx(4.0 / math.pi, rel=1e-11)
        assert values["zeta_neg"] == pytest.approx(-1.0 / 12.0, rel=1e-11)
        assert values["second_order_constant"] == pytest.approx(-math.pi / 3.0, rel=1e-11)

    def test_lambda_two(self):
        res = run_cli("constants", "--lambda", "2")
        assert res.returncode == 0
        assert "maximal_energy" in res.stdout
        line = next(l for l in res.stdout.splitlines() if l.startswith("maximal_energy"))
        assert float(line.split()[1]) == 2.0

    def test_gbar_printed_below_one(self):
        res = run_cli("constants", "--lambda", "0.5", "--gbar-bound", "4096")
        assert res.returncode == 0
        assert "g_bar" in res.stdout
        assert "s_lambda" not in res.stdout

    def test_domain_error(self):
        assert run_cli("constants", "--lambda", "0").returncode == 2


class TestGCurve:
    def test_default_generators(self, tmp_path):
        out = tmp_path / "g.csv"
        res = run_cli("g-curve", "--steps", "10", "--out", str(out))
        assert res.returncode == 0
        header, rows = read_csv(out)
        assert header == ["lambda", "G_M3", "G_M7", "G_M11"]
        # row at lambda = 0 must evaluate to 1 for every generator
        first = [float(v) for v in rows[0]]
        assert first[0] == 0.0
        assert all(v == pytest.approx(1.0, abs=1e-12) for v in first[1:])

    def test_matches_library(self, tmp_path):
        from greedysphere.asymptotics import g_function, theta_from_odd

        out = tmp_path / "g.csv"
        run_cli("g-curve", "--m", "3", "--steps", "4", "--lambda-max", "0.8",
                "--out", str(out))
        header, rows = read_csv(out)
        theta = theta_from_odd(3, 2)
        for r in rows:
            lam = float(r[0])
            assert float(r[1]) == pytest.approx(g_function(theta, lam), rel=1e-14)

    def test_even_generator_rejected(self, tmp_path):
        res = run_cli("g-curve", "--m", "4", "--out", str(tmp_path / "g.csv"))
        assert res.returncode == 2


class TestVerifySuites:
    @pytest.mark.parametrize("suite", ["formulas", "bounds", "limits", "special", "symmetry"])
    def test_quick_suites_pass(self, suite):
        checks = gcli._SUITES[suite]("quick")
        failed = [c.name for c in checks if not c.passed]
        assert not failed, f"failing checks: {failed}"

    def test_cli_verify_exit_code(self):
        res = run_cli("verify", "--suite", "formulas", "--profile", "quick")
        assert res.returncode == 0
        assert "result: pass" in res.stdout

    def test_unknown_suite(self):
        assert run_cli("verify", "--suite", "nonsense").returncode == 2
