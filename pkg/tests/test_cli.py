import json
import math

import numpy as np
import pytest

from mbloch.cli import main


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    rows = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, rows


class TestSimulate:
    def test_equilibrium_run(self, capsys, tmp_path):
        out_path = tmp_path / "traj.csv"
        code, out = run(capsys, [
            "simulate", "--x1", "0", "--y1", "0", "--x2", "0", "--y2", "0",
            "--z", "-1", "--t-end", "10", "--method", "rk4", "--dt", "0.01",
            "--out", str(out_path)])
        assert code == 0
        rep = json.loads(out)
        assert rep["max_abs_dH"] == rep["max_abs_dI"] == rep["max_abs_dC"] == 0.0
        header, rows = read_csv(out_path)
        assert header == ["t", "x1", "y1", "x2", "y2", "z", "H", "I", "C"]
        assert np.array_equal(rows[:, 1:6],
                              np.tile([0, 0, 0, 0, -1.0], (len(rows), 1)))

    def test_homoclinic_start_drift(self, capsys, tmp_path):
        out_path = tmp_path / "traj.csv"
        code, out = run(capsys, [
            "simulate", "--x1", "2", "--y1", "0", "--x2", "0", "--y2", "0",
            "--z", "-1", "--t-end", "3", "--method", "rk45", "--tol", "1e-10",
            "--out", str(out_path)])
        assert code == 0
        rep = json.loads(out)
        assert max(rep["max_abs_dH"], rep["max_abs_dI"], rep["max_abs_dC"]) < 1e-9

    def test_csv_round_trip_bit_exact(self, capsys, tmp_path):
        out_path = tmp_path / "traj.csv"
        code, _ = run(capsys, [
            "simulate", "--x1", "1", "--y1", "1", "--x2", "0.5", "--y2",
            "-0.5", "--z", "0.2", "--t-end", "1", "--method", "rk45",
            "--out", str(out_path)])
        assert code == 0
        _, rows = read_csv(out_path)
        from mbloch.integrate import IntegratorConfig, integrate
        traj = integrate([1, 1, 0.5, -0.5, 0.2],
                         IntegratorConfig(method="rk45", t_end=1.0))
        assert np.array_equal(rows[:, 0], traj.times)
        assert np.array_equal(rows[:, 1:6], traj.states)
        assert np.array_equal(rows[:, 6:9], traj.conserved)

    def test_invalid_dt_usage_error(self, capsys, tmp_path):
        code, _ = run(capsys, [
            "simulate", "--x1", "0", "--y1", "0", "--x2", "0", "--y2", "0",
            "--z", "1", "--t-end", "1", "--method", "rk4", "--dt", "-1",
            "--out", str(tmp_path / "x.csv")])
        assert code == 2

    def test_missing_flag_usage_error(self, capsys, tmp_path):
        code, _ = run(capsys, ["simulate", "--x1", "0"])
        assert code == 2


class TestClassify:
    def test_positive_leaf(self, capsys):
        code, out = run(capsys, ["classify", "--c", "1"])
        assert code == 0
        rep = json.loads(out)
        assert rep["kind"] == "focus-focus"
        assert rep["stable"] == "unstable"
        assert len(rep["roots"]) == 4
        assert rep["discriminant"] < 0

    def test_negative_leaf(self, capsys):
        code, out = run(capsys, ["classify", "--c", "-1"])
        assert code == 0
        rep = json.loads(out)
        assert rep["kind"] == "center-center"
        assert rep["stable"] == "stable"

    def test_degenerate_origin_with_certificate(self, capsys):
        code, out = run(capsys, ["classify", "--c", "0"])
        assert code == 0
        rep = json.loads(out)
        assert rep["kind"] == "degenerate"
        assert rep["stable"] == "stable"
        assert rep["certificate"]["unique_solution"] is True


class TestClosedFormCommands:
    def test_homoclinic_export(self, capsys, tmp_path):
        out_path = tmp_path / "hom.csv"
        code, out = run(capsys, [
            "homoclinic", "--c", "1", "--theta0", "0", "--sign", "+",
            "--t-min", "-5", "--t-max", "5", "--dt", "0.01",
            "--out", str(out_path)])
        assert code == 0
        rep = json.loads(out)
        assert rep["passed"] is True
        assert rep["max_ode_residual"] < 1e-10 * 2
        _, rows = read_csv(out_path)
        assert rows[0, 0] == -5.0
        # conserved columns pinned at (c^2/2, 0, c)
        assert np.abs(rows[:, 6] - 0.5).max() < 1e-12
        assert np.abs(rows[:, 8] - 1.0).max() < 1e-12

    def test_homoclinic_negative_c_rejected(self, capsys, tmp_path):
        code, _ = run(capsys, ["homoclinic", "--c", "-1",
                               "--out", str(tmp_path / "h.csv")])
        assert code == 2

    def test_periodic_export_constant_z(self, capsys, tmp_path):
        out_path = tmp_path / "per.csv"
        code, out = run(capsys, [
            "periodic", "--x1", "1", "--y1", "1", "--x2", "1",
            "--out", str(out_path)])
        assert code == 0
        rep = json.loads(out)
        assert rep["passed"] is True
        _, rows = read_csv(out_path)
        assert np.array_equal(rows[:, 5], np.full(len(rows), -1.0))

    def test_periodic_zero_x2_rejected(self, capsys, tmp_path):
        code, _ = run(capsys, ["periodic", "--x1", "1", "--y1", "1",
                               "--x2", "0", "--out", str(tmp_path / "p.csv")])
        assert code == 2


class TestRankAndProbe:
    def test_rank_of_m1_point(self, capsys):
        code, out = run(capsys, ["rank", "--point", "1,1,1,-1,-1"])
        assert code == 0
        assert json.loads(out)["rank"] == 2

    def test_rank_of_generic_point(self, capsys):
        code, out = run(capsys, ["rank", "--point", "1,2,3,4,5"])
        assert code == 0
        assert json.loads(out)["rank"] == 3

    def test_rank_bad_point_usage_error(self, capsys):
        code, _ = run(capsys, ["rank", "--point", "1,2,3"])
        assert code == 2

    def test_probe_matches_prediction(self, capsys):
        code, out = run(capsys, ["invariant-probe", "--m1", "0,1,1",
                                 "--t-end", "20"])
        assert code == 0
        rep = json.loads(out)
        assert rep["puncture_count"] == rep["predicted_punctures"] == 6
        assert rep["max_distance_to_union"] < 1e-6

    def test_probe_zero_x2_rejected(self, capsys):
        code, _ = run(capsys, ["invariant-probe", "--m1", "1,1,0",
                               "--t-end", "5"])
        assert code == 2


class TestVerify:
    def test_quick_passes(self, capsys):
        code, out = run(capsys, ["verify", "--seed", "42", "--level", "quick"])
        assert code == 0
        rep = json.loads(out)
        assert rep["all_passed"] is True
        assert all(r["passed"] for r in rep["results"])

    def test_seeded_determinism_byte_identical(self, capsys):
        _, out1 = run(capsys, ["verify", "--seed", "42", "--level", "quick"])
        _, out2 = run(capsys, ["verify", "--seed", "42", "--level", "quick"])
        assert out1 == out2

    def test_results_sorted(self, capsys):
        _, out = run(capsys, ["verify", "--seed", "1", "--level", "quick"])
        rep = json.loads(out)
        keys = [(r["suite"], r["name"]) for r in rep["results"]]
        assert keys == sorted(keys)
