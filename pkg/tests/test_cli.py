import csv
import json

import numpy as np
import pytest

from krylov_optics.cli import main


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


RUN_ARGS = ["run", "--family", "su2-driven", "--j", "5", "--b0", "2.1",
            "--omega0", "4", "--omega", "4", "--t-end", "10", "--samples", "101"]


class TestRepro:
    def test_fig1b(self, tmp_path, capsys):
        rc = main(["repro", "fig1b", "--output", str(tmp_path)])
        assert rc == 0
        rows = read_csv(tmp_path / "fig1b.csv")
        assert list(rows[0]) == ["t", "C", "dev"]
        cmax = max(float(r["C"]) for r in rows)
        assert abs(cmax - 10.0) <= 1e-6
        out = capsys.readouterr().out
        assert "oscillation-period" in out and "FAIL" not in out

    def test_figquench_constant_after_tau(self, tmp_path):
        rc = main(["repro", "figquench", "--output", str(tmp_path)])
        assert rc == 0
        rows = read_csv(tmp_path / "figquench.csv")
        late = [float(r["C"]) for r in rows if float(r["t"]) > 7.5]
        assert max(late) - min(late) <= 1e-10

    def test_fig6b_quadratic(self, tmp_path):
        rc = main(["repro", "fig6b", "--output", str(tmp_path)])
        assert rc == 0
        rows = read_csv(tmp_path / "fig6b.csv")
        t = np.array([float(r["t"]) for r in rows])
        c = np.array([float(r["C"]) for r in rows])
        coeffs = np.polyfit(t, c, 2)
        fit = np.polyval(coeffs, t)
        r2 = 1 - np.sum((c - fit) ** 2) / np.sum((c - c.mean()) ** 2)
        assert r2 >= 1 - 1e-6

    def test_unknown_figure(self, tmp_path):
        assert main(["repro", "fig99", "--output", str(tmp_path)]) == 1

    def test_plot_written(self, tmp_path):
        svg = tmp_path / "fig6a.svg"
        rc = main(["repro", "fig6a", "--output", str(tmp_path),
                   "--plot", str(svg)])
        assert rc == 0
        assert svg.stat().st_size > 1000

    def test_json_format(self, tmp_path):
        rc = main(["repro", "figsu3a", "--output", str(tmp_path),
                   "--format", "json"])
        assert rc == 0
        payload = json.loads((tmp_path / "figsu3a.json").read_text())
        assert payload["family"] == "su3"
        assert len(payload["t"]) == len(payload["C"])


class TestRun:
    def test_resonant_peak(self, tmp_path):
        out = tmp_path / "run.csv"
        rc = main(RUN_ARGS + ["--output", str(out)])
        assert rc == 0
        rows = read_csv(out)
        assert max(float(r["C"]) for r in rows) >= 9.99

    def test_h1_quadratic_column(self, tmp_path):
        out = tmp_path / "h1.csv"
        rc = main(["run", "--family", "h1", "--f0", "3", "--omega0", "4",
                   "--omega", "4", "--eta", "0", "--t-end", "4",
                   "--samples", "5", "--output", str(out)])
        assert rc == 0
        rows = read_csv(out)
        for r in rows:
            t = float(r["t"])
            assert abs(float(r["C"]) - 9 * t * t) <= 1e-8 * max(1, 9 * t * t)

    def test_byte_determinism(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(RUN_ARGS + ["--output", str(a)]) == 0
        assert main(RUN_ARGS + ["--output", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_empty_range_is_usage_error(self):
        rc = main(["run", "--family", "su2-driven", "--j", "1", "--b0", "1",
                   "--omega0", "4", "--omega", "4", "--t-start", "5",
                   "--t-end", "5", "--samples", "10"])
        assert rc == 1

    def test_missing_family_is_usage_error(self):
        assert main(["run", "--t-end", "10"]) == 1

    def test_numerical_failure_exit(self):
        rc = main(["run", "--family", "su11", "--omega0", "4", "--omega", "4",
                   "--g", "3", "--eta", "0", "--t-end", "40", "--samples", "41"])
        assert rc == 2

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "family": "su2-driven", "j": 5, "b0": 2.1, "omega0": 4,
            "omega": 4, "t_end": 10, "samples": 21}))
        res_out = tmp_path / "res.csv"
        det_out = tmp_path / "det.csv"
        assert main(["run", "--config", str(cfg), "--output", str(res_out)]) == 0
        assert main(["run", "--config", str(cfg), "--omega", "2",
                     "--output", str(det_out)]) == 0
        c_res = max(float(r["C"]) for r in read_csv(res_out))
        c_det = max(float(r["C"]) for r in read_csv(det_out))
        assert c_res > 9.9 and c_det < 6.0   # the flag really won

    def test_probability_columns(self, tmp_path):
        out = tmp_path / "p.csv"
        rc = main(["run", "--family", "su2-driven", "--j", "2", "--b0", "1",
                   "--omega0", "4", "--omega", "4", "--t-end", "3",
                   "--samples", "7", "--probs", "--output", str(out)])
        assert rc == 0
        rows = read_csv(out)
        assert [k for k in rows[0] if k.startswith("p")] == [f"p{n}" for n in range(5)]
        for r in rows:
            assert abs(sum(float(r[f"p{n}"]) for n in range(5)) - 1) <= 1e-8


class TestSweep:
    def test_regime_map_csv(self, tmp_path):
        out = tmp_path / "map.csv"
        rc = main(["sweep", "--family", "su11", "--omega0", "4", "--omega", "2",
                   "--g", "1", "--axis", "g=0:3:61", "--axis", "delta=0:3:61",
                   "--summary", "regime", "--output", str(out)])
        assert rc == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 62
        grid = [line.split(",")[1:] for line in lines[1:]]
        for i in range(61):
            assert grid[i][i] == "quadratic"
            for k in range(i + 1, 61):
                assert grid[i][k] == "oscillatory"

    def test_failing_cell_continues(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        rc = main(["sweep", "--family", "su11", "--omega0", "4", "--omega", "4",
                   "--g", "1", "--eta", "0", "--axis", "g=0.5:3:2",
                   "--axis", "delta=0:0:1", "--summary", "c_max",
                   "--t-end", "30", "--samples", "31", "--output", str(out)])
        assert rc == 0
        assert "failed" in capsys.readouterr().err
        assert "nan" in out.read_text()

    def test_requires_two_axes(self):
        rc = main(["sweep", "--family", "su11", "--omega0", "4", "--omega", "2",
                   "--g", "1", "--axis", "g=0:3:5", "--summary", "regime"])
        assert rc == 1


class TestLanczosCommand:
    @pytest.fixture
    def fixtures(self, tmp_path):
        h = [[4, 0, 2], [0, 4, 5], [2, 5, -8]]
        matrix = tmp_path / "m.json"
        matrix.write_text(json.dumps(
            {"dim": 3, "re": [x for row in h for x in row], "im": [0] * 9}))
        seed = tmp_path / "s.json"
        seed.write_text(json.dumps({"dim": 3, "re": [1, 0, 0], "im": [0, 0, 0]}))
        return matrix, seed

    def test_direct(self, tmp_path, fixtures):
        matrix, seed = fixtures
        out = tmp_path / "out.json"
        rc = main(["lanczos", str(matrix), str(seed), "--output", str(out)])
        assert rc == 0
        got = json.loads(out.read_text())
        assert got["a"] == pytest.approx([4.0, -8.0, 4.0], abs=1e-10)
        assert got["b"] == pytest.approx([2.0, 5.0], abs=1e-10)
        assert len(got["basis"]["re"]) == 3

    def test_moments(self, tmp_path, fixtures):
        matrix, seed = fixtures
        out = tmp_path / "out.json"
        rc = main(["lanczos", str(matrix), str(seed), "--method", "moments",
                   "--output", str(out)])
        assert rc == 0
        got = json.loads(out.read_text())
        assert got["a"] == pytest.approx([4.0, -8.0, 4.0], abs=1e-7)
        assert got["b"] == pytest.approx([2.0, 5.0], abs=1e-7)
        assert "basis" not in got

    def test_diagonal_fixture(self, tmp_path):
        matrix = tmp_path / "d.json"
        matrix.write_text(json.dumps(
            {"dim": 3, "re": [7, 0, 0, 0, 1, 0, 0, 0, 2], "im": [0] * 9}))
        seed = tmp_path / "e1.json"
        seed.write_text(json.dumps({"dim": 3, "re": [1, 0, 0], "im": [0, 0, 0]}))
        out = tmp_path / "out.json"
        assert main(["lanczos", str(matrix), str(seed), "--output", str(out)]) == 0
        got = json.loads(out.read_text())
        assert got["a"] == pytest.approx([7.0]) and got["b"] == []

    def test_missing_file(self, tmp_path):
        assert main(["lanczos", str(tmp_path / "nope.json"),
                     str(tmp_path / "nix.json")]) == 1
