"""CLI behaviour: formats, determinism, exit codes."""

import json

import pytest
from click.testing import CliRunner

from qwtree4.cli import cli


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def params_file(tmp_path):
    def write(name, q, a):
        path = tmp_path / name
        path.write_text(json.dumps({"q": q, "a": a}))
        return str(path)

    return write


class TestInfo:
    def test_p5(self, runner, params_file):
        result = runner.invoke(cli, ["info", "--params", params_file("p5.json", [1], [2])])
        assert result.exit_code == 0
        doc = json.loads(result.output)
        assert doc["results"]["n"] == 5

    def test_output_byte_stable(self, runner, params_file):
        path = params_file("k3.json", [0, 2], [9, 8])
        first = runner.invoke(cli, ["info", "--params", path]).output
        second = runner.invoke(cli, ["info", "--params", path]).output
        assert first == second

    def test_malformed_json_exit_2(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        result = runner.invoke(cli, ["info", "--params", str(bad)])
        assert result.exit_code == 2

    def test_invalid_tree_exit_2(self, runner, params_file):
        result = runner.invoke(cli, ["info", "--params", params_file("star.json", [0], [5])])
        assert result.exit_code == 2


class TestScan:
    def test_csv_format(self, runner, params_file):
        path = params_file("p5.json", [1], [2])
        result = runner.invoke(
            cli,
            ["scan", "--params", path, "--pair", "A", "--t0", "0", "--t1", "1",
             "--steps", "4", "--format", "csv"],
        )
        assert result.exit_code == 0
        lines = result.output.strip().split("\n")
        assert lines[0] == "time,fidelity,sensitivity"
        assert len(lines) == 6
        first = lines[1].split(",")
        assert float(first[0]) == 0.0
        assert float(first[1]) == pytest.approx(0.0, abs=1e-12)

    def test_sensitivity_blank_for_any_pair(self, runner, params_file):
        path = params_file("k3.json", [0, 2], [9, 8])
        result = runner.invoke(
            cli,
            ["scan", "--params", path, "--vertices", "1,2", "--any-pair",
             "--t0", "0", "--t1", "1", "--steps", "2", "--format", "csv"],
        )
        rows = result.output.strip().split("\n")[1:]
        assert all(row.endswith(",") for row in rows)

    def test_vertices_without_flag_exit_2(self, runner, params_file):
        path = params_file("k3.json", [0, 2], [9, 8])
        result = runner.invoke(
            cli,
            ["scan", "--params", path, "--vertices", "1,2", "--t0", "0", "--t1", "1",
             "--steps", "2"],
        )
        assert result.exit_code == 2


class TestSchedule:
    def test_q_readout(self, runner):
        result = runner.invoke(
            cli, ["schedule", "--family", "q_readout", "--q", "1", "--ell", "0:3"]
        )
        assert result.exit_code == 0
        rows = json.loads(result.output)["results"]["rows"]
        assert [r["time_symbolic"] for r in rows][:2] == ["1*pi", "15*pi"]
        assert all(r["discrepancy"] < 1e-9 for r in rows)

    def test_t3_example(self, runner):
        result = runner.invoke(
            cli, ["schedule", "--family", "t3", "--k2", "3", "--k3", "11", "--n", "3"]
        )
        rows = json.loads(result.output)["results"]["rows"]
        assert rows[0]["direct_fidelity"] == pytest.approx(0.999873, abs=1e-5)

    def test_dist4_square_refused(self, runner):
        result = runner.invoke(cli, ["schedule", "--family", "dist4", "--q2", "5"])
        assert result.exit_code == 2
        assert "perfect square" in result.output

    def test_range_syntax(self, runner):
        result = runner.invoke(
            cli, ["schedule", "--family", "type_c", "--k", "3", "--n", "1:5"]
        )
        rows = json.loads(result.output)["results"]["rows"]
        assert [r["index"] for r in rows] == [1, 3, 5]


class TestVerify:
    def test_quick_exit_0(self, runner):
        result = runner.invoke(cli, ["verify", "--scope", "quick"])
        assert result.exit_code == 0
        assert "ok   amplitude-vs-exp-itA" in result.output or "ok  amplitude-vs-exp-itA" in result.output

    def test_injected_fault_exit_1(self, runner, monkeypatch):
        from qwtree4 import verify as verify_mod

        def broken(scope):
            return [verify_mod.CheckResult(name="injected-fault", ok=False, detail="synthetic")]

        monkeypatch.setattr("qwtree4.service.app.run_checks", broken)
        result = runner.invoke(cli, ["verify", "--scope", "quick"])
        assert result.exit_code == 1
        assert "injected-fault" in result.output
