"""Command-line client tests (in-process service, isolated tmp files)."""

import json

import pytest
from click.testing import CliRunner

from cvhnn.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


def gen_model(runner, tmp_path, *extra):
    path = tmp_path / "model.json"
    result = runner.invoke(main, ["gen-weights", "--n", "5", "--seed", "3",
                                  "--out", str(path), *extra])
    assert result.exit_code == 0, result.output
    return path


def write_flipper(tmp_path):
    """Single self-inhibiting split-sign neuron: serial period-2 orbit."""
    path = tmp_path / "flipper.json"
    path.write_text(json.dumps({
        "n": 1,
        "activation": {"kind": "split_sign", "K": 1, "Q": 1, "R": 1.0,
                       "boundary_epsilon": 0.0},
        "weights": [[[-1.0, 0.0]]],
        "thresholds": [[0.0, 0.0]],
    }))
    return path


class TestGenWeights:
    def test_writes_model_and_reports_path(self, runner, tmp_path):
        path = tmp_path / "m.json"
        result = runner.invoke(main, ["gen-weights", "--n", "4", "--seed", "7",
                                      "--out", str(path)])
        assert result.exit_code == 0
        assert f"wrote {path}" in result.output
        doc = json.loads(path.read_text())
        assert doc["n"] == 4
        assert doc["activation"]["kind"] == "coceil"
        assert doc["activation"] == {"kind": "coceil", "K": 4, "Q": 3,
                                     "R": 2.0, "boundary_epsilon": 0.0}

    def test_same_flags_twice_byte_identical(self, runner, tmp_path):
        first = tmp_path / "a.json"
        second = tmp_path / "b.json"
        for path in (first, second):
            result = runner.invoke(main, ["gen-weights", "--n", "8",
                                          "--seed", "42", "--out", str(path)])
            assert result.exit_code == 0
        assert first.read_bytes() == second.read_bytes()

    def test_zero_neurons_is_a_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["gen-weights", "--n", "0",
                                      "--out", str(tmp_path / "m.json")])
        assert result.exit_code == 2

    def test_generated_file_passes_validate(self, runner, tmp_path):
        path = gen_model(runner, tmp_path)
        result = runner.invoke(main, ["validate", "--model", str(path)])
        assert result.exit_code == 0


class TestRun:
    def test_default_run_converges(self, runner, tmp_path):
        path = gen_model(runner, tmp_path)
        result = runner.invoke(main, ["run", "--model", str(path)])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["verdict"] == "Converged"
        assert len(body["final_state"]) == 5
        assert "trace" not in body

    def test_repeat_invocations_print_identical_output(self, runner, tmp_path):
        path = gen_model(runner, tmp_path)
        args = ["run", "--model", str(path), "--init-seed", "5"]
        first = runner.invoke(main, args)
        second = runner.invoke(main, args)
        assert first.exit_code == second.exit_code == 0
        assert first.output == second.output

    def test_missing_model_file_exits_1(self, runner, tmp_path):
        result = runner.invoke(main, ["run", "--model",
                                      str(tmp_path / "nope.json")])
        assert result.exit_code == 1
        assert "cannot read" in result.output

    def test_parallel_flipper_reports_cycle(self, runner, tmp_path):
        path = write_flipper(tmp_path)
        result = runner.invoke(main, ["run", "--model", str(path),
                                      "--mode", "parallel",
                                      "--init-state", "[[1, 1]]"])
        assert result.exit_code == 0
        assert json.loads(result.output)["verdict"] == "Cycle(2)"

    def test_trace_csv_is_written(self, runner, tmp_path):
        model = gen_model(runner, tmp_path)
        trace = tmp_path / "trace.csv"
        result = runner.invoke(main, ["run", "--model", str(model),
                                      "--trace-csv", str(trace)])
        assert result.exit_code == 0
        lines = trace.read_text().splitlines()
        assert lines[0] == "trial,update_index,neuron,energy"
        assert lines[1].startswith("0,0,,")
        assert lines[2].startswith("0,1,0,")

    def test_activation_override_changes_the_quantizer(self, runner, tmp_path):
        model = gen_model(runner, tmp_path)
        result = runner.invoke(main, ["run", "--model", str(model),
                                      "--q", "1", "--r", "1.0"])
        assert result.exit_code == 0
        body = json.loads(result.output)
        for re_part, im_part in body["final_state"]:
            assert re_part in (0.0, 1.0)
            assert im_part in (0.0, 1.0)

    def test_bad_init_state_json_exits_1(self, runner, tmp_path):
        model = gen_model(runner, tmp_path)
        result = runner.invoke(main, ["run", "--model", str(model),
                                      "--init-state", "not json"])
        assert result.exit_code == 1

    def test_off_image_init_state_exits_1(self, runner, tmp_path):
        model = gen_model(runner, tmp_path)
        result = runner.invoke(main, ["run", "--model", str(model),
                                      "--init-state",
                                      "[[0.5,0],[0,0],[0,0],[0,0],[0,0]]"])
        assert result.exit_code == 1
        assert "service rejected" in result.output

    def test_unknown_mode_is_a_usage_error(self, runner, tmp_path):
        model = gen_model(runner, tmp_path)
        result = runner.invoke(main, ["run", "--model", str(model),
                                      "--mode", "both"])
        assert result.exit_code == 2


class TestExperiment:
    def test_writes_three_artifacts_and_summary_line(self, runner, tmp_path):
        out = tmp_path / "exp"
        result = runner.invoke(main, ["experiment", "--out-dir", str(out)])
        assert result.exit_code == 0
        summary = json.loads(result.output.strip().splitlines()[-1])
        assert summary["trials"] == 5
        assert summary["converged"] == 5
        report = json.loads((out / "report.json").read_text())
        assert report["config"]["activation"]["kind"] == "coceil"
        assert (out / "trace.csv").read_text().startswith(
            "trial,update_index,neuron,energy\n")
        assert (out / "energy.svg").read_text().startswith("<svg ")

    def test_artifacts_are_deterministic(self, runner, tmp_path):
        args = ["experiment", "--kind", "cosign", "--trials", "3"]
        first = tmp_path / "one"
        second = tmp_path / "two"
        for out in (first, second):
            result = runner.invoke(main, [*args, "--out-dir", str(out)])
            assert result.exit_code == 0
        for name in ("report.json", "trace.csv", "energy.svg"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

    def test_unresolved_trials_still_exit_zero(self, runner, tmp_path):
        out = tmp_path / "exp"
        result = runner.invoke(main, ["experiment", "--sweeps", "1",
                                      "--out-dir", str(out)])
        assert result.exit_code == 0
        summary = json.loads(result.output.strip().splitlines()[-1])
        assert summary["unresolved"] > 0

    def test_zero_sweeps_is_a_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["experiment", "--trials", "1",
                                      "--sweeps", "0",
                                      "--out-dir", str(tmp_path / "exp")])
        assert result.exit_code == 2


class TestValidate:
    def test_non_hermitian_model_exits_3(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({
            "n": 2,
            "activation": {"kind": "split_sign"},
            "weights": [[[0.0, 0.0], [1.0, 0.0]],
                        [[2.0, 0.0], [0.0, 0.0]]],
            "thresholds": [[0.0, 0.0], [0.0, 0.0]],
        }))
        result = runner.invoke(main, ["validate", "--model", str(path)])
        assert result.exit_code == 3
        assert '"ok": false' in result.output

    def test_malformed_json_exits_1(self, runner, tmp_path):
        path = tmp_path / "junk.json"
        path.write_text("{not json")
        result = runner.invoke(main, ["validate", "--model", str(path)])
        assert result.exit_code == 1

    def test_wrong_shape_document_exits_1(self, runner, tmp_path):
        path = tmp_path / "short.json"
        path.write_text(json.dumps({
            "n": 2,
            "activation": {"kind": "split_sign"},
            "weights": [[[0.0, 0.0]]],
            "thresholds": [[0.0, 0.0], [0.0, 0.0]],
        }))
        result = runner.invoke(main, ["validate", "--model", str(path)])
        assert result.exit_code == 1


class TestHelp:
    def test_group_help_documents_exit_codes(self, runner):
        result = runner.invoke(main, ["--help"])
        assert result.exit_code == 0
        assert "Exit codes" in result.output
        for name in ("gen-weights", "run", "experiment", "validate", "serve"):
            assert name in result.output

    def test_version_flag(self, runner):
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "0.1.0" in result.output
