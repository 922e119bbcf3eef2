import json
import subprocess
import sys

import pytest

from qcasim.machinefile import dumps_spec
from qcasim.power import build_power


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "qcasim", *args],
        capture_output=True, text=True, timeout=300, **kwargs,
    )


class TestRunExact:
    def test_member_accepted_with_certainty(self):
        out = run_cli("run", "--machine", "power", "--k", "1", "--input", "a1b2", "--mode", "exact")
        assert out.returncode == 0
        assert "overall accept = 1 " in out.stdout
        assert "member: yes" in out.stdout

    def test_near_member_rejected_at_the_bound(self):
        out = run_cli("run", "--machine", "power", "--k", "1", "--input", "a1b3", "--mode", "exact")
        assert out.returncode == 0
        assert "overall reject = 2/3 " in out.stdout

    def test_literal_and_counted_inputs_agree(self):
        counted = run_cli("run", "--machine", "power", "--input", "a2b4", "--mode", "exact")
        literal = run_cli("run", "--machine", "power", "--input", "aabbbb", "--mode", "exact")
        assert counted.stdout == literal.stdout

    def test_malformed_shape_is_deterministic_reject(self):
        out = run_cli("run", "--machine", "power", "--input", "ba", "--mode", "exact")
        assert out.returncode == 0
        assert "rejected deterministically" in out.stdout

    def test_upower_exact(self):
        out = run_cli("run", "--machine", "upower", "--input", "a3", "--mode", "exact")
        assert out.returncode == 0
        assert "overall reject = 5400/5659 " in out.stdout

    def test_enumerate_agrees_with_exact(self):
        exact = run_cli("run", "--machine", "power", "--input", "a1b3", "--mode", "exact")
        enum = run_cli("run", "--machine", "power", "--input", "a1b3", "--mode", "enumerate")
        for needle in ("per-round accept = 1/4096", "per-round reject = 1/2048"):
            assert needle in exact.stdout
            assert needle in enum.stdout


class TestSample:
    def test_sampling_close_to_exact(self):
        out = run_cli("run", "--machine", "power", "--input", "a1b3", "--mode", "sample",
                      "--trajectories", "2000", "--seed", "5")
        assert out.returncode == 0
        line = next(l for l in out.stdout.splitlines() if l.startswith("rejected:"))
        frequency = float(line.split("(")[1].rstrip(")"))
        assert abs(frequency - 2 / 3) < 0.05

    def test_budget_exhaustion_exit_code(self):
        out = run_cli("run", "--machine", "upower", "--input", "a4", "--mode", "sample",
                      "--trajectories", "2", "--seed", "1", "--step-budget", "200")
        assert out.returncode == 3
        assert "still running at budget: 2" in out.stdout

    def test_trace_log(self, tmp_path):
        path = tmp_path / "trace.tsv"
        out = run_cli("run", "--machine", "power", "--input", "a1b2", "--mode", "sample",
                      "--trajectories", "5", "--seed", "3", "--trace", str(path))
        assert out.returncode == 0
        lines = path.read_text().splitlines()
        assert lines[0].split("\t")[:4] == ["1", "start", "1", "0"]
        assert lines[-1].startswith("# verdict=accept")


class TestFamilies:
    def test_membership_and_bounds(self):
        out = run_cli("run", "--family", "iter:2:upower", "--input", "a16")
        assert out.returncode == 0
        assert "member: yes" in out.stdout
        assert "geometric" in out.stdout

    def test_family_and_machine_conflict(self):
        out = run_cli("run", "--family", "upower", "--machine", "power", "--input", "a4")
        assert out.returncode == 1


class TestProfile:
    def test_member_meets_log_prediction(self):
        out = run_cli("profile", "--machine", "upower", "--input", "a32")
        assert out.returncode == 0
        assert "max counter over the exact schedule: 5" in out.stdout
        assert "met" in out.stdout

    def test_non_member_meets_linear_prediction(self):
        out = run_cli("profile", "--machine", "upower", "--input", "a7")
        assert out.returncode == 0
        assert "max counter over the exact schedule: 7" in out.stdout

    def test_counterless_machine_is_usage_error(self):
        out = run_cli("profile", "--machine", "power", "--input", "a1b2")
        assert out.returncode == 1


class TestValidateCommand:
    def test_builtins_validate(self):
        for machine in ("power", "upower"):
            out = run_cli("validate", "--machine", machine, "--k", "2")
            assert out.returncode == 0
            assert "validation: ok" in out.stdout

    def test_tampered_file_exits_two(self, tmp_path):
        doc = json.loads(dumps_spec(build_power(1)))
        doc["delta_q"]["block_b|$"][0]["matrix"] = [["0", "0", "0"]] * 3
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(doc))
        out = run_cli("validate", "--machine", f"file:{path}")
        assert out.returncode == 2
        assert "validation: FAILED" in out.stdout

    def test_file_machine_runs(self, tmp_path):
        path = tmp_path / "power.json"
        path.write_text(dumps_spec(build_power(1)))
        out = run_cli("run", "--machine", f"file:{path}", "--input", "a1b2", "--mode", "enumerate")
        assert out.returncode == 0
        assert "per-round accept = 1/1024" in out.stdout


class TestSweep:
    def test_csv_to_stdout(self):
        out = run_cli("sweep", "--machine", "power", "--k-range", "1:2", "--size-range", "1:3")
        assert out.returncode == 0
        header = out.stdout.splitlines()[0]
        assert header.startswith('"machine"')
        assert len(out.stdout.splitlines()) == 1 + 2 * 3 * 2  # two rows per (k, m)

    def test_json_format(self):
        out = run_cli("sweep", "--machine", "upower", "--k-range", "1:1", "--size-range", "1:4",
                      "--format", "json")
        rows = json.loads(out.stdout)
        assert [r["m"] for r in rows] == [1, 2, 3, 4]
        assert rows[1]["overall_accept"] == "1"
        assert rows[2]["max_counter"] == 3

    def test_plot_writes_figures(self, tmp_path):
        target = tmp_path / "sweep.csv"
        out = run_cli("sweep", "--machine", "upower", "--k-range", "1:2", "--size-range", "1:6",
                      "--out", str(target), "--plot")
        assert out.returncode == 0
        assert target.exists()
        figure = tmp_path / "sweep_counter_space.png"
        assert figure.exists() and figure.stat().st_size > 0

    def test_plot_without_out_is_usage_error(self):
        out = run_cli("sweep", "--machine", "power", "--plot")
        assert out.returncode == 1


class TestUsageErrors:
    @pytest.mark.parametrize("args", [
        ("run", "--machine", "nonsense", "--input", "a"),
        ("run", "--machine", "power"),
        ("run", "--machine", "power", "--input", "a1b2", "--mode", "dance"),
        ("sweep", "--machine", "power", "--k-range", "backwards"),
        ("frobnicate",),
    ])
    def test_exit_one(self, args):
        assert run_cli(*args).returncode == 1

    def test_bad_input_symbol(self):
        out = run_cli("run", "--machine", "power", "--input", "xyz", "--mode", "sample")
        assert out.returncode == 1

    def test_k_zero_rejected(self):
        out = run_cli("run", "--machine", "power", "--k", "0", "--input", "a1b2")
        assert out.returncode == 1


class TestFoursquare:
    def test_three(self):
        out = run_cli("foursquare", "3")
        assert out.stdout.strip() == "1 1 1 0"

    def test_fifteen(self):
        out = run_cli("foursquare", "15")
        assert out.stdout.strip() == "3 2 1 1"
