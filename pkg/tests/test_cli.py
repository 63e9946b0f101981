from __future__ import annotations

import subprocess
import sys

import pytest

from dyndom.cli import main
from dyndom.graph import generate_trace, parse_trace, save_trace
from dyndom.harness import METRIC_FIELDS


def test_run_mds_verified_example(capsys):
    code = main(["run", "--solver", "mds", "--gen", "n=64,steps=2000,pdel=0.4,seed=1", "--verify-every", "1"])
    assert code == 0
    assert capsys.readouterr().out.startswith("ok: 2000 events")


@pytest.mark.parametrize("solver", ["cds-fast", "cds-slow"])
def test_cds_modes_on_same_trace(solver, tmp_path, capsys):
    metrics = tmp_path / f"{solver}.csv"
    code = main(["verify", "--solver", solver, "--gen", "n=16,steps=300,pdel=0.3,seed=2",
                 "--metrics", str(metrics)])
    assert code == 0
    assert metrics.read_text().splitlines()[0] == ",".join(METRIC_FIELDS)


def test_trace_file_and_backend(tmp_path, capsys):
    path = tmp_path / "t.trace"
    save_trace(generate_trace(10, 80, 0.3, seed=0), path)
    assert main(["run", "--solver", "minimal", "--trace", str(path)]) == 0
    assert main(["verify", "--solver", "cds-fast", "--trace", str(path), "--backend", "naive"]) == 0


def test_malformed_trace_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.trace"
    path.write_text("n 4\n+ 0 1\n+ 1 1\n")
    assert main(["run", "--trace", str(path)]) == 2
    assert "line 3" in capsys.readouterr().err


def test_missing_trace_file_exits_2(tmp_path, capsys):
    assert main(["run", "--trace", str(tmp_path / "nope")]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["run"],
        ["run", "--gen", "n=4"],
        ["run", "--gen", "n=4,steps=3", "--trace", "x"],
        ["run", "--gen", "n=4,steps=3", "--solver", "best"],
        ["run", "--gen", "n=4,steps=3", "--verify-every", "-2"],
        ["bench", "--sizes", "a,b"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_gen_writes_trace(tmp_path, capsys):
    out = tmp_path / "g.trace"
    assert main(["gen", "--gen", "n=9,steps=40,pdel=0.2", "--seed", "7", "-o", str(out)]) == 0
    assert parse_trace(out.read_text()) == generate_trace(9, 40, 0.2, 7)
    assert main(["gen", "--gen", "n=5,steps=3,seed=1"]) == 0
    assert capsys.readouterr().out.startswith("n 5\n")


def test_bench_prints_table(capsys):
    assert main(["bench", "--sizes", "16,32", "--steps-per-vertex", "2"]) == 0
    assert "trend:" in capsys.readouterr().out


def test_violation_exit_1(tmp_path, monkeypatch, capsys):
    from dyndom.mds import LevelSolution

    original = LevelSolution.apply

    def sabotage(self, event):
        original(self, event)
        self.members.clear()

    monkeypatch.setattr(LevelSolution, "apply", sabotage)
    snap = tmp_path / "snap.txt"
    code = main(["verify", "--gen", "n=6,steps=10", "--snapshot", str(snap)])
    assert code == 1
    err = capsys.readouterr().err
    assert "violation at event 0" in err and str(snap) in err
    assert snap.exists()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dyndom.cli", "gen", "--gen", "n=3,steps=2,seed=0"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("n 3\n")
