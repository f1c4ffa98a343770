import json
import subprocess
import sys

import pytest

from discsieve.cli import SELFTESTS, main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.strip()]


def test_ddisc(capsys):
    code, lines = run(["ddisc", "--poly", "[3,0,-1,0]"], capsys)
    assert code == 0
    assert "_meta" in lines[0]
    assert lines[1]["disc"] == "4" and lines[1]["delta_prime"] == "9"


def test_lemma31(capsys):
    code, lines = run(["lemma31", "--p", "3", "--k", "1", "--n", "3"], capsys)
    assert code == 0 and lines[1]["violations"] == []


def test_census_report(capsys):
    code, lines = run(["census", "--n", "3", "--H", "3", "4", "--predicates", "maximal,squarefree"], capsys)
    assert code == 0 and len(lines) == 3
    assert lines[1]["densities"]["maximal"]["exact"] == "2805/4505"
    assert lines[1]["densities"]["squarefree"]["exact"] == "1624/4505"


@pytest.mark.parametrize("command", sorted(SELFTESTS))
def test_selftests(command):
    assert main([command, "--selftest"]) == 0


def test_exit_codes(capsys):
    assert main(["disc", "--poly", "[3,1]"]) == 1
    assert main(["nonsense"]) == 1
    assert main(["census", "--n", "3", "--H", "100", "--budget", "1000"]) == 2
    assert main(["lemma31", "--p", "7", "--k", "2", "--n", "4", "--budget", "1000"]) == 2
    assert main(["member", "--poly", "[2,0,1]", "--m", "0"]) == 1
    capsys.readouterr()


def test_payload_reproducible(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.jsonl"
        assert main(["distinguished", "--count", "3", "--generic", "--T", "4", "--out", str(path)]) == 0
        outs.append(path.read_text().splitlines())
    assert outs[0][1:] == outs[1][1:]
    meta = json.loads(outs[0][0])["_meta"]
    assert meta["config"]["subcommand"] == "distinguished"


def test_csv_density_table(tmp_path):
    path = tmp_path / "t.csv"
    assert main(["census", "--n", "2", "--H", "2", "3", "--predicates", "squarefree", "--format", "csv", "--out", str(path)]) == 0
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# ")
    header = lines[1].split(",")
    assert "densities.squarefree.float" in header and len(lines) == 4


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "discsieve", "disc", "--poly", "[2,0,-5]"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout.splitlines()[1])["disc"] == "20"


def test_workers_env(monkeypatch, capsys):
    monkeypatch.setenv("DISCSIEVE_WORKERS", "2")
    code, lines = run(["census", "--n", "2", "--H", "3", "--predicates", "squarefree"], capsys)
    assert code == 0 and lines[0]["_meta"]["config"]["params"]["workers"] == 2
