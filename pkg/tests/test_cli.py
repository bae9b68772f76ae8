import csv
import io
import json
import subprocess
import sys

import pytest

from pigeonsum import bench
from pigeonsum.cli import main
from pigeonsum.instance import SolutionPair, parse_text, validate, verify


def _write(tmp_path, text, name="inst.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_solve_json(tmp_path, capsys):
    path = _write(tmp_path, "4\n7 4 2 1\n")
    assert main(["solve", path, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["solution"] == {"a": [1], "b": [2, 3, 4], "sum": 7}
    assert set(out["metrics"]) == {"algo", "delta", "attempts", "subsets_enumerated", "dp_cells",
                                   "samples_drawn", "wall_ms"}


def test_solve_plain_output_reverifies(tmp_path, capsys):
    path = _write(tmp_path, "3\n3 1 3\n")
    assert main(["solve", path]) == 0
    line = capsys.readouterr().out.splitlines()[0]
    pair = SolutionPair.from_json(json.loads(line))
    assert verify([3, 1, 3], pair)


@pytest.mark.parametrize("algo", ["auto", "baseline", "large-d", "lowspace"])
def test_solve_modes_reverify(tmp_path, capsys, algo):
    assert main(["gen", "dense", "20", "--seed", "3", "--out", str(tmp_path / "d.txt")]) == 0
    raw = parse_text((tmp_path / "d.txt").read_text())
    assert main(["solve", str(tmp_path / "d.txt"), "--algo", algo, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert verify(raw, SolutionPair.from_json(out["solution"]))


def test_exit_codes(tmp_path, capsys):
    assert main(["solve", _write(tmp_path, "4\n1 2 4 8\n")]) == 2
    assert main(["solve", _write(tmp_path, "3\n1 0 2\n", "b.txt")]) == 2
    assert main(["gen", "near-binary", "12", "--out", str(tmp_path / "nb.txt")]) == 0
    nb = str(tmp_path / "nb.txt")
    assert main(["solve", nb, "--algo", "large-d", "--delta", "64", "--budget", "10"]) == 3
    main(["gen", "random", "16", "--seed", "1", "--out", str(tmp_path / "r.txt")])
    assert main(["solve", str(tmp_path / "r.txt"), "--algo", "small-d", "--delta", "1"]) == 3
    capsys.readouterr()


def test_stats(tmp_path, capsys):
    assert main(["stats", _write(tmp_path, "4\n1 2 3 4\n")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["d_surplus"] == out["d_zeros"] == 5
    assert out["n"] == 4 and out["total"] == 10 and out["max_ft"] == 2
    assert out["witness_j"] == 0
    assert out["structure_ok_at"] == [1, 2, 4, 8]


def test_gen_roundtrip(tmp_path, capsys):
    assert main(["gen", "random", "15", "--seed", "4"]) == 0
    text = capsys.readouterr().out
    main(["gen", "random", "15", "--seed", "4", "--out", str(tmp_path / "g.txt")])
    assert (tmp_path / "g.txt").read_text() == text
    raw = parse_text(text)
    assert validate(raw) == validate(parse_text(format(text)))


def test_seed_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PIGEONSUM_SEED", "17")
    main(["gen", "random", "10"])
    env_text = capsys.readouterr().out
    main(["gen", "random", "10", "--seed", "17"])
    assert capsys.readouterr().out == env_text


def test_bench_csv(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--suite", "regimes", "--n-range", "10:12:2", "--seeds", "0,1",
                 "--out", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert tuple(rows[0]) == bench.COLUMNS
    assert len(rows) == 3 * 2 * 2 * 5
    again = tmp_path / "c.csv"
    main(["bench", "--suite", "regimes", "--n-range", "10:12:2", "--seeds", "0,1",
          "--out", str(again)])
    strip = lambda rs: [{k: v for k, v in r.items() if k != "wall_ms"} for r in rs]
    assert strip(rows) == strip(list(csv.DictReader(io.StringIO(again.read_text()))))


def test_module_entry_point(tmp_path):
    path = _write(tmp_path, "4\n1 2 4 7\n")
    proc = subprocess.run([sys.executable, "-m", "pigeonsum", "solve", path, "--json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["solution"]["sum"] == 7
