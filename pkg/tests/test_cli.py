import json
import subprocess
import sys

import pytest

from regcut.cli import main


@pytest.fixture
def files(tmp_path):
    k4 = tmp_path / "k4.edges"
    k4.write_text("".join(f"{u} {v} 1\n" for u in range(4) for v in range(u + 1, 4)))
    k22 = tmp_path / "k22.edges"
    k22.write_text("0 2 1\n0 3 1\n1 2 1\n1 3 1\n")
    c4 = tmp_path / "c4.edges"
    c4.write_text("# four cycle\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n")
    return tmp_path


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_spectrum(files, capsys):
    code, out, _ = run(["spectrum", "--delta", "0.5", "--delta", "0.2", files / "k4.edges"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["eigenvalues"] == pytest.approx([1, -1 / 3, -1 / 3, -1 / 3])
    assert data["threshold_rank"][0]["k"] == pytest.approx(1)
    assert data["threshold_rank"][1]["k"] == pytest.approx(1 + 3 / 9)
    assert data["m"] == 12 and data["edge_weight"] == 6


def test_decompose_then_verify(files, capsys):
    out_json = files / "out.json"
    code, out, _ = run(["decompose", "--eps", "0.5", "--oracle", "exact", files / "k22.edges",
                        out_json], capsys)
    assert code == 0
    saved = json.loads(out_json.read_text())
    assert set(saved) >= {"epsilon", "k", "cuts", "certified_residual"}
    code, out, _ = run(["verify", files / "k22.edges", out_json], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["ok"] and data["residual"] <= 4


def test_verify_failure_exit_code(files, capsys):
    bad = files / "bad.json"
    bad.write_text(json.dumps({"epsilon": 0.1, "k": 2.0, "cuts": [], "certified_residual": None}))
    code, out, _ = run(["verify", files / "k22.edges", bad], capsys)
    assert code == 2
    assert json.loads(out)["residual"] == pytest.approx(8)


@pytest.mark.parametrize("argv", [
    ["maxcut", "--eps", "2", "GRAPH"],
    ["bisect", "--objective", "max", "--eps", "0", "GRAPH"],
    ["decompose", "--eps", "2.5", "GRAPH", "out.json"],
    ["maxcut", "--eps", "0.5", "missing.edges"],
    ["frobnicate"],
    [],
])
def test_usage_errors(files, capsys, argv):
    argv = [str(files / "c4.edges") if a == "GRAPH" else a for a in argv]
    code, out, err = run(argv, capsys)
    assert code == 1
    assert out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1 and "error" in json.loads(lines[0])


def test_maxcut_and_bisect(files, capsys):
    code, out, _ = run(["maxcut", "--eps", "0.5", files / "c4.edges"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["cut_A"] == 4 and data["certified"]
    assert set(data) >= {"S", "cut_A", "cut_W", "dS", "m", "certified", "guesses_tried"}
    code, out, _ = run(["bisect", "--objective", "min", "--eps", "0.5", files / "c4.edges"], capsys)
    data = json.loads(out)
    assert code == 0 and abs(data["dS"] - 4) <= 4


def test_planted_and_partition_dump(files, capsys):
    planted = files / "s.txt"
    planted.write_text("0 2\n")
    dump = files / "part.json"
    code, out, _ = run(["maxcut", "--eps", "0.5", "--planted", planted,
                        "--dump-partition", dump, files / "c4.edges"], capsys)
    assert code == 0
    assert json.loads(out)["cut_A"] == 4
    assert "delta_step" in json.loads(dump.read_text())


def test_byte_identical_output(files, capsys):
    argv = ["bisect", "--objective", "max", "--eps", "0.6", "--seed", "3", files / "k22.edges"]
    _, first, _ = run(argv, capsys)
    _, second, _ = run(argv, capsys)
    assert first == second


def test_oracle_bench(capsys):
    code, out, _ = run(["oracle-bench", "--instances", "12"], capsys)
    data = json.loads(out)
    assert code == 0 and data["instances"] == 12 and "rows" not in data


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "regcut", "spectrum", "--delta", "0.5",
                           str(files / "k4.edges")], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["threshold_rank"][0]["k"] == pytest.approx(1)
