import json
import subprocess
import sys

import pytest

from selfsim.cli import main

C4 = {"vertices": [1, 2, 3, 4], "edges": [[1, 2], [2, 3], [3, 4], [4, 1]]}


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "selfsim.cli", *map(str, args)], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def c4(tmp_path):
    f = tmp_path / "c4.json"
    f.write_text(json.dumps(C4))
    return f


def test_classify(c4):
    code, out, _ = cli("graph", "classify", c4)
    assert code == 0 and json.loads(out)["self_simulable"] == "Yes"


def test_classify_p3_and_cutclique(tmp_path):
    f = tmp_path / "p3.txt"
    f.write_text("1 2\n2 3\n")
    code, out, _ = cli("graph", "classify", f)
    assert code == 0 and json.loads(out)["self_simulable"] == "No"
    code, out, _ = cli("graph", "cutclique", f, "--method", "separator")
    assert json.loads(out) == {"clique": [2]}
    code, out, _ = cli("graph", "atomic", f)
    assert code == 1 and json.loads(out) == {"atomic": False}


def test_word_commands(c4):
    code, out, _ = cli("word", "tail", "--graph", c4, "1:+1 3:+1")
    assert code == 0 and json.loads(out) == {"tail": [3]}
    assert json.loads(cli("word", "nf", "--graph", c4, "2:+1 1:+1")[1]) == {"normal_form": "1:+1 2:+1"}
    assert cli("word", "eq", "--graph", c4, "1:+1 3:+1", "3:+1 1:+1")[0] == 1
    assert cli("word", "eq", "--graph", c4, "1:+1 2:+1", "2:+1 1:+1")[0] == 0


def test_ball(c4):
    d = json.loads(cli("ball", "--graph", c4, "-r", 2)[1])
    assert d["size"] == 49 and d["elements"][0] == ""


def test_witness_check_round_trip_and_broken_patch(c4, tmp_path):
    patch = tmp_path / "p.json"
    code, out, _ = cli("sft", "witness", "--system", "path", "--graph", c4, "-r", 2, "-o", patch)
    assert code == 0
    code, out, _ = cli("sft", "check", "--patch", patch)
    assert code == 0 and json.loads(out)["violations"] == []
    d = json.loads(patch.read_text())
    d["cells"][0]["symbol"]["1"]["r"] = "+1"
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(d))
    code, out, _ = cli("sft", "check", "--patch", broken)
    assert code == 1 and "path-1" in {v["rule"] for v in json.loads(out)["violations"]}


def test_compute_pipeline(c4, tmp_path):
    patch = tmp_path / "z.json"
    code, _, _ = cli("sft", "witness", "--system", "compute", "--graph", c4, "-r", 2, "--action", "odometer",
                     "-o", patch)
    assert code == 0
    assert cli("sft", "check", "--patch", patch)[0] == 0
    code, out, _ = cli("sft", "beta", "--patch", patch)
    assert code == 0 and json.loads(out)["beta"] == [0, 1]


def test_witness_impossible_exit_one(tmp_path):
    f = tmp_path / "c3.txt"
    f.write_text("1 2\n2 3\n3 1\n")
    code, out, _ = cli("sft", "witness", "--system", "bush", "--graph", f)
    assert code == 1 and "error" in json.loads(out)


def test_tiles(tmp_path):
    tiles = tmp_path / "t.json"
    assert cli("tiles", "compile", "--tm", "adding", "-o", tiles)[0] == 0
    grid = tmp_path / "g.json"
    assert cli("tiles", "run", "--tm", "adding", "--tiles", tiles, "--input", "0110000", "-W", 8, "-H", 6,
               "-o", grid)[0] == 0
    assert cli("tiles", "check", "--tiles", tiles, "--grid", grid)[0] == 0
    assert json.loads(cli("tiles", "row", "--tiles", tiles, "--grid", grid)[1])["row"][:4] == list("0110")
    halt = tmp_path / "h.json"
    cli("tiles", "compile", "--tm", "immediate-halt", "-o", halt)
    code, out, _ = cli("tiles", "search", "--tiles", halt, "-W", 3, "-H", 3)
    assert code == 1 and json.loads(out) == {"found": False}


def test_action_check(c4):
    code, out, _ = cli("action", "check", "--graph", c4)
    assert code == 0 and json.loads(out)["consistent"] is True


def test_input_errors(tmp_path, c4):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1\n")
    code, _, err = cli("graph", "classify", bad)
    assert code == 2 and "line 1" in err
    assert cli("graph", "classify", tmp_path / "missing.json")[0] == 2
    assert cli("sft", "check")[0] == 2
    assert cli("word", "nf", "--graph", c4, "9:+1")[0] == 2


def test_output_is_deterministic(c4, capsys):
    runs = []
    for _ in range(2):
        assert main(["sft", "witness", "--system", "bush", "--graph", str(c4), "-r", "2"]) == 0
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
