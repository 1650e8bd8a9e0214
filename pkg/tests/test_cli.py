import json
import subprocess
import sys

import pytest

from ftspt.cli import main

G1 = "0 1 1\n1 2 1\n2 3 1\n0 3 4\n"


@pytest.fixture
def g1_file(tmp_path):
    p = tmp_path / "g1.txt"
    p.write_text(G1)
    return p


def test_build_and_verify_easpt(tmp_path, g1_file, capsys):
    out = tmp_path / "h.txt"
    assert main(["build", "easpt", "--graph", str(g1_file), "--eps", "0.1", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 4
    side = json.loads((tmp_path / "h.txt.json").read_text())
    assert side["kind"] == "easpt" and side["params"] == {"eps": 0.1} and side["size"] == 4
    assert json.loads((tmp_path / "h.txt.trace.json").read_text()) == []
    capsys.readouterr()
    assert main(["verify", "--graph", str(g1_file), "--structure", str(out)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["global_max_stretch"] <= 1.1 and report["violations"] == []


def test_verify_flags_violations(tmp_path, g1_file):
    h = tmp_path / "tree.txt"
    h.write_text("0 1 1\n1 2 1\n2 3 1\n")
    args = ["verify", "--graph", str(g1_file), "--structure", str(h), "--model", "tree-edges", "--alpha", "3"]
    assert main(args + ["--out", str(tmp_path / "r.csv"), "--format", "csv"]) == 1
    assert (tmp_path / "r.csv").read_text().startswith("fault,max_stretch")


def test_input_errors_exit_2(tmp_path, g1_file, caplog):
    assert main(["build", "easpt", "--graph", str(tmp_path / "missing.txt"), "--eps", "0.1", "--out", "x"]) == 2
    assert "missing.txt" in caplog.text
    assert main(["build", "easpt", "--graph", str(g1_file), "--out", str(tmp_path / "x")]) == 2
    assert main(["build", "vaspt", "--graph", str(g1_file), "--eps", "-1", "--out", str(tmp_path / "x")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1 0\n")
    assert main(["build", "swap3", "--graph", str(bad), "--out", str(tmp_path / "x")]) == 2
    assert main(["build", "eabfs", "--graph", str(g1_file), "--k", "2", "--out", str(tmp_path / "x")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["build", "nonsense", "--graph", str(g1_file), "--out", "x"])
    assert exc.value.code == 2


def test_spanner_pipeline(tmp_path):
    g = tmp_path / "u.txt"
    assert main(["gen", "gnp(30,0.25)", "--seed", "4", "--out", str(g)]) == 0
    sp = tmp_path / "sp.txt"
    assert main(["build", "spanner", "--graph", str(g), "--k", "2", "--out", str(sp)]) == 0
    assert json.loads((tmp_path / "sp.txt.json").read_text())["alpha"] == 3.0
    for kind in ("eabfs", "vabfs"):
        h = tmp_path / f"{kind}.txt"
        assert main(["build", kind, "--graph", str(g), "--spanner", str(sp), "--out", str(h)]) == 0
        assert main(["verify", "--graph", str(g), "--structure", str(h), "--out", str(tmp_path / "r.json")]) == 0
    # the bare spanner has no fault guarantee to infer
    assert main(["verify", "--graph", str(g), "--structure", str(sp)]) == 2


def test_same_seed_same_bytes(tmp_path):
    for run in ("a", "b"):
        d = tmp_path / run
        d.mkdir()
        main(["gen", "gnp(40,0.15)", "--weights", "uniform(1,100)", "--seed", "11", "--out", str(d / "g.txt")])
        main(["build", "vaspt", "--graph", str(d / "g.txt"), "--eps", "0.25", "--out", str(d / "h.txt")])
        main(["verify", "--graph", str(d / "g.txt"), "--structure", str(d / "h.txt"), "--out", str(d / "r.json")])
    for name in ("g.txt", "h.txt", "h.txt.json", "h.txt.trace.json", "r.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_bench_csv(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "easpt", "--n", "20,30", "--eps", "0.5", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "n,m,eps,kind,base_size,added,total,max_stretch,seconds"
    rows = [ln.split(",") for ln in lines[1:]]
    assert [r[0] for r in rows] == ["20", "30"]
    assert all(float(r[7]) <= 1.5 for r in rows)


def test_bench_rows_do_not_depend_on_jobs(tmp_path):
    def strip(text):
        return [ln.rsplit(",", 1)[0] for ln in text.splitlines()]

    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["bench", "eabfs", "--n", "20,30", "--k", "2,3", "--repeat", "2", "--out", str(a)])
    main(["bench", "eabfs", "--n", "20,30", "--k", "2,3", "--repeat", "2", "--jobs", "2", "--out", str(b)])
    assert strip(a.read_text()) == strip(b.read_text())


def test_module_entry_point(tmp_path, g1_file):
    out = tmp_path / "h.txt"
    cmd = [sys.executable, "-m", "ftspt", "build", "swap3", "--graph", str(g1_file), "--out", str(out)]
    assert subprocess.run(cmd, capture_output=True).returncode == 0
    assert json.loads((tmp_path / "h.txt.json").read_text())["size"] == 4
