import json

import numpy as np
import pytest

from mpucodes.cli import main
from mpucodes.mindist import LinearCode, read_generator_matrix, write_generator_matrix
from mpucodes.ringcore import Poly, parse_poly


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_factor(capsys):
    code, out, _ = run(capsys, "factor", "--m", "7")
    assert code == 0
    fs = [parse_poly(line) for line in out.split()]
    prod = Poly.constant(1)
    for f in fs:
        prod = prod * f
    assert len(fs) == 3 and prod == parse_poly("x^7+1")


def test_factor_error(capsys):
    code, _, err = run(capsys, "factor", "--m", "6")
    assert code == 1 and "GcdNotOne" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["mindist"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["bogus"])
    assert e.value.code == 2
    capsys.readouterr()


def test_mindist_repetition(tmp_path, capsys):
    gm = tmp_path / "rep.gm"
    write_generator_matrix(LinearCode(np.ones((1, 7), dtype=np.uint8)), gm)
    code, out, _ = run(capsys, "mindist", "--gm", str(gm), "--workers", "1")
    assert code == 0 and "d=7" in out


def test_mindist_bad_file(tmp_path, capsys):
    gm = tmp_path / "bad.gm"
    gm.write_text("2 3 1\n12\n")
    code, _, err = run(capsys, "mindist", "--gm", str(gm))
    assert code == 1 and "ParseError" in err


SPEC = """q=2
m=7
f1=x^3+x+1
f2=(x^7-1)/(x+1)
g=x^2+x+1
A=[[1,g],[0,1]]
"""


def test_construct_mindist_ops_round_trip(tmp_path, capsys):
    spec = tmp_path / "small.spec"
    spec.write_text(SPEC)
    gm = tmp_path / "c.gm"
    code, out, _ = run(capsys, "construct", "--spec", str(spec), "--out", str(gm))
    assert code == 0 and "n=14 k=5" in out
    code, out, _ = run(capsys, "mindist", "--gm", str(gm))
    d = int(out.split("d=")[1].split()[0])
    for op, extra, nk in (("puncture", ["--pos", "14"], "n=13 k=5"),
                         ("shorten", ["--pos", "1"], "n=13 k=4"),
                         ("extend", [], "n=15 k=5")):
        dst = tmp_path / f"{op}.gm"
        code, out, _ = run(capsys, "ops", op, "--gm", str(gm), *extra, "--out", str(dst))
        assert code == 0 and nk in out
        assert read_generator_matrix(dst).n in (13, 15)
        code, out, _ = run(capsys, "mindist", "--gm", str(dst))
        assert code == 0
    code, _, err = run(capsys, "ops", "puncture", "--gm", str(gm), "--out", str(tmp_path / "x"))
    assert code == 2
    code, _, err = run(capsys, "ops", "puncture", "--gm", str(gm), "--pos", "99", "--out", str(tmp_path / "x"))
    assert code == 1 and "IndexError" in err


def test_bound_and_lowweight(tmp_path, capsys):
    spec = tmp_path / "small.spec"
    spec.write_text(SPEC)
    code, out, _ = run(capsys, "bound", "--spec", str(spec))
    assert code == 0 and "dstar=6" in out
    code, out, _ = run(capsys, "lowweight", "--spec", str(spec))
    assert code == 0 and "upper=" in out


def test_cyclic_table_and_search(tmp_path, capsys):
    table = tmp_path / "cyc.txt"
    code, out, _ = run(capsys, "cyclic-table", "--max-m", "9", "--max-k", "20", "--out", str(table))
    assert code == 0 and table.exists() and (tmp_path / "cyc.txt.words").exists()
    best = tmp_path / "best.txt"
    best.write_text("14,5,6\n")
    ledger = tmp_path / "ledger.jsonl"
    args = ["search", "--m-range", "7..9", "--g-strategy", "degree:2", "--best-known", str(best),
            "--ledger", str(ledger), "--seed", "1", "--table", str(table)]
    code, out, _ = run(capsys, *args)
    assert code == 0 and "evaluated" in out
    n_lines = len(ledger.read_text().splitlines())
    assert n_lines > 0
    assert all(json.loads(line)["seed"] == 1 for line in ledger.read_text().splitlines())
    code, out, _ = run(capsys, *args)
    assert "evaluated 0 new candidates" in out
    assert len(ledger.read_text().splitlines()) == n_lines


def test_search_bad_strategy(tmp_path, capsys):
    code, _, err = run(capsys, "search", "--m-range", "7..7", "--g-strategy", "sweep",
                       "--ledger", str(tmp_path / "l"))
    assert code == 1 and "ParseError" in err


def test_verify_paper(capsys):
    code, out, _ = run(capsys, "verify-paper")
    assert code == 0
    lines = out.splitlines()
    for name in ("C1", "C2", "C3", "C4", "C5", "C6", "C7"):
        assert any(line.startswith(name) and line.endswith("PASS") for line in lines)
    assert "FAIL" not in out
