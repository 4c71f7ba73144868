import io
import re
import subprocess
import sys
from fractions import Fraction

import pytest

from lpnspp.cli import main
from lpnspp.fileformat import load_instance
from lpnspp.net import fire_sequence

from conftest import CORPUS


def run(*argv):
    out = io.StringIO()
    code = main(list(map(str, argv)), out)
    return code, out.getvalue().splitlines()


def corpus(name):
    return next(CORPUS.glob(f"{name}*.spp"))


def test_check_valid_and_invalid():
    f = corpus("01")
    assert run("check", "--instance", f, "--policy", "a") == (0, ["VALID"])
    code, lines = run("check", "--instance", f, "--policy", "")
    assert code == 1
    assert lines == ["INVALID place=ps clearance=0", "witness: t"]


def test_check_empty_policy_all_zero():
    assert run("check", "--instance", corpus("16"), "--policy", "") == (0, ["VALID"])


@pytest.mark.parametrize("engine", ["backward", "karp-miller", "oracle"])
def test_solve_then_check(engine):
    f = corpus("08")
    code, lines = run("--engine", engine, "solve", "--instance", f)
    assert code == 0
    m = re.fullmatch(r"OPTIMAL cost=(\S+) policy=(\{.*\})", lines[0])
    # the file prices b as the decimal 0.3333333333, which stays exact
    assert m and Fraction(m.group(1)) == Fraction(1, 2) + Fraction("0.3333333333")
    assert run("check", "--instance", f, "--policy", m.group(2)) == (0, ["VALID"])


def test_solve_infeasible():
    assert run("solve", "--instance", corpus("03")) == (2, ["INFEASIBLE"])


def test_decide_budget_override():
    f = corpus("21")
    assert run("decide", "--instance", f) == (1, ["NO"])
    assert run("decide", "--instance", f, "--budget", "5") == (0, ["YES"])


def test_gen_hard_then_decide(tmp_path):
    out = tmp_path / "g.spp"
    code, lines = run("gen-hard", "--net", corpus("09"), "--target", "p2=2", "--out", out)
    assert code == 0 and lines == [f"WROTE {out}"]
    assert run("decide", "--instance", out) == (1, ["NO"])


def test_gen_hard_uncoverable(tmp_path):
    out = tmp_path / "g.spp"
    src = tmp_path / "line.spp"
    src.write_text("[places]\np1 init=1\np2\n[transitions]\nt\n[arcs]\np1 -> t\nt -> p2\n")
    run("gen-hard", "--net", src, "--target", "p2=2", "--out", out)
    assert run("decide", "--instance", out) == (0, ["YES"])
    assert run("cover", "--net", src, "--target", "p2≥2") == (1, ["NOT-COVERABLE"])


@pytest.mark.parametrize("engine", ["backward", "oracle"])
def test_cover_witness_replays(engine):
    f = corpus("09")
    code, lines = run("--engine", engine, "cover", "--net", f, "--target", "p2>=2")
    assert code == 0 and lines[0] == "COVERABLE"
    steps = lines[1].removeprefix("witness: ").split()
    inst = load_instance(f)
    m = fire_sequence(inst.net, inst.initial, steps)[-1]
    assert m[inst.net.place_index["p2"]] >= 2


def test_cover_karp_miller():
    assert run("cover", "--net", corpus("09"), "--target", "p2>=2",
               "--engine", "karp-miller") == (0, ["COVERABLE"])


def test_transform_round(tmp_path):
    out = tmp_path / "u.spp"
    assert run("transform", "--instance", corpus("04"), "--to", "uniform", "--out", out)[0] == 0
    text = out.read_text()
    assert "# origin t" in text
    assert run("solve", "--instance", out) == run("solve", "--instance", corpus("04"))


def test_oracle_exit_codes():
    assert run("oracle", "--instance", corpus("01"), "--policy", "a",
               "--bound", "1", "--depth", "5") == (0, ["VALID"])
    assert run("oracle", "--instance", corpus("01"), "--policy", "",
               "--bound", "1", "--depth", "5")[0] == 1
    assert run("oracle", "--instance", corpus("07"), "--policy", "a",
               "--bound", "2", "--depth", "5") == (4, ["UNKNOWN"])


def test_resource_exhausted():
    code, lines = run("--max-nodes", "1", "check", "--instance", corpus("14"), "--policy", "")
    assert code == 5 and lines == ["RESOURCE-EXHAUSTED"]


@pytest.mark.parametrize("argv", [
    ["check", "--instance", "x", "--bogus"],
    ["frobnicate"],
    [],
    ["--engine", "magic", "check", "--instance", "x"],
])
def test_usage_errors(argv, capsys):
    assert main(argv, io.StringIO()) == 3
    assert "usage" in capsys.readouterr().err


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.spp"
    bad.write_text("[places]\np1 init=1 l=2\n[transitions]\nt\n")
    assert run("check", "--instance", bad)[0] == 3
    assert "line 2" in capsys.readouterr().err
    assert run("check", "--instance", tmp_path / "missing.spp")[0] == 3
    assert run("check", "--instance", corpus("01"), "--policy", "zz")[0] == 3


def test_gen_random_deterministic(tmp_path):
    a, b = tmp_path / "a.spp", tmp_path / "b.spp"
    run("--seed", "7", "gen-random", "--out", a)
    run("gen-random", "--seed", "7", "--out", b)
    assert a.read_text() == b.read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lpnspp", "check", "--instance",
                           str(corpus("01")), "--policy", "a"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "VALID"
