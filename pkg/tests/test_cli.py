import json
import subprocess
import sys

import pytest

from pcpp_dichotomy import core, oracle
from pcpp_dichotomy.cli import main
from pcpp_dichotomy.fileio import save_library
from pcpp_dichotomy.gadget import one_in_three_library

TWO_LIN = "constraint f1 2 0110\nconstraint f2 2 1001\n"
ONE_IN_THREE = "constraint 1in3 3 01101000\n"


@pytest.fixture
def files(tmp_path):
    paths = {
        "2lin": tmp_path / "2lin.cset",
        "1in3": tmp_path / "1in3.cset",
        "contradiction": tmp_path / "contradiction.cfr",
        "chain": tmp_path / "chain.cfr",
        "units": tmp_path / "units.cfr",
        "3sat": tmp_path / "3sat.cfr",
    }
    paths["2lin"].write_text(TWO_LIN)
    paths["1in3"].write_text(ONE_IN_THREE)
    paths["contradiction"].write_text(TWO_LIN + "vars 2\napp 1 f1 1 2\napp 1 f2 1 2\n")
    paths["chain"].write_text(TWO_LIN + "vars 3\napp 1 f1 1 2\napp 1 f1 2 3\napp 1 f2 1 3\n")
    paths["units"].write_text("vars 1\napp 1 ID 1\napp 1 NOT 1\n")
    paths["3sat"].write_text("vars 3\napp 1 CL_ppn 1 2 3\napp 1 CL_nn 1 2\napp 1 CL_p 3\n")
    return {k: str(v) for k, v in paths.items()}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--report", "json")
    return code, (json.loads(out) if out else None), out


def test_classify(capsys, files):
    code, rep, _ = run_json(capsys, "classify", "--set", files["2lin"])
    assert code == 0
    assert rep["result"]["tractable_classes"] == ["linear", "2cnf"]
    assert rep["result"]["flags"]["c-closed"] is True
    assert rep["exit_status"] == 0
    assert set(rep["inputs"]) == {files["2lin"]}


def test_lin_attack(capsys, files):
    code, rep, _ = run_json(capsys, "lin-attack", "--formula", files["contradiction"])
    assert code == 3 and rep["result"]["status"] == "inconsistent"
    code, rep, _ = run_json(capsys, "lin-attack", "--formula", files["chain"])
    assert code == 0 and rep["result"]["fraction"] == "1/1"


def test_gadget(capsys, files):
    code, rep, _ = run_json(capsys, "gadget", "--target", "NAND", "--set", files["1in3"],
                            "--max-aux", "1", "--max-apps", "1")
    assert code == 0
    assert rep["result"]["applications"] == [["1in3", 1, 2, 3]]
    code, rep, _ = run_json(capsys, "gadget", "--target", "XOR2", "--set", files["1in3"],
                            "--max-aux", "0", "--max-apps", "1")
    assert code == 3 and rep["result"]["status"] == "not-found"


def test_solve_and_distance(capsys, files):
    code, rep, _ = run_json(capsys, "solve", "--formula", files["units"])
    assert code == 3 and rep["result"]["max_fraction"] == "1/2"
    code, rep, _ = run_json(capsys, "solve", "--formula", files["units"], "--kappa", "3/4", "--sigma", "1/4")
    assert code == 3 and rep["result"]["decision"] == "gap-violated"
    code, rep, _ = run_json(capsys, "solve", "--formula", files["units"], "--kappa", "1/2", "--sigma", "1/4")
    assert code == 0 and rep["result"]["decision"] == "kappa-satisfiable"
    code, rep, _ = run_json(capsys, "distance", "--formula", files["chain"], "--assignment", "000")
    assert code == 0 and rep["result"]["distance"] == "1/3"
    code, rep, _ = run_json(capsys, "distance", "--formula", files["units"], "--assignment", "0")
    assert code == 3


def test_synth(capsys, files):
    code, rep, _ = run_json(capsys, "synth", "--set", files["2lin"], "--family", "linear-equation",
                            "--constraint", "f1")
    assert code == 0
    assert [[1, 2], 1] in rep["result"]["representations"]["f1"]["linear-equation"]


@pytest.mark.parametrize("demo,mode,n,m", [
    ("linear", "pairwise", 2, 3),
    ("weakly-positive", "pairwise", 2, 3),
    ("weakly-negative", "pairwise", 1, 3),
    ("2cnf", "triplewise", 1, 3),
])
def test_gen_then_attack(capsys, tmp_path, demo, mode, n, m):
    out = tmp_path / "psi.cfr"
    code, rep, _ = run_json(capsys, "gen", "--mode", mode, "--n", str(n), "--m", str(m),
                            "--out", str(out), "--demo", demo)
    assert code == 0
    code, rep, _ = run_json(capsys, "attack", "--class", demo, "--formula", str(out),
                            "--witnesses", str(out.with_suffix(".wit")),
                            "--alphas", str(out.with_suffix(".alpha")))
    assert code == 0
    assert rep["result"]["satisfied_fraction_pruned"] == "1/1"
    assert len(rep["inputs"]) == 3


def test_gen_onehot(capsys, tmp_path):
    code, rep, _ = run_json(capsys, "gen", "--mode", "pairwise", "--n", "1", "--m", "2",
                            "--out", str(tmp_path / "g.cfr"))
    assert code == 0
    assert sorted(rep["result"]["satisfying"]) == ["00", "01", "10"]


def test_reduce(capsys, tmp_path, files):
    lib = tmp_path / "lib"
    save_library(one_in_three_library(), lib)
    code, rep, _ = run_json(capsys, "reduce", "--formula", files["3sat"], "--set", files["1in3"],
                            "--library", str(lib))
    assert code == 0
    assert rep["result"]["satisfiable"] is True


@pytest.mark.parametrize("argv,code", [
    (["bogus"], 1),
    (["classify"], 1),
    (["classify", "--set", "/nonexistent.cset"], 1),
    (["solve", "--formula", "{units}", "--kappa", "x", "--sigma", "0"], 1),
    (["solve", "--formula", "{units}", "--n-max", "0"], 2),
    (["classify", "--set", "{1in3}", "--max-arity", "2"], 2),
])
def test_exit_codes(capsys, files, argv, code):
    argv = [a.format(**files) for a in argv]
    got, out, err = run(capsys, *argv)
    assert got == code
    assert err
    if code != 0:
        assert out == ""


def test_globals_restored(capsys, files):
    before = (core.MAX_ARITY, oracle.N_MAX)
    run(capsys, "solve", "--formula", files["units"], "--n-max", "5", "--max-arity", "4")
    assert (core.MAX_ARITY, oracle.N_MAX) == before


def test_json_round_trip_is_byte_identical(capsys, files):
    _, rep, raw = run_json(capsys, "classify", "--set", files["1in3"])
    assert json.dumps(rep, indent=2, sort_keys=True) + "\n" == raw


def leaves(value, prefix=""):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from leaves(v, f"{prefix}{k}.")
    else:
        yield prefix[:-1], value


@pytest.mark.parametrize("argv", [
    ["classify", "--set", "{2lin}"],
    ["lin-attack", "--formula", "{chain}"],
    ["solve", "--formula", "{units}"],
])
def test_text_and_json_carry_the_same_facts(capsys, files, argv):
    argv = [a.format(**files) for a in argv]
    c1, rep, _ = run_json(capsys, *argv)
    c2, text, _ = run(capsys, *argv)
    assert c1 == c2
    for key, value in leaves(rep["result"]):
        if isinstance(value, list):
            value = json.dumps(value)
        assert f"{key}: {value}" in text


def test_deterministic(capsys, files):
    argv = ["gadget", "--target", "ANDN", "--set", files["1in3"], "--max-aux", "1", "--max-apps", "2",
            "--report", "json"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "pcpp_dichotomy", "classify", "--set", files["1in3"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "verdict: NP-hard" in proc.stdout
