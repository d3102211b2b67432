import json
import subprocess
import sys

import pytest

from isoclass.arith.text import parse_poly
from isoclass.categoricity.montecarlo import MCStats
from isoclass.cli import run
from isoclass.field.embed import is_isomorphic
from isoclass.field.serial import load_tower, loads_tower
from isoclass.field.tower import tower
from isoclass.measure.haar import MeasureValue
from isoclass.quotient.posets import Poset, chain, poset_isomorphism
from isoclass.trees.codec import parse_word
from isoclass.trees.core import FiniteTree, tree_from_code

CFG1 = "X^2-2,X^2-r0,X^2+r0"
CFG2 = "X^2+1, X^2-2, X^2-r1, X^2+r1"


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def ok(capsys, *argv):
    code, out, err = cli(capsys, *argv)
    assert code == 0, err
    return out


# -- documented examples ----------------------------------------------------------------------


def test_measure_example(capsys):
    out = ok(capsys, "measure", "--haar", "--enum", CFG1, "--event", "root-of:X^4-2", "--depth", "3")
    assert out == "3/8\n"


def test_decode_empty_bits_is_rationals(capsys):
    assert ok(capsys, "decode", "--enum", "X^2-2", "--bits", "") == "Q\n"


def test_poset_ef_example(capsys):
    out = ok(capsys, "quotient", "poset-ef", "--fn", "0:2")
    assert out.splitlines()[0] == "elements 3"
    assert out.splitlines()[-1] == "product of chains 3"


def test_factor_milestone(capsys):
    out = ok(capsys, "factor", "Y^12-2", "--over", "X^8-2")
    assert out == "(X^3 - a0^2)*(X^3 + a0^2)*(X^6 + a0^4)\n"


# -- exit codes ------------------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [["bogus"], [], ["measure"], ["field", "nope"], ["scott-n", "--d", "x"]])
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = cli(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("usage error:")


@pytest.mark.parametrize("argv,token", [
    (["factor", "X^^2"], "'^'"),
    (["decode", "--bits", "012"], "'2'"),
    (["measure", "--event", "roots:X"], "'roots'"),
    (["tree", "decode", "--word", "1,x"], "'x'"),
    (["quotient", "ee", "--left", "0:1", "--right", "2"], "'0:1'"),
])
def test_domain_errors_name_the_token(capsys, argv, token):
    code, out, err = cli(capsys, *argv)
    assert code == 1 and out == ""
    assert err.startswith("error:") and token in err


def test_domain_errors_without_token(capsys):
    assert cli(capsys, "scott-n", "--d", "1", "--delta", "1/2")[0] == 1
    assert cli(capsys, "tree", "encode", "--tree", "(()())", "--levels", "2")[0] == 1
    assert cli(capsys, "field", "degree", "--tower", "/nonexistent/tower.json")[0] == 1


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "isoclass.cli", "field", "degree", "--tower", "X^2-2; X^2-a0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "4\n"
    proc = subprocess.run([sys.executable, "-m", "isoclass.cli", "bogus"], capture_output=True, text=True,
                          check=False)
    assert proc.returncode == 2


# -- determinism -------------------------------------------------------------------------------------


@pytest.mark.parametrize("argv", [
    ["mc", "--trials", "3", "--depth", "4", "--seed", "2"],
    ["mc", "--trials", "2", "--depth", "3", "--seed", "5", "--haar", "--enum", CFG1, "--json"],
    ["field", "lattice", "--tower", "X^2-2; X^2-3"],
    ["quotient", "poset-ee", "--set", "1,2,3", "--json"],
    ["theta", "--source", "X^2-2", "--target", "X^2-2"],
])
def test_repeat_runs_are_byte_identical(capsys, argv):
    assert ok(capsys, *argv) == ok(capsys, *argv)


def test_mc_text_parses(capsys):
    a = MCStats.parse(ok(capsys, "mc", "--trials", "3", "--depth", "4", "--seed", "2"))
    assert a.seed == 2 and a.trials == 3 and a.depth == 4
    assert a.successes + a.divergences + a.exhausted == 3


# -- round trips -------------------------------------------------------------------------------------


def test_tower_outputs_reparse(capsys):
    text = ok(capsys, "decode", "--bits", "0101", "--enum", CFG2).strip()
    F = load_tower(text)
    assert [str(p) for p in F.minpolys] == ["X^2 - 2", "X^2 + a0"]
    data = ok(capsys, "decode", "--bits", "11", "--enum", CFG1, "--json")
    G = loads_tower(data)
    assert G.degree == 4
    closure = load_tower(ok(capsys, "field", "closure", "--tower", "X^3-2").strip())
    assert closure.degree == 6
    ext = load_tower(ok(capsys, "field", "extend", "--tower", "X^2-2", "--poly", "X^2-3").strip())
    assert is_isomorphic(ext, tower("X^2-3", "X^2-2"))


def test_tower_file_payload(capsys, tmp_path):
    path = tmp_path / "t.json"
    path.write_text(ok(capsys, "decode", "--bits", "11", "--enum", CFG1, "--json"))
    assert ok(capsys, "field", "degree", "--tower", str(path)) == "4\n"


def test_factor_output_reparses(capsys):
    F = tower("X^8-2")
    out = ok(capsys, "factor", "Y^12-2", "--over", "X^8-2").strip()
    factors = [parse_poly(t, F) for t in out[1:-1].split(")*(")]
    prod = factors[0]
    for f in factors[1:]:
        prod = prod * f
    assert prod == parse_poly("X^12-2", F)
    data = json.loads(ok(capsys, "factor", "X^4-4", "--json"))
    assert [(str(parse_poly(t)), m) for t, m in data["factors"]] == [("X^2 - 2", 1), ("X^2 + 2", 1)]


def test_measure_outputs_reparse(capsys):
    for depth in ("2", "4"):
        out = ok(capsys, "measure", "--haar", "--enum", CFG1, "--event", "root-of:X^4-2", "--depth", depth)
        m = MeasureValue.parse(out.strip())
        assert str(m) == out.strip()
    data = json.loads(ok(capsys, "measure", "--enum", CFG1, "--event", "root-of:X^4-2", "--depth", "2",
                         "--haar", "--json"))
    assert data == {"lower": "1/4", "upper": "1/2"}


def test_poset_outputs_reparse(capsys):
    data = json.loads(ok(capsys, "quotient", "poset-ef", "--fn", "0:2", "--json"))
    P = Poset.from_data(data)
    assert poset_isomorphism(P, chain(3)) is not None
    assert data["shape"] == "product of chains 3"
    data = json.loads(ok(capsys, "quotient", "poset-field", "--tower", "X^2-2; X^2-3", "--json"))
    assert len(Poset.from_data(data)) == 5 and data["shape"].startswith("impossible: ")
    text = ok(capsys, "quotient", "poset-ee", "--set", "1,2")
    edges = [line.split(" < ") for line in text.splitlines() if " < " in line]
    assert len(Poset.from_data(edges)) == 4
    out = ok(capsys, "quotient", "chains", "--poset", json.dumps(edges))
    assert out == "product of chains 2x2\n"


def test_tree_outputs_reparse(capsys):
    word = parse_word(ok(capsys, "tree", "encode", "--tree", "((())())", "--levels", "2").strip())
    assert word == (1, 0)
    code = ok(capsys, "tree", "decode", "--word", "1,0").strip()
    assert tree_from_code(code).code == "((())())"
    data = ok(capsys, "tree", "decode", "--word", "1,0", "--json")
    assert FiniteTree.from_json(data).code == code
    assert parse_word(ok(capsys, "tree", "encode", "--tree", "(()())", "--finite").strip()) == (2, 0)
    assert ok(capsys, "tree", "embed", "--tree", "(())", "--into", "(()())") == "true\n"
    spine = ok(capsys, "tree", "spine", "--set", "0,2", "--height", "4").strip()
    assert len(tree_from_code(spine)) == 7


def test_theta_and_distinguish_outputs(capsys):
    out = ok(capsys, "theta", "--source", "X^3-2; X^3-3", "--target", "X^3-3; X^3-2")
    assert out == "Total a0 -> a1, a1 -> a0\n"
    data = json.loads(ok(capsys, "theta", "--source", "X^2-2", "--target", "X^2-2", "--json"))
    assert data["outcome"] == "diverged" and data["element"] == 0
    data = json.loads(ok(capsys, "distinguish", "--tower", "X^2-2", "--poly", "X^2-2", "--count", "2",
                         "--json"))
    assert data == {"qs": ["1", "3"], "verified": True}


def test_scott_n_output(capsys):
    out = ok(capsys, "scott-n", "--d", "2", "--delta", "1/1000000")
    fields = dict(line.split("=") for line in out.splitlines())
    assert fields == {"d": "2", "delta": "1/1000000", "N": "7", "ratios": "100,40,35"}
    data = json.loads(ok(capsys, "scott-n", "--d", "5", "--delta", "1/1000", "--json"))
    assert data["N"] == 4


def test_quotient_relations(capsys):
    assert ok(capsys, "quotient", "ee", "--left", "2,5", "--right", "0") == "true\n"
    assert ok(capsys, "quotient", "ef", "--left", "1,3", "--right", "2") == "false\n"
    assert ok(capsys, "quotient", "ecard", "--left", "1,3", "--right", "2,9") == "true\n"
    assert ok(capsys, "quotient", "ecard-forall", "--left", "1", "--right", "2,9") == "true\n"


def test_field_ops(capsys):
    assert ok(capsys, "field", "iso", "--tower", "X^2-8", "--other", "X^2-2") == "isomorphic\na0 -> 2*a0\n"
    out = ok(capsys, "field", "aut", "--tower", "X^2-2")
    assert out.splitlines()[0] == "automorphisms 2"
    out = ok(capsys, "encode", "--tower", "X^2-2", "--length", "4", "--enum", CFG1)
    assert out == "1000\n"
    assert ok(capsys, "decode", "--bits", "1000", "--enum", CFG1) == "X^2 - 2\n"
