import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "schemas"
CLI = os.environ.get("VERBALRAT_CLI", str(ROOT / "build" / "verbalrat"))


def run(*args, check=True):
    p = subprocess.run([CLI, *args], capture_output=True, text=True)
    if check:
        assert p.returncode == 0, p.stderr
    return p


def schema_for(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


CASES = [
    ("word", ["--json", "word", "reduce", "x1 x1^-1 x2"]),
    ("word", ["--json", "word", "pow", "x1 x2", "3"]),
    ("word_classify", ["--json", "word", "classify", "x1^2 x2^4"]),
    ("word_root", ["--json", "word", "root", "x1 x2 x1 x2", "--e", "2"]),
    ("word_bezout", ["--json", "word", "bezout", "x1^2 x2^4", "--g", "x1 x2"]),
    ("word_cyclic", ["--json", "word", "cyclic", "x2 x1 x2^-1"]),
    ("fp", ["fp", "normal", "a b^2 b^-2 a"]),
    ("fp", ["fp", "--b-order", "3", "core", "b a b^2"]),
    ("rat_member", ["rat", "--sexp", "(star (fin x1x2))", "member", "x1 x2 x1 x2"]),
    ("rat_enum", ["--cap-len", "4", "rat", "--sexp", "(star (fin x1 x2^-1))", "enum"]),
    ("rat_standard_form", ["rat", "--sexp", "(prod (fin x1) (star (fin x2)))", "standard-form"]),
    ("rat_acceptor", ["rat", "--sexp", "(star (fin x1x2))", "acceptor"]),
    ("rat_positive", ["rat", "--sexp", "(star (fin x1x2^-1 x2x1))", "positive"]),
    ("sign_split", ["sign", "split", "--s", "a b^-2", "--t", "b^2 a"]),
    ("sign_positivize", ["sign", "positivize", "--sexp", "(prod (fin x1x2) (star (fin x2^-1x1x2)))"]),
    ("sign_positivize", ["sign", "positivize", "--sexp", "(star (fin x2^-1x1x2))"]),
    ("gaps_profile", ["gaps", "profile", "--u", "b a b", "--b", "b^1"]),
    ("gaps_scan", ["--seed", "7", "--samples", "20", "--cap-len", "6", "gaps", "scan", "--word", "x1^2"]),
    ("gaps_family", ["gaps", "family", "--u", "a b", "--v", "a b^2", "--n", "6"]),
    ("gaps_exhaustive", ["--cap-len", "8", "gaps", "exhaustive", "--bound", "1"]),
    ("verbal_enum", ["verbal", "--word", "x1^2", "enum"]),
    ("verbal_member", ["verbal", "--word", "x1^2", "member", "x1 x2 x1 x2"]),
    ("verbal_length", ["verbal", "--word", "x1^2", "length", "x1^2 x2^2"]),
    ("verbal_abelian", ["verbal", "--word", "x1 x2 x1^-1 x2^-1", "abelian"]),
    ("verbal_dichotomy", ["verbal", "--word", "x1^2", "dichotomy", "--elements", "a b; a b^2"]),
    ("verbal_dichotomy", ["verbal", "--word", "x1^2", "dichotomy", "--elements", "a"]),
    ("refute", ["refute", "--word", "x1^2", "--sexp", "(star (fin x1 x2))"]),
    ("refute", ["refute", "--word", "x1^2", "--sexp", "(union (star (fin x1^2)) (star (fin x2^2)))"]),
]


@pytest.mark.parametrize("name,args", CASES, ids=[" ".join(a) for _, a in CASES])
def test_output_validates(name, args):
    out = json.loads(run(*args).stdout)
    jsonschema.validate(out, schema_for(name))


def test_word_reduce_text():
    assert run("word", "reduce", "x1 x1^-1 x2").stdout == "x2\n"


def test_gaps_profile_example():
    out = json.loads(run("gaps", "profile", "--u", "b a b", "--b", "b^1").stdout)
    assert out["result"]["table"] == [{"k": 1, "delta_b": 1, "delta_b_inverse": 0}]


def test_reports_are_deterministic(tmp_path):
    args = ["--seed", "11", "--samples", "50", "gaps", "scan", "--word", "x1^2 x2^2"]
    assert run(*args).stdout == run(*args).stdout
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(*args, "--csv", str(a))
    run(*args, "--csv", str(b))
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().splitlines()[0] == "sample_id,syllable_length,gamma,max_k"
    assert json.loads(run(*args).stdout)["seed"] == 11


def test_refute_squares_and_replay(tmp_path):
    expr = tmp_path / "squares.sexp"
    expr.write_text("(star (fin x1^2))\n")
    rep = tmp_path / "report.json"
    run("refute", "--word", "x1^2", "--expr", str(expr), "--out", str(rep))
    out = json.loads(rep.read_text())
    jsonschema.validate(out, schema_for("refute"))
    assert out["result"]["outcome"] == "missing-value"
    assert out["result"]["replay"]["ok"]

    again = json.loads(run("refute", "--replay", str(rep)).stdout)
    jsonschema.validate(again, schema_for("refute_replay"))
    assert again["result"]["replay"]["ok"]

    out["result"]["certificate"]["u"] = "x1^2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(out))
    p = run("refute", "--replay", str(bad), check=False)
    assert p.returncode == 3
    assert not json.loads(p.stdout)["result"]["replay"]["ok"]


def test_errors_exit_nonzero():
    p = run("word", "reduce", "x1 ^", check=False)
    assert p.returncode == 2
    assert "position" in p.stderr
    p = run("refute", "--word", "x1 x2 x1^-1 x2^-1", "--sexp", "(fin x1)", check=False)
    assert p.returncode == 2
