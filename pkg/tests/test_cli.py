import csv
import io
import json

import pytest

from phachain.chain import (
    is_chain_solution,
    ratfun_from_dict,
    solution_from_dict,
    solution_to_dict,
    symmetric_seed,
)
from phachain.cli import main
from phachain.ratfun import X
from phachain.weyl import apply_word


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def test_orbit_example_roundtrips():
    code, text = run("orbit", "--m", "2", "--lambda", "1", "--depth", "1", "--format", "json")
    assert code == 0
    records = [json.loads(line) for line in text.splitlines()]
    assert len(records) == 4
    for rec in records:
        sol = solution_from_dict(rec)
        assert is_chain_solution(sol)
        back = solution_to_dict(sol)
        assert all(back[k] == rec[k] for k in back)


def test_orbit_edges():
    code, text = run("orbit", "--m", "2", "--depth", "1", "--edges", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] and len(rows) > 1


def test_relations_example():
    code, text = run("relations", "--m", "3", "--trials", "20")
    rep = json.loads(text)
    assert code == 0 and rep["ok"]
    assert not [c for c in rep["checks"] if c["status"] == "violated"]


def test_painleve_example():
    code, text = run("painleve", "--four", "--b0", "0", "--b1", "-2", "--g", "-2x", "--format", "json")
    rep = json.loads(text)
    assert code == 0 and rep["max_residual"] == 0 and rep["exact_zero"]


def test_painleve_fit():
    code, text = run("painleve", "--four", "--fit", "--g", "-2x/3", "--format", "json")
    assert code == 0 and json.loads(text)["fit"] == {"b0": "0/1", "b1": "-2/9"}


def test_seed_roundtrip_and_residual_input(tmp_path):
    code, text = run("seed", "--n", "3", "--lambda", "3/2", "--c0", "1/4")
    assert code == 0
    sol = solution_from_dict(json.loads(text))
    assert is_chain_solution(sol)
    path = tmp_path / "sol.json"
    path.write_text(text)
    code, text = run("residual", "--input", str(path))
    assert code == 0 and json.loads(text)["is_solution"]


def test_residual_from_flags():
    code, text = run("residual", "--f", "x/3+1/x", "--f", "x/3-1/x", "--f", "x/3", "--eps", "0,1/3,-1/3")
    assert code == 0 and json.loads(text)["is_solution"]
    code, text = run("residual", "--f", "x", "--f", "x", "--f", "x", "--eps", "0,1/3,-1/3")
    assert code == 0 and not json.loads(text)["is_solution"]


def test_potential():
    code, text = run("potential", "--f1", "-x", "--eps1", "1/2")
    doc = json.loads(text)
    assert code == 0 and doc["form"] == "factorization"
    assert ratfun_from_dict(doc["V"]) == X * X / 2
    code, text = run("potential", "--f1", "x", "--unscaled")
    assert ratfun_from_dict(json.loads(text)["V"]) == 1 + X * X


def _csv_numbers(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], [[float(v) for v in r] for r in rows[1:]]


@pytest.mark.parametrize("argv", [
    ("painleve", "--four", "--b0", "0", "--b1", "-2", "--g", "-2x+1/10", "--grid", "0.5,2,15"),
    ("integrate", "--init", "1/3,1/3,1/3", "--steps", "10"),
    ("susy", "--seed", "-1/2,0", "--points", "21", "--states", "3"),
])
def test_csv_and_json_agree(argv):
    c1, as_csv = run(*argv, "--format", "csv")
    c2, as_json = run(*argv, "--format", "json")
    assert c1 == c2 == 0
    header, rows = _csv_numbers(as_csv)
    doc = json.loads(as_json)
    assert doc["columns"] == header
    assert doc["rows"] == rows


def test_susy_report():
    code, text = run("susy", "--seed", "1/2,0", "--points", "11", "--states", "2", "--format", "json")
    doc = json.loads(text)
    assert code == 0
    assert doc["annihilated"] == [0] and "phi_0" not in doc["columns"]
    assert doc["nonsingularity"]["ok"]
    assert doc["ladder_polynomial"]


def test_exit_code_computation_failure():
    code, text = run("susy", "--seed", "-1/2,2")
    assert code == 1
    assert json.loads(text)["error"] == "SingularTransformation"


def test_exit_code_validation(capsys):
    code, text = run("seed", "--n", "3", "--lambda", "one")
    assert code == 2 and text == ""
    assert "malformed" in capsys.readouterr().err
    code, _ = run("seed", "--n", "3", "--bogus")
    assert code == 2
    code, _ = run("integrate", "--init", "1,1")
    assert code == 2
    assert "even" in capsys.readouterr().err


def test_blow_up_is_computation_failure():
    sol = apply_word("s0 s1", symmetric_seed(3, 1, 0))  # pole at sqrt(3/2)
    init = ",".join(repr(float(v)) for v in sol.sample([1.0])[:, 0])
    eps = ",".join(f"{e.numerator}/{e.denominator}" for e in sol.params.eps)
    code, text = run("integrate", "--init", init, "--eps", eps, "--steps", "100")
    assert code == 1 and json.loads(text)["error"] == "BlowUp"
