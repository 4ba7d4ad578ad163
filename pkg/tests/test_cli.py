import json
import shutil
from importlib import resources
from io import StringIO

import pytest

from cubicgit.cli import run

FERMAT = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3 + x5^3"


def call(*argv):
    out = StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def fermat(tmp_path):
    p = tmp_path / "f.txt"
    p.write_text(FERMAT + "\n")
    return str(p)


@pytest.fixture
def data_copy(tmp_path):
    d = tmp_path / "data"
    d.mkdir()
    src = resources.files("cubicgit").joinpath("data")
    for name in ("table1.json", "table2.json", "strata.json"):
        shutil.copy(str(src.joinpath(name)), d / name)
    return d


def test_mu_fermat(fermat):
    code, text = call("mu", "--poly", fermat, "--lambda", "1,0,0,0,0,-1", "--tsv")
    assert code == 0 and text == "3\tx0^3\n"
    code, text = call("mu", "--poly", fermat, "--lambda", "3,0,0,0,0,-3")
    assert json.loads(text) == {"mu": 9, "argmax": ["x0^3"]}


def test_usage_errors(fermat, tmp_path):
    assert call("mu", "--poly", fermat, "--lambda", "1,2")[0] == 2
    assert call("mu", "--poly", fermat, "--lambda", "1,1,1,1,1,1")[0] == 2
    assert call("mu", "--poly", fermat, "--lambda", "a,b")[0] == 2
    assert call("mu", "--poly", str(tmp_path / "nope"), "--lambda", "1,0,0,0,0,-1")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("strata", "list", "--dot")[0] == 2
    assert call("strata", "verify", "--id", "psi")[0] == 2
    assert call("euler", "--n", "2", "--d", "1", "--g", "0")[0] == 2


def test_destab(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("x0*x2^2\n")
    code, text = call("destab", "--support", str(p))
    assert code == 0 and json.loads(text)["result"] == "witness"
    p.write_text(FERMAT + "\n")
    code, text = call("destab", "--support", str(p), "--torus")
    assert code == 0 and json.loads(text)["result"] == "infeasible"
    p.write_text("x0^3 + x1\n")
    assert call("destab", "--support", str(p))[0] == 2


@pytest.mark.parametrize("strict,count", [(False, 8), (True, 10)])
def test_tables(strict, count):
    argv = ["tables"] + (["--strict"] if strict else [])
    code, text = call(*argv)
    res = json.loads(text)
    assert code == 0 and res["count"] == count
    assert all(r["label"] for r in res["records"])


def test_tables_golden_mismatch(data_copy):
    t1 = json.loads((data_copy / "table1.json").read_text())
    t1["rows"][0]["maximal_monomials"] = ["x0*x1^2"]
    (data_copy / "table1.json").write_text(json.dumps(t1))
    assert call("tables", "--data-dir", str(data_copy))[0] == 1


def test_classify(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("x0^3 + x1^3 + x2^3 + x3*x4*x5\n")
    code, text = call("classify", "--poly", str(p), "--point", "0,0,0,1,0,0")
    res = json.loads(text)
    assert code == 0 and res["tag"] == "Etilde(6)" and res["corank"] == 3


def test_strata_list_and_verify():
    code, text = call("strata", "list")
    rows = json.loads(text)
    assert code == 0 and len(rows) == 11
    code, text = call("strata", "verify", "--id", "τ", "--samples", "5")
    assert code == 0 and json.loads(text)[0]["ok"]


def test_strata_graph_dot():
    code, text = call("strata", "graph", "--no-verify", "--dot")
    assert code == 0 and text.startswith("digraph") and text.count("->") == 11


def test_euler_and_plethysm():
    code, text = call("euler", "--n", "5", "--d", "5", "--g", "0", "--brute-force")
    assert code == 0 and json.loads(text) == {"n": 5, "d": 5, "g": 0, "chi": 4, "brute_force": 4}
    assert call("euler", "--n", "5", "--d", "6", "--g", "1", "--tsv") == (0, "2\n")
    code, text = call("plethysm")
    assert code == 0 and json.loads(text)["balanced"]


def _verdicts(text):
    return {r["check"]: r["status"] for r in json.loads(text)["results"]}


def test_verify_all_is_reproducible():
    a = call("verify-all", "--skip-oracle", "--seed", "7")
    b = call("verify-all", "--skip-oracle", "--seed", "7")
    c = call("verify-all", "--skip-oracle", "--seed", "8")
    assert a == b
    assert a[0] == c[0] == 0
    assert _verdicts(a[1]) == _verdicts(c[1])
    assert _verdicts(a[1])["oracle"] == "skipped"
    assert set(_verdicts(a[1]).values()) == {"pass", "skipped"}


def test_verify_all_names_the_corrupted_table(data_copy):
    t1 = json.loads((data_copy / "table1.json").read_text())
    t1["rows"][0]["weights"] = [1, 1, 0, 0, -1, -1]
    (data_copy / "table1.json").write_text(json.dumps(t1))
    code, text = call("verify-all", "--skip-oracle", "--data-dir", str(data_copy))
    v = _verdicts(text)
    assert code == 1 and v["table1"] == "fail" and v["table2"] == "pass"


def test_missing_data_file(data_copy):
    (data_copy / "table2.json").unlink()
    assert call("tables", "--strict", "--data-dir", str(data_copy))[0] == 1
    code, text = call("verify-all", "--skip-oracle", "--data-dir", str(data_copy))
    assert code == 1 and _verdicts(text)["table2"] == "fail"
