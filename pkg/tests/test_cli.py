import io
import json
import subprocess
import sys

import pytest

from semiprimal.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call("--json", *argv)
    return code, json.loads(out), err


def test_check_verdicts():
    code, doc, _ = call_json("check", "semiprimal", "lukasiewicz4")
    assert code == 0 and doc["level"] == "semi-primal"
    code, doc, _ = call_json("check", "semiprimal", "R_5_1_17", "--route", "discriminator-route")
    assert code == 0 and doc["level"] == "quasi-primal-only"
    assert doc["witness"]["kind"] == "internal-isomorphism"
    code, doc, _ = call_json("check", "primal", "post3")
    assert doc["level"] == "primal"
    code, doc, _ = call_json("check", "quasiprimal", "godel3")
    assert doc["level"] == "none"


def test_json_flag_after_subcommand():
    code, out, _ = call("subalgebras", "lukasiewicz6", "--json")
    assert code == 0 and len(json.loads(out)["subuniverses"]) == 4


def test_catalog_and_homs(tmp_path):
    code, doc, _ = call_json("catalog", "list")
    assert code == 0 and any(e["key"] == "R_5_1_17" for e in doc["entries"])
    path = tmp_path / "l3.json"
    code, _, _ = call("catalog", "build", "lukasiewicz", "3", "--out", str(path))
    assert code == 0 and path.exists()
    code, doc, _ = call_json("homs", str(path), "lukasiewicz6")
    assert doc["count"] == 1


def test_member_commands(tmp_path):
    member = tmp_path / "m.json"
    member.write_text(json.dumps({"base": "lukasiewicz4", "factors": [1, 2]}))
    code, doc, _ = call_json("skeleton", str(member))
    assert code == 0 and doc["atoms"] == 2
    code, doc, _ = call_json("dual", str(member))
    assert doc["v"] == [1, 2]
    code, doc, _ = call_json("roundtrip", "algebra", str(member))
    assert doc["verified"]
    code, doc, _ = call_json("adjoint-check", str(member))
    assert doc["transpose_counts"] == {"0": 1, "1": 2, "2": 4}
    code, doc, _ = call_json("quotient", str(member), "--sub", "1")
    assert doc["quotient"]["factors"] == [1]
    space = tmp_path / "x.json"
    space.write_text(json.dumps({"base": "lukasiewicz4", "points": 3, "v": [0, 1, 2]}))
    code, doc, _ = call_json("roundtrip", "space", str(space))
    assert code == 0 and sorted(doc["iso"]) == [0, 1, 2]
    code, doc, _ = call_json("roundtrip", "algebra", "lukasiewicz2", "--base", "lukasiewicz4")
    assert code == 0


def test_boolpower_and_experiments():
    code, doc, _ = call_json("boolpower", "lukasiewicz2", "--atoms", "2")
    assert code == 0 and doc["size"] == 9
    code, doc, _ = call_json("experiments", "murskii", "--chain", "2", "--samples", "30", "--seed", "1")
    assert code == 0 and doc["sample_count"] == 30
    code, doc, _ = call_json("experiments", "fuzz", "--chain", "3", "--samples", "20")
    assert code == 0 and doc["disagreements"] == 0


def test_input_errors_exit_2(tmp_path):
    code, _, err = call("check", "semiprimal", "no_such_algebra")
    assert code == 2 and "catalog key" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"size": 2, "ops": [{"name": "f", "arity": 1}]}))
    code, _, err = call("check", "semiprimal", str(bad))
    assert code == 2 and "table" in err
    member = tmp_path / "m.json"
    member.write_text(json.dumps({"factors": [1]}))
    code, _, err = call("skeleton", str(member))
    assert code == 2 and "--base" in err
    code, _, err = call("quotient", "lukasiewicz2", "--base", "lukasiewicz4", "--sub", "9")
    assert code == 2 and "--sub" in err
    assert call("check")[0] == 2


def test_property_violation_exits_1(monkeypatch):
    from semiprimal import primality

    monkeypatch.setitem(primality._ROUTE_FUNCS, "T-route", lambda A, R, sq: (False, {"kind": "x"}))
    code, out, err = call("--json", "check", "semiprimal", "lukasiewicz3")
    assert code == 1 and json.loads(out)["kind"] == "RouteDisagreement"


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "semiprimal.cli", "--json", "check", "semiprimal", "cornish3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["level"] == "semi-primal"


@pytest.mark.parametrize("argv", [["--help"], ["check", "--help"]])
def test_help(argv):
    assert call(*argv)[0] == 0


def test_documented_invocations(tmp_path):
    l4 = tmp_path / "lukasiewicz4.json"
    call("catalog", "build", "lukasiewicz4", "--out", str(l4))
    code, doc, _ = call_json("check", "semiprimal", str(l4), "--route", "all")
    assert code == 0 and doc["level"] == "semi-primal" and doc["witness"] is None
    code, out, _ = call("check", "semiprimal", "R_5_1_17")
    assert code == 0 and "quasi-primal-only" in out and "internal-isomorphism" in out
    member = tmp_path / "L2xL4.json"
    member.write_text(json.dumps({"factors": [1, 2]}))
    code, out, _ = call("roundtrip", "algebra", str(member), "--base", str(l4))
    assert code == 0 and out.strip() == "iso verified"
