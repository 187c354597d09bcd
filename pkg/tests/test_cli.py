import json

import pytest

from krsums.cli import (
    InputError, canonical_json, instance_from_json, instance_to_json, mn_sweep, parse_grid, run,
)
from krsums.algebra import parse_algebra


def _run(capsys, argv):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_msum_example(capsys):
    code, out, _ = _run(capsys, ["msum", "--algebra", "A1", "--k", "2", "--lambda", "0", "--n", "1:4,0"])
    assert code == 0
    assert json.loads(out)["M"] == 2


def test_nsum_json_instance(capsys):
    inst = '{"algebra": "A2", "k": 1, "lambda": [0, 1], "n": {"1": [2], "2": [0]}}'
    code, out, _ = _run(capsys, ["nsum", "--instance", inst])
    assert code == 0 and json.loads(out)["N"] == 1


def test_verify_mn_g2(capsys):
    code, out, _ = _run(capsys, ["verify-mn", "--algebra", "G2", "--k", "1", "--max-n", "2", "--max-lambda", "2"])
    rep = json.loads(out)
    assert code == 0 and rep["failures"] == 0 and rep["checked"] > 0


def test_qsystem_sl2(capsys):
    code, out, _ = _run(capsys, ["qsystem", "--algebra", "A1", "--levels", "3"])
    assert code == 0
    assert "t^3 - 2*t" in out


def test_verify_statement(capsys):
    code, out, _ = _run(capsys, ["verify", "--statement", "gfactorization", "--algebra", "A2", "--k", "2",
                                 "--lambda", "1,0", "--n", "1:1,0", "--n", "2:0,1", "--window", "4"])
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and rep["checked_coefficients"] == 81


def test_ps_check(capsys):
    code, out, _ = _run(capsys, ["ps-check", "--algebra", "B2", "--k", "1", "--lambda", "0,1",
                                 "--n", "1:1", "--n", "2:1,0", "--bound", "3"])
    rep = json.loads(out)
    assert code == 0 and rep["status"] == "pass" and len(rep["checks"]) >= 2


def test_deformed(capsys):
    code, out, _ = _run(capsys, ["deformed", "--algebra", "G2", "--levels", "1", "--verify-recursion"])
    assert code == 0


@pytest.mark.parametrize("argv,field", [
    (["msum", "--algebra", "A1", "--k", "2", "--lambda", "0", "--n", "1:4"], "--n"),
    (["msum", "--algebra", "Q7", "--k", "1", "--lambda", "0"], "--algebra"),
    (["msum", "--instance", '{"algebra": "B2", "k": 1, "lambda": [0, 0], "n": {"2": [1]}}'], "/n/2"),
    (["msum", "--instance", '{"algebra": "B2", "k": 0, "lambda": [0, 0], "n": {}}'], "/k"),
])
def test_bad_input_exits_2(capsys, argv, field):
    code, _, err = _run(capsys, argv)
    assert code == 2
    assert json.loads(err)["field"] == field


def test_unknown_flag_exits_2(capsys):
    code, _, _ = _run(capsys, ["msum", "--bogus"])
    assert code == 2


def test_failed_identity_exits_1(capsys, monkeypatch):
    from krsums import genfun
    from krsums.arith import RationalFunction as RF
    orig = genfun.factorized_form
    monkeypatch.setattr(genfun, "factorized_form", lambda t, i: orig(t, i) * RF(2))
    code, out, _ = _run(capsys, ["verify", "--statement", "Zkone", "--algebra", "A1", "--k", "1",
                                 "--lambda", "0", "--n", "1:1"])
    assert code == 1 and "first_failure" in json.loads(out)


def test_json_round_trip_is_byte_identical():
    text = canonical_json({"algebra": "C3", "k": 2, "lambda": [1, 0, 2],
                           "n": {"1": [0, 1, 0, 0], "2": [1, 0, 0, 0], "3": [0, 1]}})
    assert canonical_json(instance_to_json(instance_from_json(json.loads(text)))) == text


def test_instance_pointer_errors():
    with pytest.raises(InputError) as e:
        instance_from_json({"algebra": "A2", "k": 1, "lambda": [0], "n": {}})
    assert e.value.field == "/lambda"
    with pytest.raises(InputError) as e:
        instance_from_json({"algebra": "A2", "k": 1, "lambda": [0, 0]})
    assert e.value.field == "/n"


def test_sweep_parallel_matches_serial():
    spec = parse_algebra("B2")
    assert mn_sweep(spec, 1, 2, 2, jobs=1) == mn_sweep(spec, 1, 2, 2, jobs=2)


def test_parse_grid():
    got = [(s.name, k) for s, k in parse_grid("A1:1-3,G2:1")]
    assert got == [("A1", 1), ("A1", 2), ("A1", 3), ("G2", 1)]
    with pytest.raises(InputError):
        parse_grid("A1:x")


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = run(["nsum", "--algebra", "A1", "--k", "1", "--lambda", "0", "--n", "1:2", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["N"] == 1 and "version" in rep
