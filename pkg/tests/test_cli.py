import json

import pytest

from structconst.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_hecke_json_and_text(capsys):
    code, out, _ = _run(capsys, "hecke", "--type", "A1", "--mu", "1,0", "--mu", "1,0")
    assert code == 0
    assert json.loads(out) == {"2,0": {"0": 1}, "1,1": {"0": 1, "1": 1}}
    code, out, _ = _run(capsys, "hecke", "--type", "C2", "--mu", "1,1", "--mu", "1,1", "--mu", "1,1", "--text")
    assert code == 0 and "q^5 - q" in out
    code, direct, _ = _run(capsys, "hecke", "--type", "C2", "--mu", "1,1", "--mu", "1,1", "--mu", "1,1", "--text", "--method", "direct")
    assert direct == out


def test_rep(capsys):
    code, out, _ = _run(capsys, "rep", "--type", "C2", "--mu", "1,1", "--mu", "1,1", "--mu", "1,1", "--lambda", "0,0")
    assert code == 0 and json.loads(out) == {"lambda": [0, 0], "multiplicity": 0}
    code, out, _ = _run(capsys, "rep", "--type", "A1", "--mu", "1,0", "--mu", "1,0")
    assert json.loads(out) == {"constituents": {"2,0": 1, "1,1": 1}, "dimension": 4}


def test_fiber_and_oracle(capsys):
    code, out, _ = _run(capsys, "fiber", "count", "--type", "A1", "--mu", "1,0", "--mu", "1,0", "--lambda", "1,1")
    assert code == 0 and json.loads(out) == {"0": 1, "1": 1}
    code, out, _ = _run(capsys, "fiber", "audit", "--type", "A1", "--mu", "1,0", "--mu", "1,0", "--lambda", "1,1")
    assert json.loads(out)["status"] == "PASS"
    code, out, _ = _run(capsys, "oracle", "--n", "2", "--q", "3", "--mu", "1,0", "--mu", "1,0", "--lambda", "1,1")
    assert code == 0 and json.loads(out)["count"] == 4


def test_rgon(capsys):
    code, out, _ = _run(capsys, "rgon", "--u", "2,2,2")
    assert code == 0 and json.loads(out)["legs"] == [1, 1, 1]
    code, _, err = _run(capsys, "rgon", "--u", "1,1,1")
    assert code == 2 and "ParityError" in err
    code, _, err = _run(capsys, "rgon", "--u", "5,1,1")
    assert code == 2 and "TriangleInequalityError" in err
    code, out, _ = _run(capsys, "rgon", "special", "--type", "C2", "--a", "2,2,2")
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_errors_exit_two(capsys):
    code, _, err = _run(capsys, "fiber", "count", "--type", "C2", "--mu", "1,1", "--lambda", "1,1")
    assert code == 2 and err.startswith("error: PreconditionError")
    code, _, err = _run(capsys, "oracle", "--n", "2", "--q", "7", "--mu", "1,0", "--lambda", "1,0")
    assert code == 2 and "CapabilityError" in err
    with pytest.raises(SystemExit):
        main(["rgon", "special", "--type", "C2"])


def test_verify_writes_report(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = _run(capsys, "verify", "examples", "--json", str(path))
    assert code == 0
    assert "examples" in out and "gate" in out
    blob = json.loads(path.read_text())
    assert blob["schema_version"] == 1 and blob["grid_seed"] == 20240611
    assert blob["summary"]["examples"] == {"PASS": 2, "FAIL": 0, "SKIPPED": 0}
    ids = [r["check_id"] for r in blob["reports"]["examples"]]
    assert ids == ["so5_example", "spin12_example"]


def test_verify_custom_grid(capsys, tmp_path):
    grid = {"version": 1, "seed": 3, "prv": {"count": 5, "types": ["A1"], "r_max": 2, "max_coeff": 1}}
    p = tmp_path / "grid.json"
    p.write_text(json.dumps(grid))
    code, out, _ = _run(capsys, "verify", "prv", "--grid", str(p))
    assert code == 0 and "PASS    5" in out
