import json

import pytest

from ortho_hecke.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_classify_eps_v(tmp_path, capsys):
    basis = write(tmp_path, "b.json", [[0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]])
    code, out, _ = run(capsys, "classify", "--field", "q", "--r", "3", "--basis", basis)
    rep = json.loads(out)
    assert code == 0
    assert {k: rep[k] for k in ("i", "torsion_degree", "component")} == {"i": 0, "torsion_degree": 3, "component": 0}


def test_classify_reads_library_json(tmp_path, capsys):
    from ortho_hecke.dual_module import Ambient, make_submodule
    from ortho_hecke.exact_linalg import Field
    L = make_submodule(Ambient(2, Field(5)), [[1, 2, 0, 0], [0, 0, 1, 2]])
    code, out, _ = run(capsys, "classify", "--basis", write(tmp_path, "L.json", L.to_json()))
    assert code == 0 and json.loads(out)["i"] == 1


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--field", "fp:3", "--r", "3")
    strata = json.loads(out)["strata"]
    assert code == 0
    assert [{"i": s["i"], "count": s["count"]} for s in strata] == [{"i": 0, "count": 1}, {"i": 1, "count": 4}]


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--field", "fp:3", "--r", "2", "--csv")
    assert code == 0 and out.splitlines()[0] == "i,count,predicted,component"


def test_hecke_example(tmp_path, capsys):
    lag = write(tmp_path, "L.json", [[1, 0, 0, 0], [0, 0, 1, 0]])
    code, out, _ = run(capsys, "hecke", "--degrees", "0,0", "--lagrangian", lag)
    rep = json.loads(out)
    assert code == 0
    assert rep["output_type"] == [1, -1] and rep["w2_in"] == 0 and rep["w2_out"] == 1
    assert rep["reciprocity_ok"] is True


def test_curve(tmp_path, capsys):
    plane = write(tmp_path, "F.json", [[1, 0, 0, 0], [0, 1, 0, 0]])
    code, out, _ = run(capsys, "curve", "--degrees", "1,0,0,-1", "--plane", plane, "--samples", "0,1,2,inf")
    res = json.loads(out)
    assert code == 0
    assert res[-1]["sample"] == "inf" and res[-1]["type"] == [1, 0, 0, -1]
    assert res[0]["type"] == [2, 1, -1, -2]


def test_tangent(tmp_path, capsys):
    lag = write(tmp_path, "L.json", [[1, 0, 0, 0], [0, 0, 1, 0]])
    code, out, _ = run(capsys, "tangent", "--field", "fp:3", "--basis", lag)
    rep = json.loads(out)
    assert code == 0 and rep["dim_hom0"] == rep["expected_dim"] == 2 and rep["skew_dim"] == 0


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "prop3_3", "--trials", "2", "--seed", "1", "--max-rank", "3")
    assert code == 0 and json.loads(out)["ok"] is True


@pytest.mark.parametrize("argv", [
    ["hecke", "--degrees", "1,0", "--lagrangian", "missing.json"],
    ["census", "--field", "q", "--r", "2"],
    ["verify", "--suite", "prop3_3", "--trials", "0"],
    ["hecke", "--degrees", "a,b", "--lagrangian", "x.json"],
])
def test_input_errors_exit_2(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_not_eps_stable_exit_2(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", [[1, 0, 0, 0]])
    code, _, err = run(capsys, "classify", "--basis", bad)
    assert code == 2 and "epsilon" in err


def test_not_lagrangian_exit_2(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", [[1, 1, 0, 0], [0, 0, 1, 1]])
    code, _, err = run(capsys, "hecke", "--degrees", "0,0", "--lagrangian", bad)
    assert code == 2 and "lagrangian" in err


def test_bad_json_reports_position(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("[[1, 0,\n")
    code, _, err = run(capsys, "classify", "--basis", str(p))
    assert code == 2 and "line" in err
