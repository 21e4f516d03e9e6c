import json
import math

import pytest

from rcforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def zeta1_sq(tmp_path):
    p = tmp_path / "f.json"
    p.write_text(json.dumps({"terms": [{"i": 2, "j": 0, "re": "1/1", "im": "0/1"}]}))
    return str(p)


@pytest.mark.parametrize("ell, expected", [(0, ["1"]), (2, ["1", "-4", "1"])])
def test_rc_coeffs(capsys, ell, expected):
    code, out, _ = run(capsys, "rc", "coeffs", "--l1", "1", "--l2", "1", "--ell", str(ell))
    assert code == 0
    assert json.loads(out)["rows"][0]["coeffs"] == expected


def test_rc_apply(capsys, zeta1_sq):
    code, out, _ = run(capsys, "rc", "apply", "--l1", "1", "--l2", "1", "--ell", "1", "--poly", zeta1_sq)
    assert code == 0
    result = json.loads(out)["rows"][0]["result"]
    assert result == {"coeffs": [{"re": "0/1", "im": "0/1"}, {"re": "2/1", "im": "0/1"}]}


def test_exit_codes(capsys, tmp_path, zeta1_sq):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "rc", "apply", "--l1", "1", "--l2", "1", "--ell", "1", "--poly", str(bad))[0] == 3
    missing = tmp_path / "missing.json"
    assert run(capsys, "rc", "apply", "--l1", "1", "--l2", "1", "--ell", "1", "--poly", str(missing))[0] == 3
    bad.write_text(json.dumps({"terms": [{"i": 1, "re": "1/1"}]}))
    assert run(capsys, "rc", "apply", "--l1", "1", "--l2", "1", "--ell", "1", "--poly", str(bad))[0] == 3
    assert run(capsys, "rc", "coeffs", "--l1", "0", "--l2", "1", "--ell", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "thm21", "--grid", "a,b"])
    assert exc.value.code == 2
    assert run(capsys, "verify", "covariance", "--level", "kernel", "--convention", "printed")[0] == 1
    assert run(capsys, "constants", "--l1", "1", "--l2", "2", "--lmax", "2")[0] == 2


def test_rc_apply_needs_poly():
    with pytest.raises(SystemExit) as exc:
        main(["rc", "apply", "--l1", "1", "--l2", "1", "--ell", "1"])
    assert exc.value.code == 2


def test_verify_ud_and_jacobi(capsys):
    code, out, _ = run(capsys, "verify", "ud")
    assert code == 0 and json.loads(out)["pass"] is True
    code, out, _ = run(capsys, "verify", "jacobi", "--grid", "2,2,4")
    rep = json.loads(out)
    assert code == 0
    ratios = [(r["ell"], r["ratio"]) for r in rep["rows"] if "ell" in r]
    assert all(ratio == ("1/1" if ell % 2 == 0 else "-1/1") for ell, ratio in ratios)


def test_verify_reconstruction_small(capsys):
    code, out, _ = run(capsys, "verify", "thm21", "--grid", "2,1,2", "--tol", "1e-9", "--seed", "7")
    rep = json.loads(out)
    assert code == 0
    assert rep["params"]["grid"] == [2, 1, 2]
    assert {"nodes_used", "est_error", "pass"} <= set(rep["rows"][0])


def test_verify_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        _, out, _ = run(capsys, "verify", "lemma32", "--seed", "3")
        d = json.loads(out)
        d.pop("wall_time_ms")
        outs.append(json.dumps(d, sort_keys=True))
    assert outs[0] == outs[1]


def test_constants_csv_and_json(capsys):
    code, out, _ = run(capsys, "constants", "--l1", "2", "--l2", "2", "--lmax", "5")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "ell,c,r,a_squared,a_float"
    assert lines[1].split(",")[:4] == ["0", "1/6", "1/2*pi^-1", "12/1*pi^1"]
    assert len(lines) == 7
    code, out, _ = run(capsys, "constants", "--l1", "1", "--l2", "1", "--lmax", "1", "--format", "json")
    rows = json.loads(out)["rows"]
    assert rows[1]["a_squared"] == "24/1*pi^1"


def test_radius(capsys):
    code, out, _ = run(capsys, "radius", "--seq", "unit", "--L", "100")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["radius_zero"] and row["summary"] == "radius ≈ 0"
    code, out, _ = run(capsys, "radius", "--seq", "thm33", "--l1", "1", "--l2", "1", "--L", "500")
    assert abs(json.loads(out)["rows"][0]["inverse_radius"] - 1) <= 0.05


def test_genop(capsys, zeta1_sq):
    code, out, _ = run(capsys, "genop", "eval", "--l1", "1", "--l2", "1", "--poly", zeta1_sq, "--z", "0,1", "--t", "0.1")
    row = json.loads(out)["rows"][0]
    assert code == 0
    assert row["value"]["re"] == pytest.approx(-0.99, abs=1e-9)
    assert row["value"]["im"] == pytest.approx(0.2, abs=1e-9)
    code, out, _ = run(capsys, "genop", "taylor", "--l1", "1", "--l2", "1", "--poly", zeta1_sq, "--z", "1j",
                       "--K", "3", "--rho-t", "0.3")
    coeffs = json.loads(out)["rows"][0]["coeffs"]
    assert coeffs[1]["im"] == pytest.approx(2, abs=1e-8)
    # unitary normalisation: the t^0 coefficient is a_0 f(z, z) with a_0^2 = 12 pi at weights (2, 2)
    code, out, _ = run(capsys, "genop", "taylor", "--l1", "2", "--l2", "2", "--poly", zeta1_sq, "--z", "1",
                       "--K", "2", "--seq", "unitary", "--L", "4")
    assert code == 0
    c0 = json.loads(out)["rows"][0]["coeffs"][0]
    assert c0["re"] == pytest.approx(math.sqrt(12 * math.pi), rel=1e-8)
    code, _, err = run(capsys, "genop", "eval", "--l1", "1", "--l2", "1", "--poly", zeta1_sq, "--z", "0", "--t", "0.6")
    assert code == 2 and "must be <" in err


def test_aliases_match_descriptive_names(capsys):
    results = []
    for conv in ("paper", "printed"):
        code, out, _ = run(capsys, "verify", "lemma22", "--convention", conv)
        d = json.loads(out)
        d.pop("wall_time_ms")
        results.append((code, d["rows"]))
    assert results[0] == results[1] and results[0][0] == 1
    a = json.loads(run(capsys, "radius", "--seq", "thm33", "--L", "60")[1])["rows"]
    b = json.loads(run(capsys, "radius", "--seq", "closed_form", "--L", "60")[1])["rows"]
    assert a == b
    code, out, _ = run(capsys, "verify", "covariance", "--level", "prop51")
    assert code == 0 and json.loads(out)["command"] == "verify covariance"
