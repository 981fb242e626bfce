"""CLI surface: exit codes, JSON round trips, determinism, parallel merge."""

import json

import pytest

from bqt.cli import main, parse_shape


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_shape():
    assert parse_shape("2,1") == (2, 1)
    assert parse_shape("") == ()
    assert parse_shape("0") == ()
    with pytest.raises(ValueError):
        parse_shape("1,2")
    with pytest.raises(ValueError):
        parse_shape("x")


def test_check_daha_poly_passes(capsys, tmp_path):
    out = tmp_path / "report.json"
    code, _, err = run(
        capsys,
        "check", "daha", "--module", "poly", "--n", "2", "--dmax", "2",
        "--jobs", "1", "--out", str(out),
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["status"] == "pass"
    assert len(doc["reports"]) == 11
    assert "PASS" in err


def test_check_invalid_shape_exits_2(capsys):
    code, _, err = run(
        capsys,
        "check", "daha", "--module", "murnaghan", "--shape", "1,2", "--n", "3",
        "--dmax", "1", "--jobs", "1",
    )
    assert code == 2
    assert "error" in err


def test_check_sign_flip_fails(capsys):
    code, _, _ = run(
        capsys,
        "check", "daha", "--module", "poly", "--n", "2", "--dmax", "1",
        "--demazure", "q-1", "--jobs", "1",
    )
    assert code == 1


def test_check_daha_murnaghan(capsys):
    code, _, _ = run(
        capsys,
        "check", "daha", "--module", "murnaghan", "--shape", "1", "--n", "3",
        "--dmax", "2", "--jobs", "1",
    )
    assert code == 0


def test_check_bqt_poly(capsys):
    code, out, _ = run(
        capsys,
        "check", "bqt", "--module", "poly", "--n", "3", "--kmax", "3", "--dmax", "3",
        "--jobs", "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    flavors = {r.get("flavor") for r in doc["reports"]}
    assert {0, 1, 2, 3} <= flavors


def test_check_compat(capsys):
    code, out, _ = run(
        capsys,
        "check", "compat", "--module", "murnaghan", "--shape", "1", "--n", "3",
        "--dmax", "1", "--jobs", "1",
    )
    assert code == 0
    doc = json.loads(out)
    ids = {r["relation_id"] for r in doc["reports"]}
    assert "precompat_kappa_pi" in ids


def test_reports_are_reproducible(capsys, tmp_path):
    args = [
        "check", "aux", "--module", "poly", "--n", "2", "--dmax", "2",
        "--jobs", "1", "--no-timing",
    ]
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, *args, "--out", str(f1))[0] == 0
    assert run(capsys, *args, "--out", str(f2))[0] == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_parallel_jobs_match_sequential(capsys, tmp_path):
    base = [
        "check", "daha", "--module", "poly", "--n", "2", "--dmax", "1", "--no-timing",
    ]
    f1, f2 = tmp_path / "seq.json", tmp_path / "par.json"
    assert run(capsys, *base, "--jobs", "1", "--out", str(f1))[0] == 0
    assert run(capsys, *base, "--jobs", "2", "--out", str(f2))[0] == 0
    assert f1.read_bytes() == f2.read_bytes()


def test_probabilistic_mode(capsys):
    code, out, _ = run(
        capsys,
        "check", "daha", "--module", "poly", "--n", "2", "--dmax", "1",
        "--probabilistic", "--seed", "3", "--jobs", "1",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["mode"] == "probabilistic"
    assert all(r["mode"] == "probabilistic" for r in doc["reports"])


def test_act_daha_word(capsys, tmp_path):
    vec = tmp_path / "vec.json"
    vec.write_text(json.dumps({"rank": 2, "entries": [{"exponents": [0, 0], "coeff": "1"}]}))
    code, out, _ = run(
        capsys,
        "act", "--module", "poly", "--n", "2",
        "--word", '[["X",1]]', "--in", str(vec),
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"] == [{"exponents": [1, 0], "coeff": "1"}]


def test_act_flavored_word(capsys, tmp_path):
    vec = tmp_path / "vec.json"
    vec.write_text(
        json.dumps(
            {
                "flavor": 0,
                "vector": {"rank": 2, "entries": [{"exponents": [0, 0], "coeff": "1"}]},
            }
        )
    )
    code, out, _ = run(
        capsys,
        "act", "--module", "poly", "--n", "2",
        "--word", '[["dplus"]]', "--in", str(vec),
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["flavor"] == 1
    assert doc["vector"]["entries"] == [{"exponents": [1, 0], "coeff": "1"}]


def test_act_dminus_example(capsys, tmp_path):
    vec = tmp_path / "vec.json"
    vec.write_text(
        json.dumps(
            {
                "flavor": 1,
                "vector": {"rank": 2, "entries": [{"exponents": [1, 0], "coeff": "1"}]},
            }
        )
    )
    code, out, _ = run(
        capsys,
        "act", "--module", "poly", "--n", "2",
        "--word", '[["dminus"]]', "--in", str(vec),
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["flavor"] == 0
    assert doc["vector"]["entries"] == [
        {"exponents": [1, 0], "coeff": "q - 1"},
        {"exponents": [0, 1], "coeff": "q - 1"},
    ]


def test_limit_table_and_dims(capsys, tmp_path):
    out = tmp_path / "table.json"
    code, _, _ = run(
        capsys,
        "limit", "--seq", "pol", "--kmax", "1", "--dmax", "3", "--out", str(out),
    )
    assert code == 0
    table = json.loads(out.read_text())
    k0 = [c["dim"] for c in table["cells"] if c["k"] == 0]
    assert k0 == [1, 1, 2, 3]
    code, text, _ = run(capsys, "dims", "--seq", "pol", "--kmax", "1", "--dmax", "3")
    assert code == 0
    assert "k\\d" in text


def test_limit_murnaghan_shape(capsys, tmp_path):
    out = tmp_path / "table.json"
    code, _, _ = run(
        capsys,
        "limit", "--seq", "mur", "--shape", "1", "--kmax", "1", "--dmax", "2",
        "--out", str(out),
    )
    assert code == 0
    table = json.loads(out.read_text())
    assert table["sequence"] == "murnaghan"
