import json

import pytest

from varchenko.cli import main, parse_expected_product
from varchenko.files import bundled_text
from varchenko.polyring import Polynomial, VarId
from varchenko.geometry import PLUS, MINUS

PAPER_PRODUCT = "(1 - h2^+ h2^-)^2 (1 - h3^+ h3^-)^2 (1 - h4^+ h4^-)^3"


@pytest.fixture
def data_dir(tmp_path):
    for name in (
        "r1.arr",
        "crossing.arr",
        "generic3.arr",
        "two_pairs.arr",
        "two_pairs_apartment.vmx",
    ):
        (tmp_path / name).write_text(bundled_text(name))
    (tmp_path / "empty.arr").write_text("dim 2\n")
    (tmp_path / "broken.arr").write_text("dim 2\n1 0 zzz\n")
    (tmp_path / "one.vmx").write_text("vmatrix 1 1\n1\n")
    (tmp_path / "r1.vmx").write_text("vmatrix 2 1\n1\n1 * h1^-\n1 * h1^+\n1\n")
    return tmp_path


def test_faces_text(data_dir, capsys):
    assert main(["faces", str(data_dir / "r1.arr")]) == 0
    out = capsys.readouterr().out
    assert "3 faces, 2 chambers" in out


def test_faces_json(data_dir, capsys):
    assert main(["faces", str(data_dir / "crossing.arr"), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    assert len(payload["faces"]) == 9
    assert len(payload["chambers"]) == 4


def test_faces_empty_arrangement(data_dir, capsys):
    assert main(["faces", str(data_dir / "empty.arr"), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["faces"]) == 1


def test_parse_error_exits_2(data_dir, capsys):
    assert main(["faces", str(data_dir / "broken.arr")]) == 2
    assert "line 2" in capsys.readouterr().err


def test_missing_file_exits_2(data_dir, capsys):
    assert main(["faces", str(data_dir / "nope.arr")]) == 2


def test_varchenko_r1(data_dir, capsys):
    assert main(["varchenko", str(data_dir / "r1.arr")]) == 0
    out = capsys.readouterr().out
    assert "determinant: 1 - 1 * h1^+ h1^-" in out
    assert "verified: True" in out


def test_varchenko_two_pairs_apartment(data_dir, capsys):
    code = main(
        [
            "varchenko",
            str(data_dir / "two_pairs.arr"),
            "--subset",
            "0",
            "--apartment-signs",
            "-",
            "--json",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["apartment"] == "H1^-"
    assert payload["verified"] is True
    assert payload["factored"] == (
        "(1 - 1 * h2^+ h2^-)^2 (1 - 1 * h3^+ h3^-)^2 (1 - 1 * h4^+ h4^-)^3"
    )


def test_varchenko_infeasible_apartment_exits_2(data_dir, capsys):
    code = main(
        [
            "varchenko",
            str(data_dir / "two_pairs.arr"),
            "--subset",
            "1,2",
            "--apartment-signs",
            "+,-",
        ]
    )
    assert code == 2
    assert "apartment" in capsys.readouterr().err


def test_varchenko_subset_flag_validation(data_dir, capsys):
    assert main(
        ["varchenko", str(data_dir / "r1.arr"), "--subset", "0"]
    ) == 2
    assert main(
        ["varchenko", str(data_dir / "r1.arr"), "--subset", "7",
         "--apartment-signs", "+"]
    ) == 2


def test_varchenko_modular(data_dir, capsys):
    code = main(
        [
            "varchenko",
            str(data_dir / "crossing.arr"),
            "--mode",
            "modular",
            "--seed",
            "42",
            "--trials",
            "10",
            "--json",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["trials"]) == 10
    assert all(t["match"] for t in payload["trials"])


def test_varchenko_modular_jobs_deterministic(data_dir, capsys):
    args = [
        "varchenko",
        str(data_dir / "crossing.arr"),
        "--mode",
        "modular",
        "--seed",
        "9",
        "--json",
    ]
    assert main(args) == 0
    first = json.loads(capsys.readouterr().out)
    assert main(args + ["--jobs", "3"]) == 0
    second = json.loads(capsys.readouterr().out)
    assert first["trials"] == second["trials"]


def test_env_seed_used_as_default(data_dir, capsys, monkeypatch):
    monkeypatch.setenv("VARCHENKO_SEED", "123")
    args = [
        "varchenko",
        str(data_dir / "crossing.arr"),
        "--mode",
        "modular",
        "--json",
    ]
    assert main(args) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 123


def test_verify_all_r1(data_dir, capsys):
    assert main(["verify", str(data_dir / "r1.arr"), "--all"]) == 0
    out = capsys.readouterr().out
    assert "0 failed" in out


def test_verify_selected_checks(data_dir, capsys):
    code = main(
        [
            "verify",
            str(data_dir / "crossing.arr"),
            "--checks",
            "witt,factorization",
            "--json",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    names = [c["name"] for c in payload["checks"]]
    assert names == ["witt_identities", "factorization"]


def test_verify_unknown_check_exits_2(data_dir, capsys):
    assert main(
        ["verify", str(data_dir / "r1.arr"), "--checks", "bogus"]
    ) == 2


def test_verify_all_apartments(data_dir, capsys):
    code = main(
        [
            "verify",
            str(data_dir / "crossing.arr"),
            "--checks",
            "factorization",
            "--all-apartments",
            "--json",
        ]
    )
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    # subsets: {} -> 1, {0} -> 2, {1} -> 2, {0,1} -> 4 apartments
    assert len(payload["checks"]) == 9
    assert all(c["status"] == "pass" for c in payload["checks"])


def test_verify_json_is_deterministic(data_dir, capsys):
    args = ["verify", str(data_dir / "generic3.arr"), "--all", "--json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first


def test_detfile_bundled_matrix(data_dir, capsys):
    code = main(
        [
            "detfile",
            str(data_dir / "two_pairs_apartment.vmx"),
            "--expected",
            PAPER_PRODUCT,
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "verified: True" in out


def test_detfile_wrong_expected_exits_1(data_dir, capsys):
    code = main(
        [
            "detfile",
            str(data_dir / "two_pairs_apartment.vmx"),
            "--expected",
            "(1 - h2^+ h2^-)^6",
        ]
    )
    assert code == 1


def test_detfile_trivial_matrices(data_dir, capsys):
    assert main(["detfile", str(data_dir / "one.vmx")]) == 0
    assert "determinant: 1" in capsys.readouterr().out
    assert main(["detfile", str(data_dir / "r1.vmx")]) == 0
    assert "determinant: 1 - 1 * h1^+ h1^-" in capsys.readouterr().out


def test_detfile_malformed_exits_2(data_dir, tmp_path, capsys):
    bad = tmp_path / "bad.vmx"
    bad.write_text("vmatrix 2 1\n1\n1 * h1^+\n")
    assert main(["detfile", str(bad)]) == 2


def test_parse_expected_product():
    factored = parse_expected_product(PAPER_PRODUCT, 8)
    one = Polynomial.one(8)

    def pair(h):
        return Polynomial.variable(8, VarId(h, PLUS)) * Polynomial.variable(
            8, VarId(h, MINUS)
        )

    assert factored.expand() == (
        (one - pair(1)) ** 2 * (one - pair(2)) ** 2 * (one - pair(3)) ** 3
    )
    with pytest.raises(ValueError):
        parse_expected_product("garbage", 8)
    with pytest.raises(ValueError):
        parse_expected_product("(1 - h1^+ h1^-)^2 junk", 8)
