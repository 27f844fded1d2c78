import json

import pytest

from src.cli import RunConfig, main
from src.errors import UsageError
from src.generators import decagon_sign_matrix
from src.utils.io import format_sign_rows

TWISTED_CUBIC = "2 4\n1 1 1 1\n0 1 2 3\n"


@pytest.fixture
def cubic_file(tmp_path):
    path = tmp_path / "cubic.txt"
    path.write_text(TWISTED_CUBIC)
    return str(path)


def test_kernel(cubic_file, capsys):
    assert main(["kernel", cubic_file]) == 0
    out = capsys.readouterr().out
    assert out.startswith("4 2\n")
    assert "g = 1" in out


def test_kernel_json(cubic_file, capsys):
    assert main(["kernel", cubic_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["r"] == 2 and payload["g"] == 1 and len(payload["basis"]) == 2


def test_kernel_not_homogeneous_with_unmixed_columns(tmp_path, capsys):
    path = tmp_path / "nh.txt"
    path.write_text("1 3\n1 -1 0\n")
    assert main(["kernel", str(path)]) == 4
    assert main(["kernel", str(path), "--no-homogeneity-check", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["r"] == 2 and len(payload["basis"]) == 2


def test_kernel_codimension_zero(tmp_path, capsys):
    path = tmp_path / "id.txt"
    path.write_text("2 2\n1 0\n0 1\n")
    assert main(["kernel", str(path)]) == 0
    assert "codimension 0" in capsys.readouterr().out


def test_malformed_file(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 4\n1 1 1\n0 1 2 3\n")
    assert main(["kernel", str(path)]) == 2


def test_not_homogeneous(tmp_path):
    path = tmp_path / "nh.txt"
    path.write_text("1 2\n1 2\n")
    assert main(["kernel", str(path)]) == 4
    assert main(["kernel", str(path), "--no-homogeneity-check"]) == 0


def test_circuits(cubic_file, capsys):
    assert main(["circuits", cubic_file]) == 0
    out = capsys.readouterr().out
    assert "4 circuits" in out
    assert "{1,2,3}" in out and "x1*x3 - x2^2" in out


def test_circuits_codimension_zero(tmp_path, capsys):
    path = tmp_path / "id.txt"
    path.write_text("2 2\n1 0\n0 1\n")
    assert main(["circuits", str(path), "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == []


def test_ci_check_signs(tmp_path, capsys):
    path = tmp_path / "decagon.signs"
    path.write_text(format_sign_rows(decagon_sign_matrix().entries))
    assert main(["ci-check", "--signs", str(path)]) == 0
    assert "complete intersection: yes" in capsys.readouterr().out


def test_ci_check_signs_violation(tmp_path, capsys):
    path = tmp_path / "mixed.signs"
    path.write_text("+ + +\n- - -\n")
    assert main(["ci-check", "--signs", str(path)]) == 10
    assert "witness: rows {1,2} x cols {1,2,3}" in capsys.readouterr().out


def test_ci_check_basis(cubic_file, tmp_path, capsys):
    good = tmp_path / "good.txt"
    good.write_text("4 2\n2 0\n-4 1\n2 -2\n0 1\n")
    assert main(["ci-check", cubic_file, "--basis", str(good)]) == 0
    assert "index g = 2" in capsys.readouterr().out
    bad = tmp_path / "bad.txt"
    bad.write_text("4 2\n1 0\n-1 1\n0 -2\n0 1\n")
    assert main(["ci-check", cubic_file, "--basis", str(bad)]) == 3


def test_ci_check_needs_one_source(cubic_file):
    assert main(["ci-check", cubic_file]) == 2


def test_search_curve(capsys):
    assert main(["search", "--family", "curve", "--a", "0,1,2,3"]) == 0
    out = capsys.readouterr().out
    assert "verdict: found" in out and "x1*x3 - x2^2" in out


def test_search_json(capsys):
    assert main(["search", "--family", "curve", "--a", "0,1,2,3", "--mode", "first-found", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "found"
    assert payload["counters"]["tested"] == 1


def test_search_cyclic14_exhausts():
    assert main(["search", "--family", "cyclic", "--r", "3", "--n", "14"]) == 11


def test_search_budget():
    assert main(["search", "--family", "cyclic", "--r", "3", "--n", "14", "--budget", "10"]) == 12


def test_search_seed_supports(capsys):
    args = ["search", "--family", "polygon", "--n", "10", "--mode", "first-found",
            "--seed-supports", "1,2,3,4;1,2,4,9;1,4,8,9;5,6,7,10;1,3,6,8;3,5,6,10;6,7,8,10"]
    assert main(args) == 0
    assert "tested: 1" in capsys.readouterr().out


def test_two_inputs_is_a_usage_error(cubic_file):
    assert main(["kernel", cubic_file, "--family", "polygon", "--n", "5"]) == 2


def test_gen_cyclic(capsys):
    assert main(["gen", "--family", "cyclic", "--m", "2", "--t", "1,2,3,4"]) == 0
    assert capsys.readouterr().out == "2 4\n1 1 1 1\n1 2 3 4\n"


def test_gen_gale(tmp_path):
    out = tmp_path / "gale.txt"
    assert main(["gen", "--family", "curve", "--a", "0,1,3", "--gale", "--out", str(out)]) == 0
    assert out.read_text() == "3 1\n2\n-3\n1\n"


def test_gen_gale_needs_a_curve():
    assert main(["gen", "--family", "polygon", "--n", "5", "--gale"]) == 2


def test_bound(capsys):
    assert main(["bound", "--threshold", "2"]) == 0
    assert "n >= 22" in capsys.readouterr().out
    assert main(["bound", "--eval", "2", "22", "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"d": 2, "n": 22, "lhs": 7315, "rhs": 7220, "holds": True}
    assert main(["bound", "--codim3", "3"]) == 0
    assert "n >= 14" in capsys.readouterr().out


def test_bound_probe(capsys):
    assert main(["bound", "--probe", "cyclic", "--param", "3", "--n-range", "6", "7", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [r["verdict"] for r in rows] == ["found", "found"]


def test_bound_probe_decagon(capsys):
    assert main(["bound", "--probe", "polygon", "--param", "2", "--n-range", "10", "10", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["verdict"] == "found"


def test_bound_without_a_question():
    assert main(["bound"]) == 2


def test_verify_paper_only_bounds(capsys):
    assert main(["verify-paper", "--only", "bounds,signs", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert {r["group"] for r in rows} == {"bounds", "signs"}
    assert all(r["passed"] for r in rows)


def test_verify_paper_unknown_group():
    assert main(["verify-paper", "--only", "nope"]) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["search", "--mode", "greedy"])
    assert e.value.code == 2


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig(command="search")
    with pytest.raises(UsageError):
        RunConfig(command="search", family="curve", budget=0)
    with pytest.raises(UsageError):
        RunConfig(command="search", family="curve", jobs=0)
    assert RunConfig(command="verify-paper").output == "text"
