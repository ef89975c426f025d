import json

from cuspidal.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cusps_table(capsys):
    code, out, err = run_cli(capsys, "cusps", "1")
    assert code == 0
    assert "level" in out
    assert out.count("\n") == 3  # header lines plus the single cusp


def test_cusps_json(capsys):
    code, out, _ = run_cli(capsys, "cusps", "25", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "cusps"
    assert report["inputs"] == {"N": 25}
    assert [c["level"] for c in report["cusps"]] == [1, 5, 25]
    assert [c["degree"] for c in report["cusps"]] == [1, 4, 1]


def test_class_group_json_example(capsys):
    code, out, _ = run_cli(capsys, "class-group", "--p", "11", "--n", "1", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["invariant_factors"] == [5]
    assert report["order"] == "5"
    assert report["certified"] is True


def test_class_group_by_level(capsys):
    code, out, _ = run_cli(capsys, "class-group", "--N", "8", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["certified"] is False


def test_torsion_prime_unconditional(capsys):
    code, out, _ = run_cli(capsys, "torsion", "--p", "5", "--n", "1")
    assert code == 0
    assert "Z/2" in out
    assert "unconditional" in out


def test_torsion_json(capsys):
    code, out, _ = run_cli(capsys, "torsion", "--p", "5", "--n", "2", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["invariant_factors"] == [2, 10]
    assert report["conditional"] is True
    assert report["kernel"]["invariant_factors"] == []


def test_torsion_pq(capsys):
    code, out, _ = run_cli(capsys, "torsion", "--pq", "13", "37", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["kernel"]["invariant_factors"] == [18]
    assert report["group"] is None
    assert report["up_to_2_torsion"]["invariant_factors"] == [144]


def test_matrices_claims_pass(capsys):
    code, out, _ = run_cli(capsys, "matrices", "--p", "7", "--n", "3", "--json")
    assert code == 0
    report = json.loads(out)
    assert all(claim["ok"] for claim in report["claims"].values())


def test_delta_output(capsys):
    code, out, _ = run_cli(capsys, "delta", "--p", "5", "--n", "3", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["matrix"] == [[3, 0, 0], [1, 1, 0], [1, 2, 1]]
    assert report["cokernel"]["invariant_factors"] == [3]
    assert "uniformizers" in report


def test_eta_check_failure_reported(capsys):
    code, out, _ = run_cli(capsys, "eta-check", "eta(1)^1 * eta(2)^-1", "--level", "2", "--json")
    assert code == 0  # the check itself succeeds; the function is just not modular
    report = json.loads(out)
    assert report["modular"] is False
    assert report["conditions"]["sum_delta_mod_24"] is False
    assert report["conditions"]["weight_zero"] is True


def test_divisor_command(capsys):
    code, out, _ = run_cli(capsys, "divisor", "eta(5)^6 * eta(1)^-6", "--level", "5", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["coefficients"] == {"1": "-1", "5": "1"}
    assert report["degree"] == "0"


def test_divisor_rejects_non_modular(capsys):
    code, out, err = run_cli(capsys, "divisor", "eta(1)^1 * eta(2)^-1", "--level", "2")
    assert code == 2
    assert "error" in err


def test_scope_error_exit_code(capsys):
    for p in ("2", "3"):
        code, out, err = run_cli(capsys, "class-group", "--p", p, "--n", "1")
        assert code == 2
        assert "p >= 5" in err


def test_malformed_expression_exit_code(capsys):
    code, _, err = run_cli(capsys, "eta-check", "zeta(3)", "--level", "3")
    assert code == 2
    assert "error" in err


def test_unknown_subcommand_exit_code(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 2


def test_missing_arguments_exit_code(capsys):
    code, _, err = run_cli(capsys, "class-group")
    assert code == 2


def test_json_round_trip_and_determinism(capsys):
    commands = [
        ("cusps", "30", "--json"),
        ("class-group", "--p", "13", "--n", "2", "--json"),
        ("delta", "--p", "7", "--n", "2", "--json"),
        ("torsion", "--pq", "13", "37", "--json"),
        ("pq", "--p", "13", "--q", "37", "--json"),
    ]
    for argv in commands:
        code, first, _ = run_cli(capsys, *argv)
        assert code == 0
        code, second, _ = run_cli(capsys, *argv)
        assert first == second, argv  # byte-identical output
        report = json.loads(first)
        assert json.dumps(report, indent=2, sort_keys=True) + "\n" == first


def test_pq_command(capsys):
    code, out, _ = run_cli(capsys, "pq", "--p", "13", "--q", "61", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["a"] == "31" and report["b"] == "35" and report["c"] == "30"
    assert report["order_formula_4abc"] == "130200"
    assert report["class_group"]["order"] == "130200"
    assert report["kernel"]["invariant_factors"] == [30]
    assert report["leading_coefficient_magnitudes"]["f1"] == ["13", "1", "13", "1"]
    assert report["leading_coefficient_magnitudes"]["f3"] == ["1", "1", "1", "1"]


def test_verify_single_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "mazur")
    assert code == 0
    assert out.startswith("PASS")


def test_verify_failure_exits_nonzero(capsys, monkeypatch):
    import cuspidal.verify as verify_module
    from cuspidal.verify import CheckResult

    def failing():
        return CheckResult("mazur-orders", False, "forced failure for the exit-code test")

    monkeypatch.setattr(
        verify_module, "CRITERIA", (("mazur", failing),)
    )
    monkeypatch.setattr("cuspidal.cli.run_suite", lambda name: [failing()])
    code, out, _ = run_cli(capsys, "verify", "--suite", "mazur")
    assert code == 1
    assert "FAIL" in out


def test_run_suite_unknown_name():
    import pytest

    from cuspidal.verify import run_suite

    with pytest.raises(ValueError):
        run_suite("bogus")


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "determinants", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["all_passed"] is True
    assert report["results"][0]["criterion"] == "determinant-claims"


def test_timing_flag_adds_field(capsys):
    code, out, _ = run_cli(capsys, "cusps", "10", "--json", "--timing")
    assert code == 0
    assert "timing_seconds" in json.loads(out)
    code, out, _ = run_cli(capsys, "cusps", "10", "--json")
    assert "timing_seconds" not in json.loads(out)


def test_leading_coeffs_command(capsys):
    code, out, _ = run_cli(capsys, "leading-coeffs", "--p", "5", "--n", "2", "--json")
    assert code == 0
    report = json.loads(out)
    rows = {row["function"]: row for row in report["rows"]}
    assert rows["f"]["symbolic"][0] == "5^(-3)"
    assert rows["f"]["symbolic"][1] == "1"
    assert rows["g0"]["symbolic"][1] == "e(3/10)*5^(-1/2)"
    for row in report["rows"]:
        for residual in row["numeric_residual"]:
            assert float(residual) < 1e-8
