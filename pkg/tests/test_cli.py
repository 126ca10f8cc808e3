"""Command-line interface: output formats and exit codes."""
import json

import pytest

from cgquantum.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_product_output(capsys):
    code, out, _ = run_cli(capsys, "product", "s2", "s2")
    assert code == 0
    assert out.strip() == "s4 + 2*s4p + 2*s4pp"


def test_product_identity(capsys):
    code, out, _ = run_cli(capsys, "product", "s0", "s7")
    assert code == 0
    assert out.strip() == "s7"


def test_product_quantum_terms_ascending(capsys):
    code, out, _ = run_cli(capsys, "product", "s7", "s7")
    assert code == 0
    assert out.strip() == "q^2*s6 + q^2*s6p + q^3*s2 + q^3*s2p"


def test_product_unknown_label(capsys):
    code, _, err = run_cli(capsys, "product", "s2", "sigma9")
    assert code == 2
    assert "unknown label" in err


def test_gw_value(capsys):
    code, out, _ = run_cli(capsys, "gw", "1", "s3", "s1", "s8")
    assert code == 0
    assert out.strip() == "2"


def test_gw_degree_out_of_range(capsys):
    code, _, err = run_cli(capsys, "gw", "5", "s1", "s1", "s1")
    assert code == 2


def test_scenario_single(capsys):
    code, out, _ = run_cli(capsys, "scenario", "4.1.8")
    assert code == 0
    assert out.strip() == "main=7 correction=1 value=6"


def test_scenario_all_json(capsys):
    code, out, _ = run_cli(capsys, "--json", "scenario", "--all")
    assert code == 0
    data = json.loads(out)
    assert len(data) == 12
    assert data["4.2.3"] == {"main": "3", "correction": "1", "value": "2"}


def test_scenario_unknown(capsys):
    code, _, err = run_cli(capsys, "scenario", "1.2.3")
    assert code == 2


def test_charpoly_format(capsys):
    code, out, _ = run_cli(capsys, "charpoly", "--q", "1")
    assert code == 0
    assert out.strip() == "t^15 - 102 t^11 + 317 t^7 - 2048 t^3"


def test_charpoly_classical_limit(capsys):
    code, out, _ = run_cli(capsys, "charpoly", "--q", "0")
    assert code == 0
    assert out.strip() == "t^15"


def test_verify_table_suite(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "table")
    assert code == 0
    lines = [l for l in out.splitlines() if l]
    assert all(l.startswith("[pass]") for l in lines)
    assert any("associativity" in l for l in lines)


def test_verify_all_json_round_trip(capsys):
    code, out, _ = run_cli(capsys, "--json", "verify", "--suite", "scenarios")
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert data["suite"] == "scenarios"
    assert len(data["checks"]) == 12


def test_verify_missing_table_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "--table-file",
                           str(tmp_path / "missing.json"),
                           "verify", "--suite", "table")
    assert code == 2
    assert "data error" in err


def test_malformed_table_file(capsys, tmp_path):
    bad = tmp_path / "table.json"
    bad.write_text("{\"labels\": \"nope\"}")
    code, _, err = run_cli(capsys, "--table-file", str(bad),
                           "product", "s1", "s1")
    assert code == 2


def test_derive_reports_closure(capsys):
    code, out, _ = run_cli(capsys, "derive")
    assert code == 0
    assert "a3=2" in out
    assert "a7=0" in out
    assert "0 entries" in out


def test_conjecture_o_output(capsys):
    code, out, _ = run_cli(capsys, "conjecture-o")
    assert code == 0
    assert "12.617596033" in out
    assert "True" in out


def test_conjecture_o_json(capsys):
    code, out, _ = run_cli(capsys, "--json", "conjecture-o")
    assert code == 0
    data = json.loads(out)
    assert data["bound_T_gt_9"] is True
    assert data["shape_t3_f_t4"] is True
    assert data["char_poly"]["3"] == "-2048"
