import json
import math

import pytest

from alemass import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def burns_json(tmp_path):
    path = tmp_path / "burns.json"
    path.write_text(json.dumps({"basis": ["E"], "Q": [[-1]], "c1": ["1"], "areas": [3 * math.pi]}))
    return str(path)


def test_topo_prints_one(capsys, burns_json):
    code, out, _ = run(capsys, "topo", "--input", burns_json)
    assert code == 0 and out.strip() == "1.0"


def test_adm_schwarzschild_table(capsys):
    code, out, _ = run(capsys, "adm", "--family", "schwarzschild", "--n", "3", "--A", "2")
    assert code == 0
    first, header, *rows = out.splitlines()
    assert abs(float(first.split()[0]) - 1.0) <= 1e-6
    assert header == "rho,mass_at_radius,extrapolant,error_estimate"
    assert len(rows) == 8


def test_adm_nonconvergence_exit_code(capsys):
    code, _, err = run(capsys, "adm", "--family", "schwarzschild", "--n", "3", "--A", "2", "--tolerance", "1e-15")
    assert code == 2 and "tolerance" in err


def test_lebrun_zero_instance(capsys):
    code, out, _ = run(capsys, "lebrun", "--zero-instance", "3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "0"
    assert lines[1].startswith("cross-check:") and "consistent" in lines[1]


def test_json_output_round_trips_byte_identically(capsys):
    code, out, _ = run(capsys, "adm", "--family", "burns", "--A", "0.5", "--format", "json")
    assert code == 0
    assert cli.dumps(json.loads(out)) == out.rstrip("\n")
    assert json.loads(out)["value"] == pytest.approx(1 / 6, abs=1e-9)


def test_canonical_json_handles_nonfinite_and_digits():
    text = cli.dumps({"b": float("inf"), "a": 1 / 3, "z": -0.0})
    assert json.loads(text) == {"a": 0.333333333333, "b": None, "z": 0.0}
    assert text.index('"a"') < text.index('"b"')


def test_config_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nfamily = schwarzschild\nn = 4\nA = 1\nformat = json\n")
    code, out, _ = run(capsys, "adm", "--config", str(cfg))
    assert code == 0 and json.loads(out)["value"] == pytest.approx(0.5, abs=1e-9)
    code, out, _ = run(capsys, "adm", "--config", str(cfg), "--format", "csv", "--A", "2")
    assert code == 0 and out.startswith("rho,")


def test_input_errors_exit_one(capsys, tmp_path):
    assert run(capsys, "adm", "--family", "nope")[0] == 1
    assert run(capsys, "topo", "--input", str(tmp_path / "missing.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"Q": [[1, 2], [2, 4]], "c1": ["1", "1"], "areas": [1, 1]}')
    code, _, err = run(capsys, "topo", "--input", str(bad))
    assert code == 1 and "singular" in err
    with pytest.raises(SystemExit) as exc:
        cli.main(["topo"])
    assert exc.value.code == 1


def test_penrose_verdict_exit_codes(capsys, tmp_path):
    div = tmp_path / "div.json"
    div.write_text(json.dumps({"m": 2, "components": [{"label": "E", "n": 1, "vol": 3.0}]}))
    mass = 1 / math.pi
    assert run(capsys, "penrose", "--input", str(div), "--mass", repr(mass), "--scalar-flat")[0] == 0
    code, out, _ = run(capsys, "penrose", "--input", str(div), "--mass", "0.1")
    assert code == 3 and "violation" in out


def test_families_lists_registry(capsys):
    code, out, _ = run(capsys, "families")
    assert code == 0 and "gibbons-hawking" in out.split()


def test_reproduce_subset(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "lebrun")
    assert code == 0
    assert out.count("[PASS]") == 1 and "1/1 criteria passed" in out


def test_reproduce_sign_mutation_fails(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "schwarzschild", "--mutate", "sign")
    assert code == 3 and "[FAIL] schwarzschild" in out


def test_reproduce_unknown_criterion(capsys):
    assert run(capsys, "reproduce", "--only", "nonsense")[0] == 1


def test_parse_value():
    assert cli.parse_value("3") == 3
    assert cli.parse_value("2.5") == 2.5
    assert cli.parse_value("0,0,0;1,0,0") == [[0, 0, 0], [1, 0, 0]]
    assert cli.parse_value("u + A*log(u)") == "u + A*log(u)"
