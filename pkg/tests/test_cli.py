import json

import pytest

from fqcount.cli import main
from fqcount.counting import system
from fqcount.errors import ParseError
from fqcount.instances import (canonical_json, dump_instance, load_instance,
                               system_from_dict, system_to_dict)
from fqcount.multipoly import index_set, multipoly
from fqcount.unipoly import unipoly

from conftest import F

EXAMPLE2 = {
    "p": 3, "s": 4, "n": 3,
    "f": [{"coeffs": [1, 0, 1, 1]},
          {"coeffs": [1, 0, 1, 1]},
          {"coeffs": [0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1]}],
    "P": [{"terms": [{"c": 1, "e": [1, 0, 0]},
                     {"c": 1, "e": [0, 1, 0]},
                     {"c": 1, "e": [0, 0, 1]}]}],
}


@pytest.fixture
def example2_file(tmp_path):
    path = tmp_path / "example2.json"
    path.write_text(json.dumps(EXAMPLE2))
    return str(path)


def test_instance_roundtrip(tmp_path):
    ctx = F(3, 2)
    inst = system(ctx, [unipoly(ctx, [0, 1]), unipoly(ctx, [1, 2])],
                  [multipoly(ctx, 2, [(1, (1, 1))])],
                  index_set([1], 2))
    path = tmp_path / "inst.json"
    dump_instance(inst, path)
    text = path.read_text()
    again = load_instance(path)
    assert again.ctx == inst.ctx
    assert again.f_list == inst.f_list
    assert again.p_list == inst.p_list
    assert again.index_set == inst.index_set
    # canonicalized files round-trip byte-identically
    assert canonical_json(system_to_dict(again)) == text


def test_parse_diagnostics():
    with pytest.raises(ParseError) as err:
        system_from_dict({"p": 3, "s": 1, "n": 1, "f": [{"coeffs": [9]}],
                          "P": [{"terms": []}]})
    assert "f[0]" in str(err.value)
    with pytest.raises(ParseError):
        system_from_dict({"p": 3})
    with pytest.raises(ParseError) as err:
        system_from_dict({"p": 4, "s": 1, "n": 1, "f": [{"coeffs": [1]}],
                          "P": [{"terms": []}]})
    assert "p/s/modulus" in str(err.value)
    with pytest.raises(ParseError) as err:
        system_from_dict({**EXAMPLE2, "I": [0, 1]})
    assert "I" in str(err.value)


def test_cli_count(example2_file, capsys):
    assert main(["count", example2_file, "--method", "weighted", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["count"] == "6669" and data["ord_p"] == 3
    assert data["method"] == "weighted"


def test_cli_verify(example2_file, capsys):
    assert main(["verify", example2_file, "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["violations"] == []
    assert data["count"]["count"] == "6669"
    main_g = next(g for g in data["guarantees"] if g["theorem"] == "MAIN")
    assert main_g["applicable"] and main_g["guaranteed_p_exponent"] == 1
    assert data["instance"]["modulus"] == [2, 1, 0, 0, 1]


def test_cli_verify_all_subsets(example2_file, capsys):
    assert main(["verify", example2_file, "--all-subsets", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["best"]["guaranteed_p_exponent"] >= 1


def test_cli_verify_explicit_I(example2_file, capsys):
    assert main(["verify", example2_file, "--I", "1", "2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["I"] == [1, 2]


def test_cli_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert main(["count", str(bad)]) == 2
    assert "parse error" in capsys.readouterr().err


def test_cli_budget_exit_code(example2_file, capsys):
    assert main(["count", example2_file, "--method", "brute",
                 "--budget", "100"]) == 3
    assert "budget" in capsys.readouterr().err


def test_cli_missing_file_exit_code(capsys):
    assert main(["count", "/nonexistent/inst.json"]) == 2


def test_cli_analyze_inline(capsys):
    rc = main(["analyze", "--p", "3", "--s", "4",
               "--coeffs", "0,1,0,0,0,0,0,0,0,0,0,1,0,1"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["u"] == 14 and data["omega"] == 8 and data["p_weight"] == 3
    assert data["classification"] == "weakly_wsc_only"
    assert data["omega_bounds"]["omega_le_u"]
    assert data["field"]["modulus"] == [2, 1, 0, 0, 1]


def test_cli_analyze_permutation(capsys):
    assert main(["analyze", "--p", "5", "--coeffs", "0,1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["classification"] == "permutation" and data["u"] == 4


def test_cli_analyze_file(example2_file, capsys):
    assert main(["analyze", example2_file]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [a["u"] for a in data["analyses"]] == [40, 40, 14]


def test_cli_omega(capsys):
    assert main(["omega", "--p", "3", "--s", "4", "--coeffs", "1,0,1,1"]) == 0
    assert json.loads(capsys.readouterr().out)["omega"] == 27


def test_cli_repro_all(capsys):
    for name in ("example1", "example2", "monomial-table"):
        assert main(["repro", name]) == 0
        assert "[PASS]" in capsys.readouterr().out


def test_cli_search_sharpness_deterministic(capsys):
    args = ["search-sharpness", "--p", "3", "--s", "1", "--n", "2",
            "--trials", "30", "--seed", "11", "--json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    data = json.loads(first)
    for hit in data["tight_instances"]:
        assert hit["exponent"] >= 1


def test_cli_verify_lemmas(capsys):
    assert main(["verify-lemmas", "--p", "2", "--s", "2", "--k", "4",
                 "--trials", "25", "--seed", "3", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["pass"] and all(data["results"].values())
