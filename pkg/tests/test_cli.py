"""CLI: parsing, serialization round trip, commands, exit codes, JSON."""

import json

import pytest

from h1loc.cli import (EXIT_CAP, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK,
                       GroupDescription, parse_group, run)
from h1loc.errors import InputError

CYCLIC = """\
# a cyclic group mod 25
p=5 n=2 rank=2
gen:
1 1
0 1
"""

FAMILY = """\
p=5 n=2 rank=2
gen:
1 -3
1 -2
gen:
6 10
0 21
gen:
16 15
20 11
"""

GL2F5 = """\
p=5 n=1 rank=2 symplectic
gen:
2 0
0 1
gen:
4 1
4 0
"""


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_and_roundtrip():
    desc = parse_group(CYCLIC)
    assert (desc.p, desc.n, desc.rank) == (5, 2, 2)
    assert len(desc.generators) == 1
    again = parse_group(desc.serialize())
    assert again == desc
    sym = parse_group(GL2F5)
    assert sym.symplectic
    assert parse_group(sym.serialize()) == sym


def test_parse_errors_are_distinct():
    with pytest.raises(InputError, match="header"):
        parse_group("q=5 n=2 rank=2\n")
    with pytest.raises(InputError, match="non-square"):
        parse_group("p=5 n=2 rank=2\ngen:\n1 0 0\n0 1 0\n")
    with pytest.raises(InputError, match="not invertible"):
        parse_group("p=5 n=2 rank=2\ngen:\n5 0\n0 1\n")
    with pytest.raises(InputError, match="empty"):
        parse_group("# nothing\n")
    with pytest.raises(InputError, match="truncated"):
        parse_group("p=5 n=2 rank=2\ngen:\n1 0\n")


def test_h1loc_cyclic_exit_zero(tmp_path, capsys):
    path = write(tmp_path, "cyclic.grp", CYCLIC)
    assert run(["h1loc", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "trivial" in out


def test_h1loc_family_exit_one(tmp_path):
    path = write(tmp_path, "family.grp", FAMILY)
    assert run(["h1loc", path]) == EXIT_NEGATIVE


def test_h1_json_schema_stable(tmp_path, capsys):
    path = write(tmp_path, "cyclic.grp", CYCLIC)
    assert run(["h1", path, "--json"]) in (EXIT_OK, EXIT_NEGATIVE)
    first = capsys.readouterr().out
    run(["h1", path, "--json"])
    second = capsys.readouterr().out
    assert first == second
    payload = json.loads(first)
    assert payload["command"] == "h1"
    assert payload["h1"]["invariant_factors"] == [25]


def test_criteria_command(tmp_path, capsys):
    path = write(tmp_path, "family.grp", FAMILY)
    code = run(["criteria", path, "--json"])
    assert code == EXIT_NEGATIVE  # no criterion certifies the family
    payload = json.loads(capsys.readouterr().out)
    assert all(r["conclusion"] != "certified" for r in payload["reports"])
    assert any(r["direct_h1_loc"] == [5, 5] for r in payload["reports"])

    sym = write(tmp_path, "gl2.grp", GL2F5)
    code2 = run(["criteria", sym, "--json"])
    assert code2 == EXIT_OK
    payload2 = json.loads(capsys.readouterr().out)
    assert any(r["conclusion"] == "certified" for r in payload2["reports"])


def test_counterexample_command(capsys):
    code = run(["counterexample", "--p", "5", "--json"])
    assert code == EXIT_NEGATIVE
    payload = json.loads(capsys.readouterr().out)
    assert payload["all_passed"] is True
    assert payload["h1_loc"] == [5, 5]
    assert [x % 5 for x in payload["witness_h11"]] == [1, 1]
    assert [x % 5 for x in payload["witness_h21"]] == [4, 0]


def test_counterexample_bad_prime():
    assert run(["counterexample", "--p", "7"]) == EXIT_INPUT


def test_gsp4_formula_only(capsys):
    assert run(["gsp4", "--p", "3"]) == EXIT_OK
    assert "103680" in capsys.readouterr().out


def test_gsp4_enumerate(capsys):
    assert run(["gsp4", "--p", "3", "--enumerate", "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["order_enumerated"] == 103680
    assert payload["pairing_failures"] == 0
    assert payload["match"] is True


def test_decompose_command(tmp_path, capsys):
    text = """\
p=5 n=1 rank=2
gen:
2 0
0 1
gen:
1 1
0 1
"""
    path = write(tmp_path, "dec.grp", text)
    assert run(["decompose", path, "--json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["pairs"][0]["exponent"] == 2


def test_decompose_precondition_exit_code(tmp_path):
    text = """\
p=5 n=1 rank=2
gen:
1 1
0 1
gen:
1 1
0 1
"""
    path = write(tmp_path, "bad.grp", text)
    assert run(["decompose", path]) == EXIT_INPUT


def test_cap_exit_code(tmp_path):
    path = write(tmp_path, "gl2.grp", GL2F5)
    assert run(["h1", path, "--cap", "10"]) == EXIT_CAP


def test_missing_file():
    assert run(["h1", "/nonexistent/file.grp"]) == EXIT_INPUT
