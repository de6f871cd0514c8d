import json

import pytest
from hypothesis import given, strategies as st

from stanleydepth.cli import (EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, ParseError, main,
                              parse_antichain, parse_generators)
from stanleydepth.lattice import Antichain

SIX = "123 124 125 134 345 234"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_forms():
    a = parse_antichain("123 124 145 234")
    assert a.n == 5 and len(a) == 4
    assert parse_antichain("1,2,3 1,2,4 1,4,5 2,3,4") == a
    assert parse_antichain("") == Antichain([], 0)
    assert parse_antichain("{}") == Antichain([0], 0)
    assert parse_antichain("12\n34", n=6).n == 6
    wide = parse_antichain("1,10 2,11 12", n=12)
    assert wide.n == 12 and 1 << 11 in wide.masks


def test_parse_errors_carry_position():
    with pytest.raises(ParseError, match="comparable pair") as e:
        parse_antichain("1,2,3 1,2")
    assert (e.value.line, e.value.col) == (1, 7)
    with pytest.raises(ParseError) as e:
        parse_antichain("12\n1,x")
    assert (e.value.line, e.value.col) == (2, 3)
    with pytest.raises(ParseError, match="outside"):
        parse_antichain("1,17", n=17)
    with pytest.raises(ParseError, match="exceeds"):
        parse_antichain("123", n=2)


def test_parse_generators():
    assert parse_generators("(1,0,2) 0,1,1") == [(1, 0, 2), (0, 1, 1)]
    with pytest.raises(ParseError):
        parse_generators("1,0 1,0,0")
    with pytest.raises(ParseError):
        parse_generators("1,a")


antichains = st.integers(1, 12).flatmap(
    lambda n: st.lists(st.integers(1, (1 << n) - 1), max_size=6).map(
        lambda ms: Antichain.maximal(ms, n)))


@given(antichains)
def test_format_round_trip(a):
    assert parse_antichain(str(a), n=a.n) == a
    assert parse_antichain(a.format(), n=a.n) == a


def test_sdepth_quotient_example(capsys):
    code, out, _ = run(capsys, "sdepth", "--side", "quotient", *SIX.split())
    assert code == EXIT_OK and out.splitlines()[0] == "2"


def test_sdepth_witness_and_at_least(capsys):
    code, out, _ = run(capsys, "sdepth", "123 124 145 234", "--witness")
    assert code == EXIT_OK and out.splitlines()[0] == "4"
    code, out, _ = run(capsys, "sdepth", "123 124 145 234", "--at-least", "5")
    assert out.strip() == "no"
    code, out, _ = run(capsys, "sdepth", "12 23", "--oracle", "--side", "quotient")
    assert out.strip() == "2"
    code, _, err = run(capsys, "sdepth", "12345", "--oracle")
    assert code == EXIT_USAGE and "n <= 4" in err


def test_sdepth_empty_family_flagged(capsys):
    code, out, _ = run(capsys, "sdepth", "12345")
    assert out.splitlines()[0] == "5" and "convention" in out


def test_scc_example(capsys):
    code, out, _ = run(capsys, "scc", SIX)
    assert code == EXIT_OK
    assert "Fail witness {5}" in out
    assert "(0,0,3,3)" in out and "criterion: Pass" in out


def test_reduce_and_splits(capsys):
    code, out, _ = run(capsys, "reduce", "12 13")
    assert code == EXIT_OK and "common vertex 1" in out
    code, out, _ = run(capsys, "splits", "125 246 123 245 345 235")
    assert "2: no" in out and "6: splits" in out and "first splitting vertex: 1" in out


def test_grid(capsys):
    code, out, _ = run(capsys, "grid", "1,0,0 0,1,0 0,0,1", "--g", "1,1,1")
    assert code == EXIT_OK and out.strip() == "2"
    code, out, _ = run(capsys, "grid", "2,0,1 0,2,2 1,1,0", "--construct-n3")
    assert code == EXIT_OK and "INVALID" not in out and "sdepth >= 2" in out
    code, _, _ = run(capsys, "grid", "3,0 0,1", "--g", "1,1")
    assert code == EXIT_USAGE


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE
    assert run(capsys, "census", "7", "3")[0] == EXIT_USAGE
    assert run(capsys, "census", "5", "2", "--jobs", "0")[0] == EXIT_USAGE
    assert run(capsys, "sdepth", "1,2,3 1,2")[0] == EXIT_USAGE


def test_census_jobs_identical(capsys, tmp_path):
    out_file = tmp_path / "r.jsonl"
    _, one, _ = run(capsys, "census", "6", "4", "--include-empty", "--out", str(out_file), "--sort")
    _, two, _ = run(capsys, "census", "6", "4", "--include-empty", "--jobs", "2")
    assert one == two
    row = json.loads(one)
    assert (row["Total"], row["BadDegree"], row["FailSCC"], row["Splits"]) == (156, 35, 55, 66)
    lines = out_file.read_text().splitlines()
    assert len(lines) == 156 and all(json.loads(x)["n"] == 6 for x in lines)


def test_gap_csv(capsys, tmp_path):
    path = tmp_path / "gap.csv"
    code, out, _ = run(capsys, "gap", "5", "3", "--csv", str(path))
    assert code == EXIT_OK and "S/I" in out
    assert path.read_text().startswith("sdepth_quotient,sdepth_ideal,count\n")


def test_verify_tables_reports_mismatch(capsys, tmp_path):
    tables = {"census": [
        {"n": 5, "k": 2, "include_empty": False, "Total": 33, "COUNTEREXAMPLE": 0},
        {"n": 5, "k": 3, "include_empty": False, "Total": 999},
        {"n": 7, "k": 3, "include_empty": False, "gated": True, "Total": 7013319}],
        "gap": []}
    path = tmp_path / "t.json"
    path.write_text(json.dumps(tables))
    code, out, _ = run(capsys, "verify-tables", "--tables", str(path))
    assert code == EXIT_MISMATCH
    assert "OK   census n=5 k=2" in out
    assert "FAIL census n=5 k=3" in out and "Total: expected 999, got 33" in out
    assert "SKIP census n=7 k=3" in out


def test_verify_tables_builtin(capsys):
    code, out, _ = run(capsys, "verify-tables")
    assert code == EXIT_OK, out
    assert out.count("OK ") == 5
