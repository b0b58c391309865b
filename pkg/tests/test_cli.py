import csv
import io
import json

import jsonschema
import pytest
from click.testing import CliRunner

from chainforge import records
from chainforge.cli import main

SCHEMA = records.schema()


def run(*args):
    return CliRunner().invoke(main, list(args))


def ok_json(*args):
    res = run(*args)
    assert res.exit_code == 0, res.stderr
    rec = json.loads(res.stdout)
    jsonschema.validate(rec, SCHEMA)
    return rec


def test_report():
    rec = ok_json("report", "L(2,7)")
    r = rec["result"]
    assert (r["l"], r["lambda"], r["cd"], r["cr"]) == ("5", "3", "2", "5/3")
    assert rec["command"] == "report" and rec["provenance"]


def test_report_range_and_why():
    rec = ok_json("report", "U(3,5)", "--why")
    assert rec["result"]["lambda"] == "[4, 5]"
    assert {w["rule"] for w in rec["why"]} == {"length:tabulated", "depth:tabulated"}
    assert all(w["meaning"] for w in rec["why"])


@pytest.mark.parametrize("args,code", [
    (["report", "M24"], 2),
    (["report", "L(2,6)"], 1),
    (["report", "garbage("], 1),
    (["oracle", "A(9)"], 3),
    (["oracle", "M11"], 3),
    (["oracle", "L(2,16)"], 2),
    (["classify", "no-such-tag"], 1),
    (["primes", "no-such-family", "--limit", "100"], 1),
    (["primes", "appendix", "--limit", "1"], 1),
])
def test_exit_codes(args, code):
    res = run(*args)
    assert res.exit_code == code, (res.stdout, res.stderr)
    assert res.stdout == ""
    assert res.stderr.strip()


def test_classify_cd2():
    rec = ok_json("classify", "cd2", "--q-max", "200")
    names = {m["group"] for m in rec["result"]["members"]}
    assert {"L(2,7)", "L(2,8)", "L(2,11)", "L(2,23)", "L(2,27)", "L(2,125)", "A(7)", "J1"} <= names


def test_classify_length_le_9_with_alias():
    rec = ok_json("classify", "length≤9", "--family", "L2", "--limit", "100", "--l", "4")
    qs = [m["witnesses"]["q"] for m in rec["result"]["members"]]
    assert qs == ["13", "43", "67"]


def test_classify_depth3_with_order_bound():
    rec = ok_json("classify", "depth3", "--max-order", "10^6")
    names = {m["group"] for m in rec["result"]["members"]}
    assert "L(2,8)" in names and "A(7)" not in names


def test_primes_formats():
    rec = ok_json("primes", "table5-row1", "--limit", "2000")
    assert rec["result"]["count"] == "10"
    text = run("primes", "table5-row1", "--limit", "100", "--format", "csv").stdout
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["p"] for r in rows] == ["13", "43", "67"]
    assert "13" in run("primes", "table5-row1", "--limit", "100", "--format", "text").stdout


def test_primes_parallel_output_is_byte_identical():
    one = run("primes", "appendix", "--limit", "10^6", "--jobs", "1")
    eight = run("primes", "appendix", "--limit", "10^6", "--jobs", "8")
    assert one.exit_code == eight.exit_code == 0
    assert one.stdout == eight.stdout


def test_oracle_and_export(tmp_path):
    out = tmp_path / "s4.json"
    rec = ok_json("oracle", "S(4)", "--export-lattice", str(out))
    assert rec["result"]["report"]["l"] == "4"
    assert json.loads(out.read_text())["order"] == "24"
    dot = tmp_path / "s4.dot"
    assert run("oracle", "S(4)", "--export-lattice", str(dot)).exit_code == 0
    assert dot.read_text().startswith("digraph")


def test_selftest():
    res = run("selftest")
    assert res.exit_code == 0
    assert json.loads(res.stdout)["result"]["passed"] is True


def test_parse_count():
    assert records.parse_count("10^6") == 10**6
    assert records.parse_count("1e6") == 10**6
    assert records.parse_count("2000") == 2000
    with pytest.raises(ValueError):
        records.parse_count("lots")
