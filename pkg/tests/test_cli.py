import csv
import io
import json
import random

import pytest

from kmarkov import cli
from kmarkov.suites import VerifySuiteResult


def ok(argv):
    code, record, text = cli.run(argv)
    assert code == 0, text
    return record


def row(argv):
    (only,) = ok(argv).rows
    return only


def test_number_examples():
    r = row(["number", "--k", "1", "--point", "3,2"])
    assert (r["value"], r["shape"], r["element_count"], r["coprime"]) == (217, "3,5,4,2", 14, True)
    # the value labelled 2/5 in the tree figure
    assert row(["number", "--k", "0", "--point", "5,2"])["value"] == 194
    assert row(["number", "--k", "0", "--point", "3,2"])["value"] == 29
    r = row(["number", "--k", "0", "--point", "1,0"])
    assert (r["value"], r["shape"], r["element_count"]) == (1, "", 0)


def test_number_big_integers_are_full_decimal():
    for fmt in ("plain", "csv", "json"):
        _, _, text = cli.run(["--format", fmt, "number", "--k", "1", "--point", "25,11"])
        assert "9998020960587781820161" in text and "e+" not in text


def test_shape_and_distance():
    r = row(["shape", "--k", "1", "--point", "4,2"])
    assert (r["shape"], r["ideals"]) == ("3,4,5,1,2,3", 1001)
    assert row(["distance", "--k", "1", "--from", "1,1", "--to", "5,3"])["distance"] == 1001


def test_line_examples():
    rec = ok(["line", "--k", "1", "--slope", "-5/4", "--intercept", "165/4"])
    assert len(rec.rows) == 4 and rec.summary["empirical_class"] == "valley"
    rec = ok(["line", "--k", "0", "--slope", "-6/5", "--intercept", "83/5"])
    assert [r["value"] for r in rec.rows] == [195025, 196418]
    assert rec.summary["empirical_class"] == "increasing"
    rec = ok(["line", "--k", "0", "--slope", "-2/1", "--intercept", "9/1"])
    assert rec.summary["empirical_class"] == "decreasing" == rec.summary["predicted_class"]


def test_line_interior_and_plot():
    rec = ok(["line", "--slope", "-1", "--intercept", "4", "--interior"])
    assert [(r["p"], r["q"]) for r in rec.rows] == [(3, 1)]
    rec = ok(["line", "--slope", "-6/5", "--intercept", "83/5", "--plot"])
    assert list(rec.rows[0]) == ["x", "digits", "log10_value"]
    assert rec.rows[1]["digits"] == 6


def test_thresholds():
    rec = ok(["thresholds"])
    assert [r["k"] for r in rec.rows] == [0, 1, 2, 3, 100, 1000, 10000]
    assert rec.rows[0]["upper"] == pytest.approx(-1.14320, abs=2e-5)
    assert rec.rows[0]["upper"] == rec.rows[2]["upper"] and rec.rows[0]["lower"] == rec.rows[2]["lower"]
    assert len(ok(["thresholds", "--k", "0"]).rows) == 1
    _, _, text = cli.run(["thresholds", "--k", "10000"])
    assert "-1.029917" in text and "e-" not in text


def test_compare_tree_wedge():
    rec = ok(["compare", "--points", "25,11", "29,6", "--k", "0,1"])
    assert rec.summary["flip_at"] == [1]
    rec = ok(["compare", "--points", "8,7", "13,1", "--k", "0,1,2,3"])
    assert rec.summary["flip_at"] == [3]
    assert ok(["tree", "--k", "0", "--depth", "3"]).summary["triples"] == 9
    wide = ok(["wedge", "--point", "9973,1009", "--k", "0"]).summary["count"]
    narrow = ok(["wedge", "--point", "9973,1009", "--k", "10000"]).summary["count"]
    assert narrow < wide
    rec = ok(["wedge", "--point", "10,4", "--slopes", "-3/2,-1", "--list"])
    assert rec.rows == [{"p": 13, "q": 0}] and rec.summary["slope_low"] == "-3/2"


@pytest.mark.parametrize("argv", [
    ["verify", "--suite", "skein", "--seed", "7", "--cases", "200"],
    ["verify", "--suite", "oracle", "--seed", "1", "--cases", "100"],
    ["verify", "--suite", "circular", "--seed", "1"],
])
def test_verify_examples(argv):
    rec = ok(argv)
    assert rec.summary["failures"] == 0 and rec.rows == []
    assert rec.summary["seed"] == int(argv[argv.index("--seed") + 1])


def test_seed_before_or_after_subcommand():
    a = cli.run(["--seed", "5", "verify", "--suite", "skein", "--cases", "10"])[2]
    b = cli.run(["verify", "--suite", "skein", "--cases", "10", "--seed", "5"])[2]
    assert a == b


# exit codes -------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["number", "--point", "0,0"],
    ["number", "--point", "3"],
    ["shape", "--point", "0,0"],
    ["line", "--slope", "1/2", "--intercept", "0"],
    ["line", "--slope", "x", "--intercept", "0"],
    ["thresholds", "--k", "-1"],
    ["wedge", "--point", "5,2", "--slopes", "-1,1"],
    ["compare", "--points", "1,2", "3,1"],
    ["verify", "--suite", "nope"],
    ["bogus"],
])
def test_usage_errors_exit_2(argv, capsys):
    try:
        code, _, _ = cli.run(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_verify_failure_exits_1(monkeypatch, capsys):
    failing = VerifySuiteResult("skein", 0, 1, 0, [{"check": "skein", "word1": "UD"}])
    monkeypatch.setattr(cli, "run_suite", lambda name, seed, cases: failing)
    code, rec, text = cli.run(["verify", "--suite", "skein"])
    assert code == 1 and rec.rows[0]["check"] == "skein"
    assert cli.main(["verify", "--suite", "skein", "--cases", "3"]) == 1
    assert "reproduce with: kmarkov --seed 0 verify --suite skein --cases 3" in capsys.readouterr().err


def test_main_exit_codes(capsys):
    assert cli.main(["number", "--point", "2,1"]) == 0
    assert cli.main(["number", "--point", "0,0"]) == 2


# round trip and determinism -------------------------------------------------------

def random_command(rng):
    kind = rng.choice(["number", "shape", "distance", "line", "thresholds", "tree", "wedge", "compare"])
    k = str(rng.randint(0, 3))
    x = rng.randint(1, 25)
    pt = f"{x},{rng.randint(0, x)}"
    if kind in ("number", "shape"):
        return [kind, "--k", k, "--point", pt]
    if kind == "distance":
        return [kind, "--k", k, "--from", f"{rng.randint(-5, 5)},{rng.randint(-5, 5)}", "--to", pt]
    if kind == "line":
        a1, a2 = rng.randint(1, 6), rng.randint(1, 4)
        return [kind, "--k", k, "--slope", f"-{a1}/{a2}", "--intercept", f"{rng.randint(1, 120)}/{a2}"]
    if kind == "thresholds":
        return [kind, "--k", ",".join(str(rng.randint(0, 50)) for _ in range(3))]
    if kind == "tree":
        return [kind, "--k", k, "--depth", str(rng.randint(0, 3))]
    if kind == "wedge":
        return [kind, "--point", f"{rng.randint(20, 200)},{rng.randint(0, 19)}", "--k", k, "--list"]
    y = rng.randint(1, 25)
    return [kind, "--points", pt, f"{y},{rng.randint(0, y)}", "--k", "0,1,2"]


def test_json_round_trip_50_commands():
    rng = random.Random(2024)
    for _ in range(50):
        argv = random_command(rng)
        code, record, text = cli.run(["--format", "json", *argv])
        assert code == 0, argv
        assert json.loads(text) == record.to_jsonable(), argv


def test_csv_shape():
    _, record, text = cli.run(["--format", "csv", "line", "--slope", "-6/5", "--intercept", "83/5"])
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["row"] for r in rows] == ["data", "data", "summary"]
    assert rows[1]["value"] == "196418"
    assert rows[2]["empirical_class"] == "increasing"


def test_determinism():
    rng = random.Random(8)
    commands = [random_command(rng) for _ in range(10)]
    commands.append(["--seed", "3", "verify", "--suite", "skein", "--cases", "20"])
    for argv in commands:
        for fmt in ("plain", "csv", "json"):
            assert cli.run(["--format", fmt, *argv])[2] == cli.run(["--format", fmt, *argv])[2]
