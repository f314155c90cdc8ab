import csv
import json

import pytest

from cdtree import fixture, load_csv, parse_tree
from cdtree.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main, truth_path
from cdtree.synth import GroundTruth


def build(tmp_path, *extra, name="tree.json"):
    out = tmp_path / name
    code = main(["build", str(fixture("titanic.csv")), "--outcome", "survived",
                 "--weight-column", "count", "--format", "json", "--out", str(out), *extra])
    return code, out


def test_build_json_and_audit(tmp_path):
    code, out = build(tmp_path)
    assert code == EXIT_OK
    tree = parse_tree(out.read_text())
    assert tree.attribute_names[tree.root.attribute] == "female"
    audit = (tmp_path / "tree.json.audit.tsv").read_text().splitlines()
    assert audit[1].split("\t")[1] == "female"


def test_build_byte_identical(tmp_path):
    _, a = build(tmp_path, name="a.json")
    _, b = build(tmp_path, name="b.json")
    assert a.read_bytes() == b.read_bytes()


def test_build_stdout(capsys):
    code = main(["build", str(fixture("fig2a.csv")), "--outcome", "Y", "--weight-column", "count"])
    captured = capsys.readouterr()
    assert code == EXIT_OK
    assert "(no branches) Y=1" in captured.out
    assert captured.err.startswith("context\tattribute")


@pytest.mark.parametrize("fmt", ["text", "dot"])
def test_build_other_formats(tmp_path, fmt):
    code, out = build(tmp_path, "--format", fmt, name=f"t.{fmt}")
    assert code == EXIT_OK and "female" in out.read_text()


def test_single_record_gives_empty_tree(tmp_path, capsys):
    p = tmp_path / "one.csv"
    p.write_text("a,b,y\n1,0,1\n")
    assert main(["build", str(p), "--outcome", "y", "--format", "json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["root"] == {"kind": "leaf", "label": 1, "support": 1}


def test_baseline(tmp_path):
    out = tmp_path / "b.json"
    code = main(["baseline", str(fixture("fig2a.csv")), "--outcome", "Y", "--weight-column",
                 "count", "--criterion", "discriminative", "--format", "json", "--out", str(out)])
    assert code == EXIT_OK
    tree = parse_tree(out.read_text())
    assert tree.criterion == "discriminative" and tree.root.attribute == 0


def test_synth_build_eval(tmp_path, capsys):
    data = tmp_path / "s.csv"
    assert main(["synth", "--kind", "single-edge", "--num-vars", "10", "--effect", "2",
                 "--seed", "3", "--out", str(data)]) == EXIT_OK
    truth = GroundTruth.load(truth_path(data))
    assert truth.direct_causes == {"v1"}
    d = load_csv(data, truth.outcome, weight_column="count")
    assert d.n == 10_000 and d.m == 9
    tree = tmp_path / "t.json"
    assert main(["build", str(data), "--outcome", truth.outcome, "--weight-column", "count",
                 "--format", "json", "--out", str(tree)]) == EXIT_OK
    assert main(["eval", str(tree), "--truth", str(truth_path(data))]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["recall"] == 1.0


@pytest.mark.parametrize("kind", ["random-bn", "noise"])
def test_synth_kinds(tmp_path, kind):
    out = tmp_path / f"{kind}.csv"
    assert main(["synth", "--kind", kind, "--num-vars", "12", "--n", "500",
                 "--out", str(out)]) == EXIT_OK
    assert out.exists()
    assert truth_path(out).exists() == (kind == "random-bn")


def test_bench_small(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--num-vars", "8", "--sizes", "500,1000", "--reps", "1",
                 "--out", str(out)]) == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert [int(r["n"]) for r in rows] == [500, 1000]
    assert all(float(r["wall_ms"]) > 0 for r in rows)


@pytest.mark.parametrize("argv", [
    [],
    ["build"],
    ["frobnicate"],
    ["build", "x.csv", "--outcome", "y", "--alpha", "1.5"],
    ["build", "x.csv", "--outcome", "y", "--max-height", "0"],
    ["build", "x.csv", "--outcome", "y", "--format", "yaml"],
    ["synth", "--kind", "noise"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_data_errors(tmp_path, capsys):
    assert main(["build", str(tmp_path / "missing.csv"), "--outcome", "y"]) == EXIT_DATA
    bad = tmp_path / "bad.csv"
    bad.write_text("a,y\n2,1\n")
    assert main(["build", str(bad), "--outcome", "y"]) == EXIT_DATA
    assert "row" in capsys.readouterr().err
    assert main(["build", str(fixture("fig2a.csv")), "--outcome", "nope"]) == EXIT_DATA
