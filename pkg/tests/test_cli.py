"""CLI subcommands, pipe composition, exit codes."""

from __future__ import annotations

import json

import pytest

from posetlab.cli import main
from posetlab.documents import poset_from_doc
from posetlab.poset import generate


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def gen_doc(capsys, *args):
    code, out, _ = run(capsys, ["gen", *args])
    assert code == 0
    return out


def test_gen_emits_valid_document(capsys):
    out = gen_doc(capsys, "diamond", "2")
    assert poset_from_doc(json.loads(out)).same_as(generate("diamond", 2))


def test_gen_grundy_pipe(capsys, monkeypatch):
    doc = gen_doc(capsys, "diamond", "2")
    code, out, _ = run(capsys, ["grundy"], stdin=doc, monkeypatch=monkeypatch)
    assert code == 0
    assert out.strip() == "3"


def test_solve_json_shape(capsys, monkeypatch):
    doc = gen_doc(capsys, "nim", "3,5,7")
    code, out, _ = run(capsys, ["solve", "--json"], stdin=doc, monkeypatch=monkeypatch)
    assert code == 0
    body = json.loads(out)
    assert body["outcome"] == "exists"
    assert body["grundy"] == 1


def test_every_generator_feeds_every_analyzer(capsys, monkeypatch):
    docs = [
        gen_doc(capsys, "chain", "3"),
        gen_doc(capsys, "antichain", "2"),
        gen_doc(capsys, "v", "2"),
        gen_doc(capsys, "lambda", "2"),
        gen_doc(capsys, "diamond", "2"),
        gen_doc(capsys, "nim", "2,3"),
        gen_doc(capsys, "chomp", "2", "2"),
        gen_doc(capsys, "divisors", "12"),
        gen_doc(capsys, "forest", "--", "-1,0,0"),
        gen_doc(capsys, "levels", "4,2,3"),
    ]
    for doc in docs:
        for command in (["solve"], ["grundy"], ["gset"], ["moves"], ["decompose"], ["flip"]):
            code, _, _ = run(capsys, command + ["--json"], stdin=doc, monkeypatch=monkeypatch)
            assert code in (0, 1)  # decompose may hit an N; that's still clean output


def test_gset_output(capsys, monkeypatch):
    doc = gen_doc(capsys, "chain", "3")
    code, out, _ = run(capsys, ["gset", "--json"], stdin=doc, monkeypatch=monkeypatch)
    assert json.loads(out)["gset"] == [0, 1, 2]


def test_moves_output(capsys, monkeypatch):
    doc = gen_doc(capsys, "chain", "4")
    code, out, _ = run(capsys, ["moves"], stdin=doc, monkeypatch=monkeypatch)
    assert out.strip() == "p0"


def test_decompose_text_and_failure(capsys, monkeypatch):
    doc = gen_doc(capsys, "diamond", "2")
    code, out, _ = run(capsys, ["decompose"], stdin=doc, monkeypatch=monkeypatch)
    assert code == 0
    assert out.strip() == "ser(leaf,ser(par(leaf,leaf),leaf))"

    n_doc = json.dumps(
        {
            "format": "posetlab-v1",
            "repr": "HD",
            "points": [{"id": x} for x in "abcd"],
            "edges": [["a", "b"], ["c", "d"], ["c", "b"]],
        }
    )
    code, out, err = run(capsys, ["decompose"], stdin=n_doc, monkeypatch=monkeypatch)
    assert code == 1
    assert "witness" in err

    code, out, err = run(
        capsys, ["decompose", "--json"], stdin=n_doc, monkeypatch=monkeypatch
    )
    assert code == 1
    assert json.loads(out)["error"]["witness"] == ["a", "b", "c", "d"]


def test_flip_then_solve_flips_outcome(capsys, monkeypatch):
    doc = gen_doc(capsys, "chain", "2")
    code, flipped, _ = run(capsys, ["flip"], stdin=doc, monkeypatch=monkeypatch)
    assert code == 0
    code, out, _ = run(
        capsys, ["solve", "--json"], stdin=flipped, monkeypatch=monkeypatch
    )
    assert json.loads(out)["outcome"] == "forall"


def test_threshold_flag(capsys, monkeypatch):
    doc = gen_doc(capsys, "chain", "1")
    code, out, _ = run(
        capsys, ["threshold", "--t", "2"], stdin=doc, monkeypatch=monkeypatch
    )
    assert code == 0
    assert len(json.loads(out)["points"]) == 6


def test_bestmove_color(capsys, monkeypatch):
    doc = json.dumps(
        {
            "format": "posetlab-v1",
            "repr": "HD",
            "points": [{"id": "b", "color": "black"}],
            "edges": [],
        }
    )
    code, out, _ = run(
        capsys, ["bestmove", "--color", "black", "--json"],
        stdin=doc, monkeypatch=monkeypatch,
    )
    assert json.loads(out)["move"] == "b"


def test_value_and_outcome_class(capsys, monkeypatch):
    doc = json.dumps(
        {
            "format": "posetlab-v1",
            "repr": "HD",
            "points": [
                {"id": "b0", "color": "black"},
                {"id": "w", "color": "white"},
            ],
            "edges": [["b0", "w"]],
        }
    )
    code, out, _ = run(capsys, ["value"], stdin=doc, monkeypatch=monkeypatch)
    assert out.strip() == "1/2"
    code, out, _ = run(capsys, ["outcome-class"], stdin=doc, monkeypatch=monkeypatch)
    assert out.strip() == "L"


def test_reduce_kayles_pipe(capsys, monkeypatch):
    graph = json.dumps(
        {"format": "posetlab-graph-v1", "directed": False, "n": 2, "edges": [[0, 1]]}
    )
    code, out, _ = run(
        capsys, ["reduce", "kayles"], stdin=graph, monkeypatch=monkeypatch
    )
    assert code == 0
    code, solved, _ = run(
        capsys, ["solve", "--json"], stdin=out, monkeypatch=monkeypatch
    )
    assert json.loads(solved)["outcome"] == "exists"


def test_reduce_tqbf_report(capsys, monkeypatch):
    qbf = json.dumps(
        {"format": "posetlab-qbf-v1", "num_vars": 1, "clauses": [[1]]}
    )
    code, out, _ = run(
        capsys, ["reduce", "tqbf", "--report"], stdin=qbf, monkeypatch=monkeypatch
    )
    body = json.loads(out)
    assert body["report"]["non_waiting_nodes"] == 20


def test_domain_error_exits_one(capsys, monkeypatch):
    bad = json.dumps({"format": "posetlab-v1"})
    code, _, err = run(capsys, ["grundy"], stdin=bad, monkeypatch=monkeypatch)
    assert code == 1
    assert "error" in err


def test_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["nosuchcommand"])
    assert info.value.code == 2


def test_budget_flags(capsys, monkeypatch):
    doc = gen_doc(capsys, "antichain", "25")
    code, _, err = run(
        capsys,
        ["grundy", "--budget-positions", "50"],
        stdin=doc,
        monkeypatch=monkeypatch,
    )
    assert code == 1
    assert "50" in err or "position" in err


def test_bench_runs(capsys):
    code, out, _ = run(capsys, ["bench", "--seed", "1", "--json"])
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 4 and all("grundy" in r for r in rows)
