"""Tests for the command-line front end."""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest

import config
from errors import ConfigError
from llsyntax import STAR, Pair, load_proof, render_tuple
from main import main, semantics_config
from multiset import Bag
from relsem import interpret
from spacecore import Engine, ExpFlavor, KSet

PROOFS = config.PROOF_DIR
INTERACT = config.INTERACT_DIR
BERRY = str(config.FORMULA_DIR / "berry.llf")
BERRY_POINTS = str(config.CLIQUE_DIR / "berry.pts")


@pytest.fixture(autouse=True)
def log_dir(tmp_path, monkeypatch):
    """Keep log files out of the project tree."""
    monkeypatch.setattr(config, "LOG_DIR", tmp_path / "logs")
    return tmp_path / "logs"


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_semantics_selectors():
    assert semantics_config("coh").kset == KSet.pair()
    assert semantics_config("multi").kset == KSet.all()
    assert semantics_config("coh", kset="set:2,3").kset == KSet.finite((2, 3))
    assert semantics_config("multi", exponential="indexed").exponential is ExpFlavor.INDEXED
    assert semantics_config("hyper").engine is Engine.SET
    assert semantics_config("coh", card_bound=9).card_bound == 9
    with pytest.raises(ConfigError):
        semantics_config("rel", kset="pair")
    with pytest.raises(ConfigError):
        semantics_config("coh-uniform", exponential="indexed")


def test_verdict_command(capsys):
    code, out = run(
        capsys,
        "verdict",
        "(ofc bool)",
        "(bag (bag (inl *)) (bag (inl *) (inl *)))",
        "--semantics",
        "multi",
    )
    assert code == 0
    assert out.strip() == "coherent-strict"


def test_k_on_relational_is_a_usage_error(capsys):
    code, _ = run(capsys, "verdict", "bool", "(bag (inl *))", "--semantics", "rel", "--K", "pair")
    assert code == 2


def test_verdict_above_the_table_cap(capsys):
    table = str(config.SPACE_DIR / "G.tbs")
    code, _ = run(capsys, "verdict", table, "(bag a a a a a a a)", "--semantics", "multi")
    assert code == 3


def test_errors_as_json(capsys):
    code, out = run(capsys, "verdict", "bool", "(inl *)", "--output", "json")
    assert code == 2
    assert json.loads(out)["error"] == "web"


def test_interpret_bool_twice(capsys):
    code, out = run(capsys, "interpret", str(PROOFS / "bool_twice.llp"), "--semantics", "coh-uniform", "--output", "json")
    assert code == 0
    record = json.loads(out)
    assert record["semantics"] == "coh-uniform"
    assert len(record["tuples"]) == 2


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--semantics", "rel", "--bound", "12"], 4),
        (["--semantics", "coh-uniform", "--K", "pair", "--bound", "12"], 2),
    ],
    ids=["rel", "coh-uniform"],
)
def test_interpret_bool_twice_from_the_project_root(monkeypatch, capsys, argv, expected):
    monkeypatch.chdir(config.PROJECT_ROOT)
    code, out = run(capsys, "interpret", "corpus/proofs/bool_twice.llp", *argv, "--output", "json")
    assert code == 0
    assert len(json.loads(out)["tuples"]) == expected


def test_compare_unit_twice_keeps_mixed_bags_on_the_relational_side(monkeypatch, capsys):
    monkeypatch.chdir(config.PROJECT_ROOT)
    once, twice = Bag.of([STAR]), Bag.of([STAR, STAR])
    mixed = render_tuple((Bag.of([once, twice]), Pair(STAR, STAR)))
    code, out = run(capsys, "compare", "corpus/proofs/unit_twice.llp", "rel", "coh-uniform", "--output", "json")
    assert code == 0
    record = json.loads(out)
    assert mixed in record["rel"]
    assert mixed not in record["coh-uniform"]


def test_interpret_text_output(capsys):
    code, out = run(capsys, "interpret", str(PROOFS / "one.llp"), "--semantics", "rel")
    assert code == 0
    assert out.startswith("; semantics rel")
    assert "(sequent 1)" in out


def test_dereliction_under_uniform_bipartite(capsys):
    code, out = run(capsys, "interpret", str(PROOFS / "der_one.llp"), "--semantics", "bipartite-uniform", "--output", "json")
    assert code == 0
    assert json.loads(out)["tuples"] == []


def test_malformed_proof(tmp_path, capsys):
    bad = tmp_path / "bad.llp"
    bad.write_text("(frobnicate (one))", encoding="utf-8")
    code, _ = run(capsys, "interpret", str(bad))
    assert code == 2


def test_clique_command(capsys):
    code, out = run(capsys, "clique", BERRY, BERRY_POINTS, "--K", "set:2,3", "--exponential", "indexed")
    assert code == 0
    assert out.strip() == "clique"

    code, out = run(capsys, "clique", BERRY, BERRY_POINTS, "--K", "set:2,3")
    assert code == 1
    assert out.startswith("not-clique witness")


def test_neutral_command(capsys):
    code, out = run(capsys, "neutral", "(ofc bool)", "(bag (inl *) (inl *))")
    assert code == 0
    assert out.strip() == "true"
    code, out = run(capsys, "neutral", "(ofc bool)", "(bag (inl *) (inr *))")
    assert out.strip() == "false"


def test_restrict_command(tmp_path, capsys):
    interp = interpret(load_proof(PROOFS / "bool_twice.llp"), bound=12)
    path = tmp_path / "bool_twice.llx"
    path.write_text(interp.render(), encoding="utf-8")
    code, out = run(capsys, "restrict", str(path), "--output", "json")
    assert code == 0
    assert len(json.loads(out)["tuples"]) == 2


def test_interact_command(capsys):
    code, out = run(capsys, "interact", str(INTERACT / "unit-left.llp"), str(INTERACT / "unit-right.llp"))
    assert code == 0
    assert out.strip() == "give-up *"


def test_compare_command(capsys):
    code, out = run(capsys, "compare", str(PROOFS / "bool_twice.llp"), "coh", "coh-uniform")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert all(line.startswith("< ") for line in lines)

    code, out = run(capsys, "compare", str(PROOFS / "one.llp"), "coh", "coh-uniform")
    assert out.strip() == "same interpretation"


def test_log_file_is_written(log_dir, capsys):
    run(capsys, "neutral", "bool", "(inl *)")
    assert list(log_dir.glob("llsem_*.log"))
