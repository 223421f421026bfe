"""Tests for the corpus loaders and space expressions."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest

from corpus import (
    closure_config,
    load_cutelim_pairs,
    load_interaction_pairs,
    load_proofs,
    load_spaces,
    space_expression,
)
from errors import ParseError
from expon import CoFreeBang
from llsyntax import BOOL, Formula, OfCourse, dual
from neutral import SupportClosureSpace
from spacecore import Engine, ExpFlavor, KSet, SemanticsConfig, Space, space_g

TABLES = {"G": space_g()}


def test_proof_corpus():
    proofs = load_proofs()
    assert len(proofs) >= 10
    assert {"bool_twice", "unit_twice", "der_one", "one"} <= set(proofs)
    for name, proof in proofs.items():
        assert proof.conclusion, name


def test_interaction_pairs_are_dual():
    pairs = load_interaction_pairs()
    assert "unit" in pairs
    for name, (left, right) in pairs.items():
        (a,) = left.conclusion
        assert right.conclusion == (dual(a),), name


def test_cut_elimination_pairs_share_conclusions():
    pairs = load_cutelim_pairs()
    assert len(pairs) >= 5
    for name, (before, after) in pairs.items():
        assert before.conclusion == after.conclusion, name


def test_missing_partner(tmp_path):
    (tmp_path / "lonely-left.llp").write_text("(one)", encoding="utf-8")
    with pytest.raises(ParseError):
        load_interaction_pairs(tmp_path)


def test_shipped_spaces():
    spaces = load_spaces()
    assert set(spaces) == {"G"}
    assert spaces["G"].name == "G"


def test_plain_formulas_stay_formulas():
    result = space_expression(SemanticsConfig.multiset(KSet.pair()), "(ofc bool)", TABLES)
    assert isinstance(result, Formula)
    assert result == OfCourse(BOOL)


def test_table_atoms_build_spaces():
    cfg = SemanticsConfig.multiset(KSet.all())
    result = space_expression(cfg, "(lolli (ofc G) bool)", TABLES)
    assert isinstance(result, Space)
    assert isinstance(space_expression(cfg, "(ofc G)", TABLES), CoFreeBang)


def test_closure_under_hypercoherences():
    result = space_expression(SemanticsConfig.hyper(), "(closure (ofc G))", TABLES)
    assert isinstance(result, SupportClosureSpace)
    assert result.engine is Engine.SET


def test_closure_needs_hypercoherences():
    with pytest.raises(ParseError):
        space_expression(SemanticsConfig.multiset(KSet.all()), "(closure (ofc G))", TABLES)


def test_unknown_space_operator():
    with pytest.raises(ParseError):
        space_expression(SemanticsConfig.multiset(KSet.all()), "(frobnicate G)", TABLES)


def test_closure_config():
    cfg = closure_config(SemanticsConfig.hyper(ExpFlavor.UNIFORM_SET))
    assert cfg.engine is Engine.MULTISET
    assert cfg.kset == KSet.all()
    assert cfg.exponential is ExpFlavor.UNIFORM_SET
    assert closure_config(SemanticsConfig.hyper()).exponential is ExpFlavor.COFREE
