"""Tests for the s-expression syntax of formulas, points and proofs."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import config
from errors import ParseError, ProofCheckError
from llsyntax import (
    BOOL,
    BOT,
    FALSE,
    ONE,
    STAR,
    TOP,
    TRUE,
    ZERO,
    Label,
    OfCourse,
    Pair,
    Par,
    Plus,
    Tensor,
    WhyNot,
    With,
    check_proof,
    enum_web,
    lolli,
    nat,
    parse_formula,
    parse_point,
    parse_point_set,
    parse_proof,
    point_in_web,
    render_formula,
    render_proof,
    uses_sum,
)
from multiset import Bag

formulas = st.recursive(
    st.sampled_from([ONE, BOT, ZERO, TOP]),
    lambda inner: st.one_of(
        st.builds(Tensor, inner, inner),
        st.builds(Par, inner, inner),
        st.builds(With, inner, inner),
        st.builds(Plus, inner, inner),
        st.builds(OfCourse, inner),
        st.builds(WhyNot, inner),
    ),
    max_leaves=8,
)

BOOL_TWICE = config.PROOF_DIR / "bool_twice.llp"


def test_bool_and_nat():
    assert parse_formula("bool") == BOOL
    assert nat(2) == BOOL
    assert render_formula(BOOL) == "(plus 1 1)"


def test_lolli_is_par_of_the_dual():
    assert parse_formula("(lolli 1 bool)") == Par(BOT, BOOL)
    assert lolli(BOOL, BOOL) == Par(With(BOT, BOT), BOOL)


def test_dual_of_exponential():
    assert parse_formula("(ofc bool)").dual() == parse_formula("(why (with bot bot))")
    assert parse_formula("(dual (ofc 1))") == WhyNot(BOT)


@settings(max_examples=200)
@given(formulas)
def test_dual_is_an_involution(f):
    assert f.dual().dual() == f
    assert parse_formula(render_formula(f)) == f


@pytest.mark.parametrize("text", ["(tensor 1)", "(frobnicate 1 1)", "(tensor 1 1", "1 1", "(nat x)"])
def test_malformed_formulas(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_nat_zero_reports_its_position():
    with pytest.raises(ParseError) as excinfo:
        parse_formula("(tensor 1 (nat 0))")
    assert excinfo.value.position == 15
    assert "position 15" in str(excinfo.value)
    with pytest.raises(ParseError):
        nat(0)


def test_points():
    assert parse_point("*") == STAR
    assert parse_point("(bag (inl *) (inl *))") == Bag((TRUE, TRUE))
    assert parse_point("(bag (inl *) (inl *))").size() == 5
    assert parse_point("(pair a (inr *))") == Pair(Label("a"), FALSE)


def test_point_set_with_comments():
    points = parse_point_set("# two booleans\n(inl *)\n(inr *)  ; and nothing else\n")
    assert points == frozenset({TRUE, FALSE})


def test_webs():
    assert enum_web(BOOL, 2) == frozenset({TRUE, FALSE})
    assert enum_web(ONE, 0) == frozenset()
    assert enum_web(TOP, 5) == frozenset()
    assert len(enum_web(OfCourse(ONE), 3)) == 3
    assert point_in_web(WhyNot(With(BOT, BOT)), Bag((TRUE, FALSE)))
    assert not point_in_web(BOOL, STAR)


def test_bool_twice_conclusion():
    proof = parse_proof(BOOL_TWICE.read_text(encoding="utf-8"))
    assert check_proof(proof) == (WhyNot(With(BOT, BOT)), BOOL)
    assert not uses_sum(proof)
    assert parse_proof(render_proof(proof)) == proof


def test_sum_and_para_rules():
    proof = parse_proof("(sum (plus1 (one) 1) (plus2 (one) 1))")
    assert check_proof(proof) == (BOOL,)
    assert uses_sum(proof)
    assert check_proof(parse_proof("(giveup)")) == ()
    assert check_proof(parse_proof("(diverge bot 1)")) == (BOT, ONE)


@pytest.mark.parametrize(
    "text",
    [
        "(cont (der (one)))",
        "(prom (ax 1))",
        "(weak (one) bot)",
        "(with (one) (bot (one)))",
        "(sum (one) (plus1 (one) 1))",
        "(ex 3 (one))",
        "(cut 1 (one) (one))",
    ],
)
def test_rejected_proofs(text):
    with pytest.raises(ProofCheckError):
        check_proof(parse_proof(text))


def test_error_names_the_rule_and_position():
    with pytest.raises(ProofCheckError) as raised:
        check_proof(parse_proof("(bot (prom (ax 1)))"))
    assert raised.value.rule == "prom"
    assert raised.value.path == "root/0"
