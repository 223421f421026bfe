"""Tests for the relational interpretation of proofs."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest

import config
from errors import ConfigError, ParseError, ProofCheckError
from llsyntax import BOOL, BOT, FALSE, ONE, STAR, TRUE, OfCourse, Pair, load_proof, parse_proof
from multiset import Bag
from relsem import ExpPolicy, Interp, PolicyMode, interpret, kleisli_apply, parse_interp, promote
from spacecore import ExpFlavor, KSet, SemanticsConfig

v, f = TRUE, FALSE


def proof(name: str):
    return load_proof(config.PROOF_DIR / f"{name}{config.PROOF_SUFFIX}")


def uniform(cfg: SemanticsConfig) -> ExpPolicy:
    return ExpPolicy.from_config(cfg)


def test_axiom_is_the_diagonal():
    interp = interpret(proof("id_bool"), bound=4)
    assert interp.tuples == {(v, v), (f, f)}


def test_cut_composes_on_the_witness():
    interp = interpret(proof("cut_bool"), bound=4)
    assert interp.sequent == (BOOL,)
    assert interp.tuples == {(f,)}


def test_constants():
    assert interpret(proof("one")).tuples == {(STAR,)}
    assert interpret(parse_proof("(top bool)")).tuples == frozenset()


def test_bool_twice_relational():
    interp = interpret(proof("bool_twice"), bound=12)
    assert interp.tuples == {
        (Bag.of([v, v]), v),
        (Bag.of([v, f]), v),
        (Bag.of([v, f]), f),
        (Bag.of([f, f]), f),
    }


@pytest.mark.parametrize(
    "cfg",
    [
        SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET),
        SemanticsConfig.hyper(ExpFlavor.UNIFORM_MULTISET),
        SemanticsConfig.multiset(KSet.all(), ExpFlavor.UNIFORM_MULTISET),
    ],
    ids=lambda cfg: cfg.describe(),
)
def test_bool_twice_uniform_drops_mixed_contractions(cfg):
    interp = interpret(proof("bool_twice"), uniform(cfg), bound=12)
    assert interp.tuples == {(Bag.of([v, v]), v), (Bag.of([f, f]), f)}


def test_unit_twice():
    once, twice = Bag.of([STAR]), Bag.of([STAR, STAR])
    constant = (Bag.of([twice, twice]), Pair(STAR, STAR))
    mixed = (Bag.of([once, twice]), Pair(STAR, STAR))

    relational = interpret(proof("unit_twice"), bound=12)
    assert constant in relational
    assert mixed in relational

    coh = uniform(SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET))
    restricted = interpret(proof("unit_twice"), coh, bound=12)
    assert constant in restricted
    assert mixed not in restricted


def test_dereliction_of_a_positive_point_is_empty_in_uniform_bipartite():
    p = proof("der_one")
    assert len(interpret(p, bound=8)) == 1
    assert len(interpret(p, uniform(SemanticsConfig.bipartite(uniform=True)), bound=8)) == 0


def test_weakening_appends_the_empty_bag():
    interp = interpret(proof("const_true"), bound=6)
    assert interp.tuples == {(v, Bag.of([]))}


def test_uniform_is_included_in_non_uniform():
    cfg = SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET)
    for name in ("bool_twice", "unit_twice", "prom_id"):
        assert interpret(proof(name), uniform(cfg), bound=8).tuples <= interpret(proof(name), bound=8).tuples


def test_set_based_contraction_takes_unions():
    cfg = SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_SET)
    interp = interpret(proof("bool_twice"), uniform(cfg), bound=12)
    assert interp.tuples == {(Bag.of([v]), v), (Bag.of([f]), f)}


def test_bound_must_be_positive():
    with pytest.raises(ConfigError):
        interpret(proof("one"), bound=0)


def test_ill_formed_proofs_are_rejected():
    with pytest.raises(ProofCheckError):
        interpret(parse_proof("(cut bool (one) (ax bool))"))


def test_policy_selection():
    assert ExpPolicy.from_config(SemanticsConfig.multiset(KSet.pair())).mode is PolicyMode.NON_UNIFORM
    assert ExpPolicy.from_config(SemanticsConfig.hyper(ExpFlavor.UNIFORM_SET)).set_based
    assert ExpPolicy.from_config(SemanticsConfig.bipartite(uniform=True)).mode is PolicyMode.BIPARTITE_UNIFORM
    with pytest.raises(ConfigError):
        ExpPolicy(PolicyMode.UNIFORM_SET)


def test_promotion_of_the_unit():
    interp = promote(Interp((ONE,), frozenset({(STAR,)}), 4))
    assert interp.sequent == (OfCourse(ONE),)
    assert interp.tuples == {(Bag.repeat(STAR, k),) for k in range(4)}


def test_promotion_needs_why_not_contexts():
    with pytest.raises(ProofCheckError):
        promote(Interp((BOT, ONE), frozenset({(STAR, STAR)}), 4))


def test_kleisli_application():
    fun = {(Bag.of([v]), v), (Bag.of([v, f]), f), Pair(Bag.of([]), v)}
    assert kleisli_apply(fun, {v}) == {v}
    assert kleisli_apply(fun, {v, f}) == {v, f}
    assert kleisli_apply(fun, set()) == {v}


def test_render_then_parse():
    interp = interpret(proof("bool_twice"), bound=12)
    text = interp.render()
    assert text.startswith("(sequent ")
    assert parse_interp(text) == interp


def test_parse_interp_needs_a_header():
    with pytest.raises(ParseError):
        parse_interp("(bound 3)")
