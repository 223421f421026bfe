"""Tests for verdicts, spaces, table spaces and semantics selectors."""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import config
from errors import BoundExhausted, CardinalityError, ConfigError, TableError, WebError
from llsyntax import BOOL, BOT, FALSE, ONE, STAR, TOP, TRUE, ZERO, Label, Pair, Par, Plus, Tensor, With, enum_web
from multiset import Bag, bags_over
from spacecore import (
    Engine,
    ExpFlavor,
    KSet,
    Polarity,
    SemanticsConfig,
    Verdict,
    build_space,
    incoherent_witness,
    is_weakly_reflexive,
    load_table_space,
    parse_table_space,
    polarity,
    random_table_space,
    space_g,
    verdict,
)

PAIR = SemanticsConfig.multiset(KSet.pair())
ALL = SemanticsConfig.multiset(KSet.all())
HYPER = SemanticsConfig.hyper()

a, b, c = Label("a"), Label("b"), Label("c")

mall = st.recursive(
    st.sampled_from([ONE, BOT, ZERO, TOP]),
    lambda inner: st.one_of(
        st.builds(Tensor, inner, inner),
        st.builds(Par, inner, inner),
        st.builds(With, inner, inner),
        st.builds(Plus, inner, inner),
    ),
    max_leaves=4,
)


def test_kset_selectors():
    assert KSet.parse("pair") == KSet.pair()
    assert KSet.parse("2") == KSet.pair()
    assert KSet.parse("set:2,3") == KSet.finite((3, 2))
    assert str(KSet.finite((2, 3))) == "2,3"
    assert 7 in KSet.all() and 1 not in KSet.all()
    assert KSet.all().members(4) == [2, 3, 4]
    with pytest.raises(ConfigError):
        KSet.parse("1")
    with pytest.raises(ConfigError):
        KSet.parse("many")


def test_semantics_matrix():
    assert SemanticsConfig.relational().kset is None
    assert SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET).is_uniform
    assert SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_SET).non_uniform() == PAIR
    with pytest.raises(ConfigError):
        SemanticsConfig(Engine.MULTISET)
    with pytest.raises(ConfigError):
        SemanticsConfig(Engine.RELATIONAL, ExpFlavor.INDEXED)
    with pytest.raises(ConfigError):
        SemanticsConfig.hyper(ExpFlavor.COFREE)


def test_bool_verdicts():
    assert verdict(PAIR, BOOL, Bag((TRUE, TRUE))) is Verdict.NEUTRAL
    assert verdict(PAIR, BOOL, Bag.of((TRUE, FALSE))) is Verdict.STRICT_INCOHERENT
    assert verdict(PAIR, BOOL.dual(), Bag.of((TRUE, FALSE))) is Verdict.STRICT_COHERENT
    assert verdict(HYPER, BOOL, Bag.of((TRUE, FALSE))) is Verdict.STRICT_INCOHERENT


def test_multiplicative_verdicts():
    left = Pair(TRUE, TRUE)
    right = Pair(TRUE, FALSE)
    assert verdict(PAIR, Tensor(BOOL, BOOL), Bag.of((left, right))) is Verdict.STRICT_INCOHERENT
    assert verdict(PAIR, Par(BOOL, BOOL), Bag.of((left, right))) is Verdict.STRICT_INCOHERENT
    assert verdict(PAIR, Par(BOOL.dual(), BOOL), Bag.of((left, right))) is Verdict.STRICT_INCOHERENT
    assert verdict(PAIR, Tensor(ONE, ONE), Bag.repeat(Pair(STAR, STAR), 2)) is Verdict.NEUTRAL


def test_verdict_errors():
    with pytest.raises(ConfigError):
        verdict(SemanticsConfig.relational(), BOOL, Bag((TRUE, TRUE)))
    with pytest.raises(CardinalityError):
        verdict(PAIR, BOOL, Bag((TRUE, TRUE, TRUE)))
    with pytest.raises(CardinalityError):
        verdict(HYPER, BOOL, Bag())
    with pytest.raises(WebError):
        verdict(PAIR, BOOL, Bag((STAR, STAR)))


@settings(max_examples=100, deadline=None)
@given(mall)
def test_duality_mirrors_verdicts(f):
    points = enum_web(f, 4)
    for m in bags_over(points, 2):
        assert verdict(PAIR, f.dual(), m) is verdict(PAIR, f, m).mirror()


def test_polarities():
    assert polarity(BOOL, TRUE) is Polarity.POSITIVE
    assert polarity(BOOL.dual(), TRUE) is Polarity.NEGATIVE
    assert polarity(Tensor(ONE, BOT), Pair(STAR, STAR)) is Polarity.NEGATIVE


def test_space_g_matches_the_shipped_table():
    g = load_table_space(config.SPACE_DIR / "G.tbs")
    assert g.table == space_g().table
    assert is_weakly_reflexive(g)
    assert g.verdict(Bag((a, a))) is Verdict.NEUTRAL
    assert g.verdict(Bag((a, b))) is Verdict.STRICT_COHERENT
    assert g.verdict(Bag((a, b, c))) is Verdict.STRICT_INCOHERENT
    assert g.verdict(Bag((a, a, b, c))) is Verdict.STRICT_INCOHERENT


def test_table_cap_and_set_reading():
    g = space_g()
    with pytest.raises(BoundExhausted):
        verdict(ALL, g, Bag((a,) * 7))
    as_sets = g.as_engine(Engine.SET)
    assert as_sets.verdict(Bag((b, c))) is Verdict.STRICT_COHERENT
    assert as_sets.verdict(Bag((a,))) is Verdict.NEUTRAL


def test_malformed_tables():
    with pytest.raises(TableError):
        parse_table_space("web: a b\nK: pair\nverdict (bag a a) neutral\n")
    with pytest.raises(TableError):
        parse_table_space("web: a\nK: pair\ncolour (bag a a) neutral\n")
    with pytest.raises(TableError):
        parse_table_space("web: a\nK: all\nsupport (set a) neutral\n")


def test_neutral_pair_breaks_weak_reflexivity():
    table = parse_table_space(
        "web: a b\nK: pair\nsupport (set a) neutral\nsupport (set b) neutral\nsupport (set a b) neutral\n"
    )
    assert not is_weakly_reflexive(table)


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=10_000), st.integers(min_value=1, max_value=4))
def test_random_tables_are_weakly_reflexive(seed, n_labels):
    space = random_table_space(random.Random(seed), n_labels, KSet.finite((2, 3)))
    assert is_weakly_reflexive(space)


def test_incoherent_witness():
    space = build_space(PAIR, BOOL)
    assert incoherent_witness(space, [TRUE, FALSE]) == Bag.of((TRUE, FALSE))
    assert incoherent_witness(space, [TRUE]) is None
