"""Tests for the exponential flavors."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest

from errors import ConfigError
from expon import (
    CoFreeBang,
    HyperBang,
    IndexedBang,
    PosBang,
    UniformBang,
    UniformSetBang,
    bang,
    cofree_verdict,
    indexed_verdict,
    nuh_verdict,
    uniform_web_member,
)
from llsyntax import BOOL, FALSE, TRUE, Label, OfCourse
from multiset import EMPTY, Bag
from spacecore import ExpFlavor, KSet, SemanticsConfig, Verdict, build_space, space_g, verdict

PAIR = SemanticsConfig.multiset(KSet.pair())
ALL = SemanticsConfig.multiset(KSet.all())
HYPER = SemanticsConfig.hyper()

a, b, c = Label("a"), Label("b"), Label("c")
v, f = TRUE, FALSE


def bag(*components) -> Bag:
    return Bag.of(Bag.of(component) for component in components)


@pytest.fixture
def bool_space():
    return build_space(PAIR, BOOL)


@pytest.fixture
def bang_g():
    return bang(space_g(), ALL)


def test_flavor_dispatch():
    assert isinstance(build_space(PAIR, OfCourse(BOOL)), CoFreeBang)
    indexed = SemanticsConfig.multiset(KSet.pair(), ExpFlavor.INDEXED)
    assert isinstance(build_space(indexed, OfCourse(BOOL)), IndexedBang)
    uniform = SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET)
    assert isinstance(build_space(uniform, OfCourse(BOOL)), UniformBang)
    assert isinstance(build_space(HYPER, OfCourse(BOOL)), HyperBang)
    assert isinstance(build_space(SemanticsConfig.bipartite(uniform=True), OfCourse(BOOL)), PosBang)


def test_flavor_must_match_the_engine():
    with pytest.raises(ConfigError):
        bang(build_space(HYPER, BOOL), PAIR)


def test_cofree_bool(bool_space):
    assert cofree_verdict(bool_space, bag([v], [f])) is Verdict.STRICT_INCOHERENT
    assert cofree_verdict(bool_space, bag([v, v], [v, v])) is Verdict.NEUTRAL
    assert cofree_verdict(bool_space, bag([v], [v])) is Verdict.NEUTRAL
    assert cofree_verdict(bool_space, bag([], [])) is Verdict.NEUTRAL


def test_multiplicity_counts_in_all_k():
    mu = bag([v], [v, v])
    assert verdict(ALL, OfCourse(BOOL), mu) is Verdict.STRICT_COHERENT


def test_verdict_table_over_g(bang_g):
    assert verdict(ALL, bang_g, bag([a], [b, c])) is Verdict.STRICT_COHERENT
    assert verdict(ALL, bang_g, bag([a], [b, c], [b, c])) is Verdict.STRICT_INCOHERENT
    assert verdict(ALL, bang_g, bag([a], [a], [b, c])) is Verdict.STRICT_COHERENT
    assert verdict(ALL, bang_g, bag([a, b, c], [a, b, c], [a, b, c])) is Verdict.STRICT_INCOHERENT


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_supports_ab_ac_are_incoherent_from_three_on(bang_g, k):
    for n_ab in range(1, k):
        mu = Bag.of([Bag((a, b))] * n_ab + [Bag((a, c))] * (k - n_ab))
        assert verdict(ALL, bang_g, mu) is Verdict.STRICT_INCOHERENT


def test_indexed_bool(bool_space):
    assert indexed_verdict(bool_space, bag([v], [f])) is Verdict.STRICT_INCOHERENT
    assert indexed_verdict(bool_space, bag([v], [])) is Verdict.STRICT_COHERENT
    assert indexed_verdict(bool_space, bag([], [])) is Verdict.NEUTRAL
    assert indexed_verdict(bool_space, bag([v, v], [v])) is Verdict.NEUTRAL


def test_uniform_webs(bool_space):
    uniform = UniformBang(bool_space, PAIR)
    assert uniform.contains(Bag((v, v)))
    assert uniform.contains(EMPTY)
    assert not uniform.contains(Bag.of((v, f)))
    assert not uniform_web_member(bool_space, Bag.of((v, f)))
    assert not UniformSetBang(bool_space, PAIR).contains(Bag((v, v)))
    assert UniformSetBang(bool_space, PAIR).contains(Bag((v,)))


def test_non_uniform_hypercoherence():
    body = build_space(HYPER, BOOL)
    assert nuh_verdict(body, Bag((Bag.of((v, f)),))) is Verdict.STRICT_INCOHERENT
    assert nuh_verdict(body, Bag((Bag((v,)),))) is Verdict.NEUTRAL
    assert nuh_verdict(body, Bag.of((Bag((v,)), Bag((v, v))))) is Verdict.STRICT_COHERENT


def test_positive_bags_only():
    bip = SemanticsConfig.bipartite(uniform=True)
    negative = build_space(bip, BOOL.dual())
    pos = PosBang(negative, bip)
    assert pos.contains(EMPTY)
    assert not pos.contains(Bag((v,)))
