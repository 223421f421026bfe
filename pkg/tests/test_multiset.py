"""Tests for bags, sections and column decompositions."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import BoundExhausted
from multiset import (
    EMPTY,
    Bag,
    bag_sum,
    bags_over,
    bags_with_support,
    column_decompositions,
    sections,
    set_sections,
)

labels = st.sampled_from("abcd")
bags = st.lists(labels, max_size=6).map(Bag.of)


def test_bag_is_canonical():
    assert Bag.of("ba") == Bag.of("ab")
    assert str(Bag.of("ba")) == "(bag a b)"
    assert str(EMPTY) == "(bag)"


def test_counts_and_support():
    bag = Bag.of("aab")
    assert bag.count("a") == 2
    assert bag.support() == frozenset("ab")
    assert not bag.is_set()
    assert Bag.of("ab").is_set()


def test_sub_bags_are_listed_once():
    assert set(Bag.of("aab").sub_bags(2)) == {Bag.of("aa"), Bag.of("ab")}


def test_bags_with_exact_support():
    assert list(bags_with_support("ab", 3)) == [Bag.of("aab"), Bag.of("abb")]
    assert list(bags_with_support("abc", 2)) == []


def test_bags_over_counts_multisets():
    # multisets of size 2 over 3 labels
    assert len(list(bags_over("abc", 2))) == 6


def test_sections_pick_one_per_component():
    mu = [Bag.of("ab"), Bag.of("c")]
    assert sections(mu) == {Bag.of("ac"), Bag.of("bc")}
    assert sections([Bag.of("a"), EMPTY]) == set()


def test_set_sections():
    found = set_sections([frozenset("ab"), frozenset("c")])
    assert found == {frozenset("ac"), frozenset("bc"), frozenset("abc")}


def test_column_decompositions():
    mu = [Bag.of("ab"), Bag.of("ab")]
    assert len(list(column_decompositions(mu))) == 2
    constant = list(column_decompositions(mu, column_filter=lambda column: len(set(column)) == 1))
    assert constant == [(("a", "a"), ("b", "b"))]


def test_column_decompositions_need_equal_rows():
    assert list(column_decompositions([Bag.of("ab"), Bag.of("c")])) == []


def test_column_decomposition_budget():
    with pytest.raises(BoundExhausted):
        list(column_decompositions([Bag.of("ab"), Bag.of("ab")], budget=1))


@settings(max_examples=200)
@given(st.lists(bags, max_size=4))
def test_sum_adds_counts(parts):
    total = bag_sum(parts)
    assert len(total) == sum(len(p) for p in parts)
    assert total.support() == frozenset().union(*(p.support() for p in parts))
    assert all(p.is_sub_bag(total) for p in parts)


@given(bags, bags)
def test_sum_is_commutative(a, b):
    assert a + b == b + a
