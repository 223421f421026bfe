"""Tests for the categorical law harness."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest

from laws import (
    Comonoid,
    clique_check,
    comonad_checks,
    comonoid_checks,
    cont,
    costar,
    costar_checks,
    der,
    diagonal_comonoid,
    dig,
    flavor_configs,
    identity,
    inclusion_check,
    laws_suite,
    naturality_checks,
    relation,
    sample_comonoids,
    sample_morphisms,
    seely_checks,
    seely_top_checks,
    structure_relations,
    weak,
)
from llsyntax import BOOL, FALSE, ONE, STAR, TRUE, OfCourse
from multiset import EMPTY, Bag
from spacecore import ALLOWED_FLAVORS, ExpFlavor, KSet, SemanticsConfig, build_space, space_g

v, f = TRUE, FALSE


def failures(records):
    return [r.check_id for r in records if r.failed]


def test_composition_is_diagrammatic():
    r = relation(BOOL, BOOL, [(v, f)], "r")
    s = relation(BOOL, ONE, [(f, STAR)], "s")
    assert r.then(s).pairs == {(v, STAR)}
    assert s.then(r).pairs == frozenset()
    assert r.then(s).name == "r;s"


def test_identity_and_converse():
    ident = identity(BOOL, 3)
    assert ident.pairs == {(v, v), (f, f)}
    assert relation(BOOL, ONE, [(v, STAR)], "g").converse().pairs == {(STAR, v)}


def test_structure_relations():
    assert (Bag((v,)), v) in der(BOOL, 5).pairs
    assert weak(BOOL).pairs == {(EMPTY, STAR)}
    d = dig(ONE, 6)
    once = Bag((STAR,))
    assert (Bag.of([STAR, STAR]), Bag.of([once, once])) in d.pairs
    assert (EMPTY, EMPTY) in d.pairs


@pytest.mark.parametrize("formula", [ONE, BOOL], ids=["1", "bool"])
def test_comonad_laws(formula):
    assert failures(comonad_checks(formula)) == []


@pytest.mark.parametrize("g", sample_morphisms(), ids=lambda g: g.name)
def test_naturality(g):
    assert failures(naturality_checks(g)) == []


def test_seely_is_a_bijection():
    assert failures(seely_checks(ONE, ONE)) == []
    assert failures(seely_checks(BOOL, ONE)) == []


@pytest.mark.parametrize("c", sample_comonoids(), ids=lambda c: c.name)
def test_comonoid_laws(c):
    assert failures(comonoid_checks(c)) == []


def test_broken_counit_is_reported():
    diagonal = diagonal_comonoid(BOOL, "bool")
    broken = Comonoid(BOOL, frozenset(), diagonal.comult, "broken")
    assert failures(comonoid_checks(broken)) == ["comonoid/counit/broken"]


def test_costar_factorization():
    c = diagonal_comonoid(BOOL, "bool")
    ident = identity(BOOL, 5)
    star = costar(c, ident, 7)
    assert (v, Bag.of([v, v])) in star.pairs
    assert (v, EMPTY) in star.pairs
    assert (v, Bag.of([v, f])) not in star.pairs
    assert failures(costar_checks(c, ident)) == []


def test_seely_top_is_an_isomorphism():
    assert failures(seely_top_checks()) == []
    assert len(seely_top_checks()) == 2


def test_flavor_configs_cover_the_semantics_matrix():
    covered = {(cfg.engine, cfg.exponential) for cfg in flavor_configs()}
    assert covered == {(engine, flavor) for engine, flavors in ALLOWED_FLAVORS.items() for flavor in flavors}


@pytest.mark.parametrize("cfg", flavor_configs(), ids=lambda cfg: cfg.describe())
def test_structure_maps_are_cliques_under_every_flavor(cfg):
    relations = [der(BOOL, 5), dig(ONE, 5), weak(BOOL), cont(ONE, 5)]
    assert failures(clique_check(f"clique/{r.name}", cfg, r) for r in relations) == []


def test_points_outside_a_uniform_web_are_left_out():
    cfg = SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_SET, card_bound=3)
    record = clique_check("clique/dig", cfg, dig(ONE, 5))
    assert not record.failed
    assert "outside the web" in record.detail


def test_every_structure_relation_of_bool_is_a_clique_under_uniform_coherence():
    cfg = SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET, card_bound=3)
    assert failures(clique_check(f"clique/{r.name}", cfg, r) for r in structure_relations(BOOL)) == []


def test_indexed_coherence_implies_cofree_coherence():
    for kset in (KSet.pair(), KSet.finite((2, 3))):
        bool_space = build_space(SemanticsConfig.multiset(kset), BOOL)
        assert not inclusion_check("bool", bool_space, kset).failed
        assert not inclusion_check("G", space_g(kset, cap=3), kset).failed


def test_full_harness():
    records = laws_suite()
    assert records
    assert failures(records) == []
