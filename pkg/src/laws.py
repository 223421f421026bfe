"""
Categorical laws checked on materialized relations.

Relations are finite sets of pairs of points, exhaustive for endpoints of
size <= bound. Composition is diagrammatic: ``r.then(s)`` relates a to c when
(a, b) is in r and (b, c) in s. Every equality is checked on the pairs whose
endpoints are below the law bound, after computing both sides with middle
points up to the larger witness bound.
"""

from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

import config
from expon import cofree_verdict, indexed_verdict
from llsyntax import (
    BOOL,
    ONE,
    STAR,
    TOP,
    Formula,
    Inl,
    Inr,
    OfCourse,
    Pair,
    Tensor,
    With,
    enum_web,
    lolli,
    nat,
    render_formula,
)
from logger_config import get_logger
from multiset import EMPTY, Bag, bag_sum, bags_over, render_element, sort_elements
from neutral import neutral_member
from spacecore import (
    ExpFlavor,
    KSet,
    SemanticsConfig,
    Space,
    Verdict,
    build_space,
    space_g,
)
from verify import CheckRecord, CliqueStatus, failed, is_clique, passed, run_checks

logger = get_logger(__name__)

COMPOSITION = "diagrammatic: r ; s relates a to c through a middle point b"


# ============================================================================
# RELATIONS
# ============================================================================


@dataclass(frozen=True)
class Relation:
    """A morphism source -> target of Rel, i.e. a subset of |source -o target|."""

    source: Formula
    target: Formula
    pairs: FrozenSet[Tuple[object, object]]
    name: str = "r"

    def then(self, other: "Relation", name: Optional[str] = None) -> "Relation":
        by_middle: Dict[object, List[object]] = {}
        for b, c in other.pairs:
            by_middle.setdefault(b, []).append(c)
        pairs = frozenset((a, c) for a, b in self.pairs for c in by_middle.get(b, ()))
        return Relation(self.source, other.target, pairs, name or f"{self.name};{other.name}")

    def below(self, bound: int) -> FrozenSet[Tuple[object, object]]:
        return frozenset((a, b) for a, b in self.pairs if a.size() <= bound and b.size() <= bound)

    def converse(self, name: Optional[str] = None) -> "Relation":
        return Relation(self.target, self.source, frozenset((b, a) for a, b in self.pairs), name or f"{self.name}^-1")

    def mapped(self, fn: Callable[[object], object], target: Formula) -> "Relation":
        return Relation(self.source, target, frozenset((a, fn(b)) for a, b in self.pairs), self.name)

    def points(self) -> FrozenSet[Pair]:
        """The relation as a subset of the web of source -o target."""
        return frozenset(Pair(a, b) for a, b in self.pairs)

    def image(self, a) -> List[object]:
        return [b for x, b in self.pairs if x == a]


def relation(source: Formula, target: Formula, pairs: Iterable, name: str) -> Relation:
    return Relation(source, target, frozenset(pairs), name)


def identity(f: Formula, bound: int) -> Relation:
    return relation(f, f, ((a, a) for a in enum_web(f, bound)), f"id[{render_formula(f)}]")


def tensor_rel(r: Relation, s: Relation) -> Relation:
    pairs = ((Pair(a, c), Pair(b, d)) for a, b in r.pairs for c, d in s.pairs)
    return relation(Tensor(r.source, s.source), Tensor(r.target, s.target), pairs, f"({r.name} x {s.name})")


# ============================================================================
# EXPONENTIAL STRUCTURE
# ============================================================================


def der(f: Formula, bound: int) -> Relation:
    """!A -> A: ([a], a)."""
    pairs = ((Bag((a,)), a) for a in enum_web(f, bound - 1))
    return relation(OfCourse(f), f, pairs, f"der[{render_formula(f)}]")


def dig(f: Formula, bound: int) -> Relation:
    """!A -> !!A: (mu_1 + ... + mu_n, [mu_1, ..., mu_n])."""
    pairs = []
    for family in enum_web(OfCourse(OfCourse(f)), bound):
        total = bag_sum(family)
        if total.size() <= bound:
            pairs.append((total, family))
    return relation(OfCourse(f), OfCourse(OfCourse(f)), pairs, f"dig[{render_formula(f)}]")


def weak(f: Formula) -> Relation:
    """!A -> 1: ([], *)."""
    return relation(OfCourse(f), ONE, [(EMPTY, STAR)], f"weak[{render_formula(f)}]")


def cont(f: Formula, bound: int) -> Relation:
    """!A -> !A (x) !A: (mu + nu, (mu, nu))."""
    pairs = []
    bags = enum_web(OfCourse(f), bound - 2)
    for mu in bags:
        for nu in bags:
            target = Pair(mu, nu)
            if target.size() <= bound and (mu + nu).size() <= bound:
                pairs.append((mu + nu, target))
    return relation(OfCourse(f), Tensor(OfCourse(f), OfCourse(f)), pairs, f"cont[{render_formula(f)}]")


def _bag_pairs(pairs: Iterable[Tuple[object, object]], bound: int) -> Iterable[Tuple[Bag, Bag]]:
    """Every finite bag of pairs, unzipped, with both sides of size <= bound."""
    ordered = sort_elements(pairs)
    chosen: List[Tuple[object, object]] = []

    def extend(start: int, left: int, right: int):
        yield Bag.of(a for a, _ in chosen), Bag.of(b for _, b in chosen)
        for i in range(start, len(ordered)):
            a, b = ordered[i]
            if left + a.size() <= bound and right + b.size() <= bound:
                chosen.append(ordered[i])
                yield from extend(i, left + a.size(), right + b.size())
                chosen.pop()

    yield from extend(0, 1, 1)


def bang_map(r: Relation, bound: int) -> Relation:
    """!r: ([a_1, ..., a_n], [b_1, ..., b_n]) for (a_i, b_i) in r."""
    return relation(OfCourse(r.source), OfCourse(r.target), _bag_pairs(r.pairs, bound), f"!{r.name}")


def seely(a: Formula, b: Formula, bound: int) -> Relation:
    """!(A & B) -> !A (x) !B: (inl mu + inr nu, (mu, nu))."""
    pairs = []
    for mu in enum_web(OfCourse(a), bound - 2):
        for nu in enum_web(OfCourse(b), bound - 2):
            target = Pair(mu, nu)
            source = Bag.of([Inl(x) for x in mu] + [Inr(y) for y in nu])
            if target.size() <= bound and source.size() <= bound:
                pairs.append((source, target))
    name = f"seely[{render_formula(a)},{render_formula(b)}]"
    return relation(OfCourse(With(a, b)), Tensor(OfCourse(a), OfCourse(b)), pairs, name)


def seely_top() -> Relation:
    """!top -> 1: ([], *)."""
    return relation(OfCourse(TOP), ONE, [(EMPTY, STAR)], "seely[top]")


# ============================================================================
# COMONOIDS AND THE CO-FREE FACTORIZATION
# ============================================================================


@dataclass(frozen=True)
class Comonoid:
    """A commutative comonoid (M, u, mu) of Rel on the web of ``carrier``."""

    carrier: Formula
    counit: FrozenSet[Tuple[object, object]]
    comult: FrozenSet[Tuple[object, object]]
    name: str = "M"

    def points(self) -> FrozenSet:
        return enum_web(self.carrier, config.LAW_BOUND)

    def counit_rel(self) -> Relation:
        return Relation(self.carrier, ONE, self.counit, f"u[{self.name}]")

    def comult_rel(self) -> Relation:
        return Relation(self.carrier, Tensor(self.carrier, self.carrier), self.comult, f"m[{self.name}]")

    def n_ary(self, n: int) -> FrozenSet[Tuple[object, tuple]]:
        """The n-fold comultiplication as pairs (m, (m_1, ..., m_n))."""
        if n == 0:
            return frozenset((m, ()) for m, _ in self.counit)
        if n == 1:
            return frozenset((m, (m,)) for m in self.points())
        rest: Dict[object, List[tuple]] = {}
        for m, ms in self.n_ary(n - 1):
            rest.setdefault(m, []).append(ms)
        return frozenset(
            (m, (p.left,) + ms) for m, p in self.comult for ms in rest.get(p.right, ())
        )


def diagonal_comonoid(f: Formula, name: str) -> Comonoid:
    points = enum_web(f, config.LAW_BOUND)
    return Comonoid(
        f,
        frozenset((p, STAR) for p in points),
        frozenset((p, Pair(p, p)) for p in points),
        name,
    )


def sample_comonoids() -> List[Comonoid]:
    trivial = Comonoid(ONE, frozenset({(STAR, STAR)}), frozenset({(STAR, Pair(STAR, STAR))}), "one")
    return [trivial, diagonal_comonoid(BOOL, "bool"), diagonal_comonoid(nat(3), "nat3")]


def costar(c: Comonoid, f: Relation, bound: int) -> Relation:
    """
    The factorization f* : M -> !A of f : M -> A through der.

    (m, [a_1, ..., a_n]) is in f* when (m, (m_1, ..., m_n)) is in the n-fold
    comultiplication and every (m_i, a_i) is in f.
    """
    images = {m: f.image(m) for m in c.points()}
    pairs = set()
    n = 0
    while n + 1 <= bound:
        for m, ms in c.n_ary(n):
            for choice in product(*(images.get(x, []) for x in ms)):
                result = Bag.of(choice)
                if result.size() <= bound:
                    pairs.add((m, result))
        n += 1
    return relation(c.carrier, OfCourse(f.target), pairs, f"{f.name}*")


# ============================================================================
# SAMPLE MORPHISMS
# ============================================================================

TRUE_, FALSE_ = Inl(STAR), Inr(STAR)


def sample_morphisms() -> List[Relation]:
    return [
        relation(BOOL, BOOL, [(TRUE_, TRUE_), (FALSE_, FALSE_)], "id"),
        relation(BOOL, BOOL, [(TRUE_, FALSE_), (FALSE_, TRUE_)], "neg"),
        relation(ONE, BOOL, [(STAR, TRUE_)], "const_v"),
        relation(BOOL, ONE, [(TRUE_, STAR), (FALSE_, STAR)], "erase"),
        relation(BOOL, Tensor(BOOL, BOOL), [(TRUE_, Pair(TRUE_, TRUE_)), (FALSE_, Pair(FALSE_, FALSE_))], "copy"),
    ]


def law_configs() -> List[SemanticsConfig]:
    return [
        SemanticsConfig.multiset(KSet.pair(), card_bound=config.LAW_CARD_BOUND),
        SemanticsConfig.multiset(KSet.finite((2, 3)), card_bound=config.LAW_CARD_BOUND),
        SemanticsConfig.hyper(card_bound=config.LAW_CARD_BOUND),
    ]


def flavor_configs() -> List[SemanticsConfig]:
    """Every engine/exponential pair of the semantics matrix, for cliquehood of the structure maps."""
    bound = config.LAW_CARD_BOUND
    return [
        SemanticsConfig.relational(),
        SemanticsConfig.multiset(KSet.pair(), card_bound=bound),
        SemanticsConfig.multiset(KSet.finite((2, 3)), card_bound=bound),
        SemanticsConfig.multiset(KSet.all(), card_bound=bound),
        SemanticsConfig.multiset(KSet.finite((2, 3)), ExpFlavor.INDEXED, card_bound=bound),
        SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET, card_bound=bound),
        SemanticsConfig.multiset(KSet.all(), ExpFlavor.UNIFORM_MULTISET, card_bound=bound),
        SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_SET, card_bound=bound),
        SemanticsConfig.hyper(card_bound=bound),
        SemanticsConfig.hyper(ExpFlavor.UNIFORM_MULTISET, card_bound=bound),
        SemanticsConfig.hyper(ExpFlavor.UNIFORM_SET, card_bound=bound),
        SemanticsConfig.bipartite(),
        SemanticsConfig.bipartite(uniform=True),
    ]


# ============================================================================
# CHECKS
# ============================================================================


def equality_check(check_id: str, left: Relation, right: Relation, bound: int = config.LAW_BOUND) -> CheckRecord:
    """Relation equality on endpoints of size <= bound."""
    a, b = left.below(bound), right.below(bound)
    if a == b:
        return passed(check_id, "rel", detail=f"{len(a)} pair(s)")
    extra = sort_elements(a ^ b)
    x, y = extra[0]
    side = left.name if (x, y) in a else right.name
    return failed(check_id, "rel", f"({render_element(x)}, {render_element(y)}) only in {side}")


def clique_check(check_id: str, cfg: SemanticsConfig, r: Relation, bound: int = config.LAW_BOUND) -> CheckRecord:
    """
    Cliquehood of a relation, restricted to endpoints below bound, in source -o target.

    Uniform and positive exponentials have smaller webs: only the points of r
    inside the web of source -o target are checked (the restriction is the
    uniform counterpart of r).
    """
    space = build_space(cfg, lolli(r.source, r.target))
    everything = frozenset(Pair(a, b) for a, b in r.below(bound))
    points = frozenset(p for p in everything if space.contains(p))
    report = is_clique(cfg, space, points, cfg.card_bound)
    if not report.is_clique:
        return failed(check_id, cfg.describe(), str(report.witness))
    detail = f"{len(points)} point(s)"
    if len(points) < len(everything):
        detail += f", {len(everything) - len(points)} outside the web"
    return passed(check_id, cfg.describe(), report.status is CliqueStatus.CLIQUE, detail)


def structure_relations(f: Formula, bound: int = config.LAW_BOUND) -> List[Relation]:
    relations = [der(f, bound), dig(f, bound), weak(f), cont(f, bound)]
    relations += [bang_map(g, bound) for g in sample_morphisms()]
    relations += [seely(ONE, ONE, bound), seely(f, ONE, bound), seely_top()]
    return relations


def comonad_checks(f: Formula) -> List[CheckRecord]:
    """Counit and coassociativity laws of (!, der, dig) on f."""
    w = config.LAW_WITNESS_BOUND
    name = render_formula(f)
    d = dig(f, w)
    ofc = OfCourse(f)
    return [
        equality_check(f"comonad/dig;der!/{name}", d.then(der(ofc, w)), identity(ofc, w)),
        equality_check(f"comonad/dig;!der/{name}", d.then(bang_map(der(f, w), w)), identity(ofc, w)),
        equality_check(f"comonad/coassoc/{name}", d.then(dig(ofc, w)), d.then(bang_map(dig(f, w), w))),
    ]


def naturality_checks(g: Relation) -> List[CheckRecord]:
    """der and dig are natural in g."""
    w = config.LAW_WITNESS_BOUND
    bang_g = bang_map(g, w)
    return [
        equality_check(f"natural/der/{g.name}", der(g.source, w).then(g), bang_g.then(der(g.target, w))),
        equality_check(
            f"natural/dig/{g.name}",
            dig(g.source, w).then(bang_map(bang_g, w)),
            bang_g.then(dig(g.target, w)),
        ),
    ]


def seely_checks(a: Formula, b: Formula) -> List[CheckRecord]:
    """The Seely relation is a bijection."""
    w = config.LAW_WITNESS_BOUND
    s = seely(a, b, w)
    name = f"{render_formula(a)},{render_formula(b)}"
    return [
        equality_check(f"seely/iso-left/{name}", s.then(s.converse()), identity(s.source, w)),
        equality_check(f"seely/iso-right/{name}", s.converse().then(s), identity(s.target, w)),
    ]


def seely_top_checks() -> List[CheckRecord]:
    """!top and 1 are isomorphic through ([], *)."""
    top = seely_top()
    return [
        equality_check("seely/top/iso-left", top.then(top.converse()), identity(OfCourse(TOP), config.LAW_BOUND)),
        equality_check("seely/top/iso-right", top.converse().then(top), identity(ONE, config.LAW_BOUND)),
    ]


def _reassociate(p: Pair) -> Pair:
    return Pair(p.left.left, Pair(p.left.right, p.right))


def _swap(p: Pair) -> Pair:
    return Pair(p.right, p.left)


def comonoid_checks(c: Comonoid) -> List[CheckRecord]:
    """Associativity, counit and commutativity of a comonoid."""
    w = config.LAW_WITNESS_BOUND
    m, u = c.comult_rel(), c.counit_rel()
    ident = identity(c.carrier, w)
    triple = Tensor(c.carrier, Tensor(c.carrier, c.carrier))
    left = m.then(tensor_rel(m, ident)).mapped(_reassociate, triple)
    right = m.then(tensor_rel(ident, m))
    unit = m.then(tensor_rel(u, ident)).mapped(lambda p: p.right, c.carrier)
    return [
        equality_check(f"comonoid/assoc/{c.name}", left, right),
        equality_check(f"comonoid/counit/{c.name}", unit, ident),
        equality_check(f"comonoid/commute/{c.name}", m.mapped(_swap, m.target), m),
    ]


def costar_checks(c: Comonoid, f: Relation) -> List[CheckRecord]:
    """f* factors f through der and is a comonoid morphism into (!A, weak, cont)."""
    w = config.LAW_WITNESS_BOUND
    star = costar(c, f, w)
    a = f.target
    star_pair = tensor_rel(star, star)
    return [
        equality_check(f"costar/der/{c.name}/{f.name}", star.then(der(a, w)), f),
        equality_check(f"costar/weak/{c.name}/{f.name}", star.then(weak(a)), c.counit_rel()),
        equality_check(f"costar/cont/{c.name}/{f.name}", star.then(cont(a, w)), c.comult_rel().then(star_pair)),
    ]


def middle_uniqueness_check(cfg: SemanticsConfig, r: Relation, s: Relation) -> CheckRecord:
    """
    In r ; s, a pair (a, c) neutral in source -o target has a single middle point.
    """
    check_id = f"middle/{r.name};{s.name}"
    middles: Dict[Tuple[object, object], set] = {}
    by_middle: Dict[object, List[object]] = {}
    for b, c in s.pairs:
        by_middle.setdefault(b, []).append(c)
    for a, b in r.pairs:
        for c in by_middle.get(b, ()):
            middles.setdefault((a, c), set()).add(b)
    arrow = lolli(r.source, s.target)
    for (a, c), found in sorted(middles.items(), key=lambda item: render_element(Pair(*item[0]))):
        if len(found) > 1 and neutral_member(cfg, arrow, Pair(a, c)):
            witness = " ".join(render_element(b) for b in sort_elements(found))
            return failed(check_id, cfg.describe(), f"({render_element(a)}, {render_element(c)}) via {witness}")
    return passed(check_id, cfg.describe())


def inclusion_check(name: str, body: Space, kset: KSet, max_elements: int = 2) -> CheckRecord:
    """
    Indexed coherence implies co-free coherence, and strict indexed coherence
    implies strict co-free coherence, on every bag of bags over body.
    """
    check_id = f"inclusion/{name}"
    semantics = f"{name} K={kset}"
    points = sort_elements(body.enumerate(3))
    components = [bag for n in range(max_elements + 1) for bag in bags_over(points, n)]
    bound = min(kset.maximum or config.ALL_K_CAP, body.cap or config.ALL_K_CAP)
    checked = 0
    for k in kset.members(bound):
        for family in bags_over(components, k):
            indexed = indexed_verdict(body, family)
            cofree = cofree_verdict(body, family)
            checked += 1
            if indexed.coherent and not cofree.coherent:
                return failed(check_id, semantics, str(family), f"indexed {indexed.value}, co-free {cofree.value}")
            if indexed is Verdict.STRICT_COHERENT and cofree is not Verdict.STRICT_COHERENT:
                return failed(check_id, semantics, str(family), f"co-free {cofree.value}")
    return passed(check_id, semantics, detail=f"{checked} bag(s)")


def laws_suite(formulas: Optional[List[Formula]] = None) -> List[CheckRecord]:
    """
    The full harness: cliquehood of the structural relations under every flavor
    of the semantics matrix, comonad and naturality equalities, Seely bijections,
    comonoid laws and the co-free factorization, middle uniqueness, and the
    indexed/co-free inclusions.
    """
    formulas = formulas or [ONE, BOOL]
    jobs: Dict[str, Callable[[], List[CheckRecord]]] = {}

    for f in formulas:
        name = render_formula(f)
        jobs[f"comonad/{name}"] = lambda f=f: comonad_checks(f)
        for cfg in flavor_configs():
            for r in structure_relations(f):
                jobs[f"clique/{r.name}/{cfg.describe()}"] = (
                    lambda cfg=cfg, r=r: [clique_check(f"clique/{r.name}", cfg, r)]
                )

    for g in sample_morphisms():
        jobs[f"natural/{g.name}"] = lambda g=g: naturality_checks(g)
    jobs["seely/1,1"] = lambda: seely_checks(ONE, ONE)
    jobs["seely/bool,1"] = lambda: seely_checks(BOOL, ONE)
    jobs["seely/top"] = seely_top_checks

    for c in sample_comonoids():
        jobs[f"comonoid/{c.name}"] = lambda c=c: comonoid_checks(c)
        ident = identity(c.carrier, config.LAW_BOUND)
        ident = Relation(ident.source, ident.target, ident.pairs, "id")
        jobs[f"costar/{c.name}/id"] = lambda c=c, ident=ident: costar_checks(c, ident)
        for cfg in flavor_configs():
            jobs[f"clique/id*/{c.name}/{cfg.describe()}"] = (
                lambda c=c, cfg=cfg, ident=ident: [
                    clique_check(f"clique/id*[{c.name}]", cfg, costar(c, ident, config.LAW_BOUND))
                ]
            )
    bool_comonoid = sample_comonoids()[1]
    for g in sample_morphisms():
        if g.source == BOOL:
            jobs[f"costar/bool/{g.name}"] = lambda g=g: costar_checks(bool_comonoid, g)

    samples = sample_morphisms()
    for cfg in law_configs():
        for r in samples:
            for s in samples:
                if r.target == s.source:
                    jobs[f"middle/{r.name};{s.name}/{cfg.describe()}"] = (
                        lambda cfg=cfg, r=r, s=s: [middle_uniqueness_check(cfg, r, s)]
                    )

    for kset in (KSet.pair(), KSet.finite((2, 3))):
        bool_space = build_space(SemanticsConfig.multiset(kset), BOOL)
        jobs[f"inclusion/bool/{kset}"] = lambda s=bool_space, k=kset: [inclusion_check("bool", s, k)]
        g_space = space_g(kset, cap=3)
        jobs[f"inclusion/G/{kset}"] = lambda s=g_space, k=kset: [inclusion_check("G", s, k)]

    logger.info(f"Law harness: {len(jobs)} job(s), composition {COMPOSITION}")
    return run_checks(jobs, desc="Laws")
