"""
Exponential spaces: the web is made of finite multisets of points of the body.

Every flavor defines its own web and verdicts; ?X is always the dual of the
flavor's ! applied to the dual of X (see spacecore.build_space).
"""

from typing import FrozenSet, Optional

from errors import ConfigError
from llsyntax import bags_up_to
from logger_config import get_logger
from multiset import Bag, bag_sum, column_decompositions, iter_sections, set_sections
from spacecore import (
    Engine,
    ExpFlavor,
    Polarity,
    SemanticsConfig,
    Space,
    Verdict,
    incoherent_witness,
)

logger = get_logger(__name__)


class ExponentialSpace(Space):
    """Base class: bags over the body, with the flavor's web restriction."""

    flavor = "!"

    def __init__(self, body: Space, cfg: SemanticsConfig):
        super().__init__(body.engine, body.kset)
        self.body = body
        self.cfg = cfg
        self._members = {}

    def contains(self, p) -> bool:
        if not isinstance(p, Bag) or not all(self.body.contains(e) for e in p):
            return False
        found = self._members.get(p)
        if found is None:
            found = self._admits(p)
            self._members[p] = found
        return found

    def _admits(self, bag: Bag) -> bool:
        return True

    def enumerate(self, max_size: int) -> FrozenSet:
        bags = bags_up_to(self.body.enumerate(max_size - 1), max_size)
        return frozenset(bag for bag in bags if self.contains(bag))

    @property
    def cap(self) -> Optional[int]:
        return self.body.cap

    def __str__(self):
        return f"({self.flavor} {self.body})"


class CliqueSupportMixin:
    """Uniform webs: a bag belongs when its support is a clique of the body."""

    set_based = False

    def _admits(self, bag: Bag) -> bool:
        if self.set_based and not bag.is_set():
            return False
        return incoherent_witness(self.body, bag.support(), self.cfg.card_bound) is None


# ============================================================================
# MULTISET ENGINE
# ============================================================================


def cofree_verdict(body: Space, mu: Bag, budget: Optional[int] = None) -> Verdict:
    """
    Verdict of the co-free exponential.

    Strictly incoherent when some section is; otherwise neutral when the
    components can be laid out as rows whose columns are all neutral;
    otherwise strictly coherent.
    """
    for section in iter_sections(mu):
        if body.verdict(section) is Verdict.STRICT_INCOHERENT:
            return Verdict.STRICT_INCOHERENT

    def neutral_column(column: tuple) -> bool:
        return body.verdict(Bag.of(column)) is Verdict.NEUTRAL

    for _ in column_decompositions(mu, column_filter=neutral_column, budget=budget):
        return Verdict.NEUTRAL
    return Verdict.STRICT_COHERENT


def indexed_verdict(body: Space, mu: Bag) -> Verdict:
    """
    Verdict of the indexed exponential, computed on the sum of the components.

    Strictly incoherent when a strictly incoherent bag of cardinality #mu fits
    in the sum; strictly coherent when the sum is star-shaped (some center a
    such that every such sub-bag containing a is strictly coherent); neutral
    otherwise.
    """
    k = len(mu)
    total = bag_sum(mu)
    candidates = list(total.sub_bags(k))
    verdicts = {sub: body.verdict(sub) for sub in candidates}
    if any(v is Verdict.STRICT_INCOHERENT for v in verdicts.values()):
        return Verdict.STRICT_INCOHERENT
    for center in total.distinct():
        if all(v is Verdict.STRICT_COHERENT for sub, v in verdicts.items() if center in sub):
            return Verdict.STRICT_COHERENT
    return Verdict.NEUTRAL


class CoFreeBang(ExponentialSpace):
    flavor = "ofc"

    def _verdict(self, m: Bag) -> Verdict:
        return cofree_verdict(self.body, m, self.cfg.budget)


class IndexedBang(ExponentialSpace):
    flavor = "ofc-indexed"

    def _verdict(self, m: Bag) -> Verdict:
        return indexed_verdict(self.body, m)


class UniformBang(CliqueSupportMixin, CoFreeBang):
    """Neutral restriction of the co-free exponential: clique supports only."""

    flavor = "ofc-uniform"


class UniformSetBang(CliqueSupportMixin, CoFreeBang):
    """Finite cliques of the body, represented as bags with all counts 1."""

    flavor = "ofc-set"
    set_based = True


def uniform_web_member(body: Space, bag: Bag, card_bound: Optional[int] = None) -> bool:
    return all(body.contains(e) for e in bag) and incoherent_witness(body, bag.support(), card_bound) is None


def uniform_verdict(body: Space, mu: Bag, budget: Optional[int] = None) -> Verdict:
    return cofree_verdict(body, mu, budget)


# ============================================================================
# SET ENGINE (HYPERCOHERENCES)
# ============================================================================


def nuh_verdict(body: Space, x: Bag) -> Verdict:
    """
    Verdict of the non-uniform hypercoherence exponential on a set x of bags.

    A strictly incoherent set-section decides first; a single bag made of
    neutral points is neutral; anything else is strictly coherent.
    """
    for section in set_sections(x):
        if body.verdict(Bag.of(section)) is Verdict.STRICT_INCOHERENT:
            return Verdict.STRICT_INCOHERENT
    if len(x) == 1:
        (mu,) = x
        if all(body.verdict(Bag((a,))) is Verdict.NEUTRAL for a in mu.distinct()):
            return Verdict.NEUTRAL
    return Verdict.STRICT_COHERENT


class HyperBang(ExponentialSpace):
    flavor = "ofc-nuh"

    def _verdict(self, m: Bag) -> Verdict:
        return nuh_verdict(self.body, m)


class UniformHyperBang(CliqueSupportMixin, HyperBang):
    flavor = "ofc-hyper"


class UniformHyperSetBang(CliqueSupportMixin, HyperBang):
    flavor = "ofc-hyper-set"
    set_based = True


def hyper_uniform_verdict(body: Space, x: Bag) -> Verdict:
    return nuh_verdict(body, x)


# ============================================================================
# BIPARTITE ENGINE
# ============================================================================


def bipartite_bag_polarity(body: Space, bag: Bag) -> Polarity:
    """Positive iff every element is positive."""
    if all(body.polarity(e) is Polarity.POSITIVE for e in bag):
        return Polarity.POSITIVE
    return Polarity.NEGATIVE


class BipartiteBang(ExponentialSpace):
    flavor = "ofc-bip"

    def polarity(self, p) -> Polarity:
        return bipartite_bag_polarity(self.body, p)


class PosBang(BipartiteBang):
    """Only bags of positive points exist."""

    flavor = "ofc-pos"

    def _admits(self, bag: Bag) -> bool:
        return bipartite_bag_polarity(self.body, bag) is Polarity.POSITIVE


# ============================================================================
# DISPATCH
# ============================================================================

FLAVORS = {
    (Engine.RELATIONAL, ExpFlavor.COFREE): CoFreeBang,
    (Engine.MULTISET, ExpFlavor.COFREE): CoFreeBang,
    (Engine.MULTISET, ExpFlavor.INDEXED): IndexedBang,
    (Engine.MULTISET, ExpFlavor.UNIFORM_MULTISET): UniformBang,
    (Engine.MULTISET, ExpFlavor.UNIFORM_SET): UniformSetBang,
    (Engine.SET, ExpFlavor.NONUNIFORM_HYPER): HyperBang,
    (Engine.SET, ExpFlavor.UNIFORM_MULTISET): UniformHyperBang,
    (Engine.SET, ExpFlavor.UNIFORM_SET): UniformHyperSetBang,
    (Engine.BIPARTITE, ExpFlavor.BIPARTITE_STD): BipartiteBang,
    (Engine.BIPARTITE, ExpFlavor.BIPARTITE_POS): PosBang,
}


def bang(body: Space, cfg: SemanticsConfig) -> Space:
    """The exponential !body of the flavor selected by cfg."""
    cls = FLAVORS.get((body.engine, cfg.exponential))
    if cls is None:
        raise ConfigError(
            f"no exponential '{cfg.exponential.value}' for the {body.engine.value} engine"
        )
    return cls(body, cfg)


def why_not(body: Space, cfg: SemanticsConfig) -> Space:
    return bang(body.dual(), cfg).dual()
