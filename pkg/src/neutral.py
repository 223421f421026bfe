"""
Neutral webs, the neutral restriction of spaces, cliques and interpretations,
and the support-closure operator turning a multiset verdict into a set verdict.

Membership is computed structurally: through sums and products componentwise,
through exponentials by "every element neutral and the support a clique of
the body". Only table spaces and the indexed exponential are tested by brute
force over K, which is a semi-decision when K is unbounded.
"""

from dataclasses import dataclass
from functools import singledispatch
from typing import FrozenSet, Iterable, Optional, Tuple

import config
from errors import BoundExhausted, CardinalityError, WebError
from expon import ExponentialSpace, IndexedBang
from llsyntax import Formula, Inl, Pair, render_formula
from logger_config import get_logger
from multiset import Bag, bags_with_support, render_element, sort_elements
from relsem import Interp
from spacecore import (
    DualSpace,
    Engine,
    KSet,
    PlusSpace,
    SemanticsConfig,
    Space,
    TableSpace,
    TensorSpace,
    UnitSpace,
    Verdict,
    as_space,
    effective_card_bound,
    incoherent_witness,
    search_is_exact,
)

logger = get_logger(__name__)

# (member, exact)
Answer = Tuple[bool, bool]


@dataclass(frozen=True)
class NeutralQuery:
    """Answer to a neutral-web query; ``exact`` is False for bounded answers."""

    target: str
    point: object
    semantics: str
    member: bool
    exact: bool

    def to_record(self) -> dict:
        return {
            "formula": self.target,
            "point": render_element(self.point),
            "semantics": self.semantics,
            "neutral": self.member,
            "status": "pass" if self.exact else "bounded",
        }


# ============================================================================
# MEMBERSHIP
# ============================================================================


def brute_force_neutral(space: Space, p, card_bound: Optional[int] = None) -> Answer:
    """
    Test the constant bags k[p] directly.

    Multiset engine: every k in K up to the cap of the space (or card_bound);
    set engine: the singleton {p}.
    """
    if space.engine is Engine.SET:
        return space.verdict(Bag((p,))) is Verdict.NEUTRAL, True
    bound = card_bound or config.ALL_K_CAP
    if space.cap is not None:
        bound = min(bound, space.cap)
    for k in space.kset.members(bound):
        if space.verdict(Bag.repeat(p, k)) is not Verdict.NEUTRAL:
            return False, True
    return True, search_is_exact(space, bound)


@singledispatch
def _neutral(space: Space, p, card_bound: Optional[int]) -> Answer:
    return brute_force_neutral(space, p, card_bound)


@_neutral.register
def _(space: UnitSpace, p, card_bound: Optional[int]) -> Answer:
    return True, True


@_neutral.register
def _(space: DualSpace, p, card_bound: Optional[int]) -> Answer:
    return _neutral(space.inner, p, card_bound)


@_neutral.register
def _(space: PlusSpace, p, card_bound: Optional[int]) -> Answer:
    side = space.left if isinstance(p, Inl) else space.right
    return _neutral(side, p.payload, card_bound)


@_neutral.register
def _(space: TensorSpace, p: Pair, card_bound: Optional[int]) -> Answer:
    left, left_exact = _neutral(space.left, p.left, card_bound)
    if not left:
        return False, left_exact
    right, right_exact = _neutral(space.right, p.right, card_bound)
    return right, left_exact and right_exact


@_neutral.register
def _(space: ExponentialSpace, mu: Bag, card_bound: Optional[int]) -> Answer:
    exact = True
    for a in mu.distinct():
        member, member_exact = _neutral(space.body, a, card_bound)
        exact = exact and member_exact
        if not member:
            return False, exact
    support = mu.support()
    if incoherent_witness(space.body, support, card_bound) is not None:
        return False, True
    bound = effective_card_bound(card_bound, len(support))
    return True, exact and search_is_exact(space.body, bound)


@_neutral.register
def _(space: IndexedBang, mu: Bag, card_bound: Optional[int]) -> Answer:
    return brute_force_neutral(space, mu, card_bound)


@_neutral.register
def _(space: TableSpace, p, card_bound: Optional[int]) -> Answer:
    return brute_force_neutral(space, p, card_bound)


def _check_engine(space: Space, p) -> Optional[Answer]:
    if not space.contains(p):
        raise WebError(f"{render_element(p)} is not in the web of {space}")
    if space.engine is Engine.RELATIONAL:
        return True, True
    if space.engine is Engine.BIPARTITE:
        # polarities only: no bag is neutral
        return False, True
    return None


def neutral_query(cfg: SemanticsConfig, f, p, card_bound: Optional[int] = None) -> NeutralQuery:
    """
    Whether p is in the neutral web of f (formula or space), with an exactness flag.

    Raises:
        WebError: If p is not in the web of f
    """
    space = as_space(cfg, f)
    answer = _check_engine(space, p)
    if answer is None:
        answer = _neutral(space, p, card_bound or cfg.card_bound)
    member, exact = answer
    target = render_formula(f) if isinstance(f, Formula) else str(f)
    return NeutralQuery(target, p, cfg.describe(), member, exact)


def neutral_member(cfg: SemanticsConfig, f, p, card_bound: Optional[int] = None) -> bool:
    return neutral_query(cfg, f, p, card_bound).member


def neutral_web(cfg: SemanticsConfig, f, max_size: int) -> FrozenSet:
    """The neutral points of f of size <= max_size."""
    space = as_space(cfg, f)
    return frozenset(p for p in space.enumerate(max_size) if neutral_member(cfg, space, p))


# ============================================================================
# NEUTRAL RESTRICTION
# ============================================================================


class NeutralSpace(Space):
    """N X: the web cut down to the neutral points, verdicts inherited."""

    def __init__(self, inner: Space, card_bound: Optional[int] = None):
        super().__init__(inner.engine, inner.kset)
        self.inner = inner
        self.card_bound = card_bound
        self._points = {}

    def contains(self, p) -> bool:
        found = self._points.get(p)
        if found is None:
            found = self.inner.contains(p) and _neutral(self.inner, p, self.card_bound)[0]
            self._points[p] = found
        return found

    def enumerate(self, max_size: int) -> FrozenSet:
        return frozenset(p for p in self.inner.enumerate(max_size) if self.contains(p))

    @property
    def cap(self) -> Optional[int]:
        return self.inner.cap

    def _verdict(self, m: Bag) -> Verdict:
        return self.inner.verdict(m)

    def polarity(self, p):
        return self.inner.polarity(p)

    def __str__(self):
        return f"(N {self.inner})"


@_neutral.register
def _(space: NeutralSpace, p, card_bound: Optional[int]) -> Answer:
    if not space.contains(p):
        return False, True
    return _neutral(space.inner, p, card_bound)


def restrict_space(space: Space, card_bound: Optional[int] = None) -> NeutralSpace:
    return NeutralSpace(space, card_bound)


def restrict_clique(cfg: SemanticsConfig, f, x: Iterable) -> FrozenSet:
    """x intersected with the neutral web of f."""
    space = as_space(cfg, f)
    return frozenset(p for p in x if neutral_member(cfg, space, p))


def restrict_interp(cfg: SemanticsConfig, interp: Interp) -> Interp:
    """Keep the tuples whose every component is neutral in its formula."""
    spaces = [as_space(cfg, f) for f in interp.sequent]
    kept = frozenset(
        t for t in interp.tuples if all(neutral_member(cfg, s, p) for s, p in zip(spaces, t))
    )
    logger.debug(f"Neutral restriction kept {len(kept)} of {len(interp)} tuple(s)")
    return Interp(interp.sequent, kept, interp.bound)


# ============================================================================
# SUPPORT CLOSURE
# ============================================================================


def support_closure_verdict(space: Space, x: Iterable, cap: int, kset: Optional[KSet] = None) -> Verdict:
    """
    Set verdict read off a multiset verdict: judge every bag whose support is x.

    Bags range over cardinalities in K (the space's own K unless given) up to
    cap. All neutral gives Neutral, all coherent gives strictly coherent,
    anything else strictly incoherent.

    Raises:
        CardinalityError: If x is empty
        BoundExhausted: If no bag with support x fits below cap
    """
    points = sort_elements(set(x))
    if not points:
        raise CardinalityError("the support closure needs a nonempty set")
    kset = kset or space.kset
    all_neutral = True
    judged = 0
    for k in kset.members(cap):
        for bag in bags_with_support(points, k):
            v = space.verdict(bag)
            judged += 1
            if v is Verdict.STRICT_INCOHERENT:
                return v
            all_neutral = all_neutral and v is Verdict.NEUTRAL
    if not judged:
        raise BoundExhausted(f"no cardinality in K up to {cap} covers a support of {len(points)} point(s)")
    return Verdict.NEUTRAL if all_neutral else Verdict.STRICT_COHERENT


class SupportClosureSpace(Space):
    """
    S X: a set-engine space over the web of a multiset space X.

    A finite set is judged by all the bags of X whose support it is, with
    multiplicities up to ``closure_cap``.
    """

    def __init__(self, inner: Space, closure_cap: int = config.SUPPORT_CLOSURE_CAP):
        if inner.engine is not Engine.MULTISET:
            raise WebError(f"the support closure reads a multiset space, got {inner.engine.value}")
        super().__init__(Engine.SET)
        self.inner = inner
        self.closure_cap = closure_cap if inner.cap is None else min(closure_cap, inner.cap)

    def contains(self, p) -> bool:
        return self.inner.contains(p)

    def enumerate(self, max_size: int) -> FrozenSet:
        return self.inner.enumerate(max_size)

    def _verdict(self, m: Bag) -> Verdict:
        return support_closure_verdict(self.inner, m.support(), self.closure_cap)

    def __str__(self):
        return f"(S {self.inner})"


def support_closure(space: Space, closure_cap: int = config.SUPPORT_CLOSURE_CAP) -> SupportClosureSpace:
    return SupportClosureSpace(space, closure_cap)
