"""
Relational interpretation of proofs.

Interpretations are computed bottom-up and are exhaustive below a size bound.
An exponential policy selects the non-uniform interpretation or one of the
uniform ones, which keep only the tuples living in the uniform webs.
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import config
from errors import ConfigError, ParseError, ProofCheckError
from llsyntax import (
    Ax,
    BotI,
    Cont,
    Cut,
    Der,
    Diverge,
    Ex,
    Formula,
    GiveUp,
    Inl,
    Inr,
    OfCourse,
    OneI,
    Pair,
    ParI,
    Plus1,
    Plus2,
    Proof,
    Prom,
    STAR,
    Sum,
    TensorI,
    TopI,
    Weak,
    WhyNot,
    WithI,
    formula_from_node,
    tuple_from_node,
    check_proof,
    enum_web,
    read_all,
    render_formula,
    render_tuple,
)
from logger_config import get_logger
from multiset import EMPTY, Bag, bag_sum, element_key
from spacecore import ExpFlavor, Polarity, SemanticsConfig, build_space

logger = get_logger(__name__)

PointTuple = Tuple


# ============================================================================
# POLICIES
# ============================================================================


class PolicyMode(Enum):
    NON_UNIFORM = "non-uniform"
    UNIFORM_MULTISET = "uniform-multiset"
    UNIFORM_SET = "uniform-set"
    BIPARTITE_UNIFORM = "bipartite-uniform"


@dataclass(frozen=True)
class ExpPolicy:
    """
    How exponential rules are interpreted.

    Uniform modes keep only points of the uniform webs of the configured
    semantics; their admissibility test is the web membership of the compiled
    space, which runs the clique checks of the body.
    """

    mode: PolicyMode = PolicyMode.NON_UNIFORM
    cfg: Optional[SemanticsConfig] = None

    def __post_init__(self):
        if self.mode is not PolicyMode.NON_UNIFORM and self.cfg is None:
            raise ConfigError(f"policy {self.mode.value} needs a semantics")

    @classmethod
    def non_uniform(cls) -> "ExpPolicy":
        return cls()

    @classmethod
    def from_config(cls, cfg: SemanticsConfig) -> "ExpPolicy":
        if cfg.exponential is ExpFlavor.UNIFORM_MULTISET:
            return cls(PolicyMode.UNIFORM_MULTISET, cfg)
        if cfg.exponential is ExpFlavor.UNIFORM_SET:
            return cls(PolicyMode.UNIFORM_SET, cfg)
        if cfg.exponential is ExpFlavor.BIPARTITE_POS:
            return cls(PolicyMode.BIPARTITE_UNIFORM, cfg)
        return cls()

    @property
    def restricted(self) -> bool:
        return self.mode is not PolicyMode.NON_UNIFORM

    @property
    def set_based(self) -> bool:
        return self.mode is PolicyMode.UNIFORM_SET

    def admits(self, f: Formula, p) -> bool:
        """Whether p is in the web of f under this policy."""
        if not self.restricted:
            return True
        return build_space(self.cfg, f).contains(p)

    def merge(self, bags: Iterable[Bag]) -> Bag:
        """Sum of bags, or union of supports for set-based webs."""
        total = bag_sum(bags)
        if self.set_based:
            return Bag.of(total.support())
        return total

    def describe(self) -> str:
        if self.cfg is None:
            return self.mode.value
        return f"{self.mode.value} ({self.cfg.describe()})"


# ============================================================================
# INTERPRETATIONS
# ============================================================================


def _tuple_key(t: PointTuple) -> tuple:
    return tuple(element_key(p) for p in t)


@dataclass(frozen=True)
class Interp:
    """A finite set of point tuples, exhaustive for components of size <= bound."""

    sequent: Tuple[Formula, ...]
    tuples: FrozenSet[PointTuple]
    bound: int

    def __len__(self) -> int:
        return len(self.tuples)

    def __contains__(self, t: PointTuple) -> bool:
        return tuple(t) in self.tuples

    def sorted_tuples(self) -> List[PointTuple]:
        return sorted(self.tuples, key=_tuple_key)

    def render(self) -> str:
        lines = ["(sequent " + " ".join(render_formula(f) for f in self.sequent) + ")"]
        lines.append(f"(bound {self.bound})")
        lines.extend(render_tuple(t) for t in self.sorted_tuples())
        return "\n".join(lines) + "\n"

    def to_record(self) -> dict:
        return {
            "sequent": [render_formula(f) for f in self.sequent],
            "bound": self.bound,
            "tuples": [[str(p) for p in t] for t in self.sorted_tuples()],
        }


def parse_interp(text: str) -> Interp:
    """Read the text form written by ``Interp.render``."""
    nodes = read_all(text)
    if len(nodes) < 2 or nodes[0].head() != "sequent" or nodes[1].head() != "bound":
        raise ParseError("an interpretation starts with (sequent ...) and (bound N)", 0)
    sequent = tuple(formula_from_node(arg) for arg in nodes[0].args())
    (bound_node,) = nodes[1].args()
    tuples = frozenset(tuple_from_node(node) for node in nodes[2:])
    for t in tuples:
        if len(t) != len(sequent):
            raise ParseError(f"tuple {render_tuple(t)} does not match a sequent of length {len(sequent)}", 0)
    return Interp(sequent, tuples, int(bound_node.value))


def load_interp(path: Path) -> Interp:
    return parse_interp(Path(path).read_text(encoding="utf-8"))


# ============================================================================
# EVALUATION
# ============================================================================


def _fits(t: PointTuple, bound: int) -> bool:
    return all(p.size() <= bound for p in t)


class _Evaluator:
    """Bottom-up evaluation with a memo table confined to one ``interpret`` call."""

    def __init__(self, policy: ExpPolicy):
        self.policy = policy
        self.memo: Dict[Tuple[Proof, int], Interp] = {}

    def run(self, p: Proof, bound: int) -> Interp:
        key = (p, bound)
        found = self.memo.get(key)
        if found is None:
            found = self._rule(p, bound)
            self.memo[key] = found
            logger.debug(f"{p.rule}: {len(found)} tuple(s) at bound {bound}")
        return found

    def _negative(self, f: Formula, a) -> bool:
        return build_space(self.policy.cfg, f).polarity(a) is Polarity.NEGATIVE

    def _rule(self, p: Proof, bound: int) -> Interp:
        sequent = p.conclusion
        policy = self.policy

        def done(tuples: Iterable[PointTuple]) -> Interp:
            return Interp(sequent, frozenset(t for t in tuples if _fits(t, bound)), bound)

        if isinstance(p, Ax):
            points = enum_web(p.formula, bound)
            return done((a, a) for a in points if policy.admits(p.formula, a))
        if isinstance(p, OneI):
            return done([(STAR,)])
        if isinstance(p, GiveUp):
            return done([()])
        if isinstance(p, (TopI, Diverge)):
            return done([])
        if isinstance(p, BotI):
            premise = self.run(p.premise, bound)
            return done(t + (STAR,) for t in premise.tuples)
        if isinstance(p, Cut):
            witness_bound = bound * config.CUT_WITNESS_FACTOR
            left = self.run(p.left, witness_bound)
            right = self.run(p.right, witness_bound)
            by_witness: Dict[object, List[PointTuple]] = {}
            for t in right.tuples:
                by_witness.setdefault(t[-1], []).append(t[:-1])
            return done(
                gamma[:-1] + delta
                for gamma in left.tuples
                for delta in by_witness.get(gamma[-1], ())
            )
        if isinstance(p, WithI):
            left = self.run(p.left, bound)
            right = self.run(p.right, bound)
            tagged = [t[:-1] + (Inl(t[-1]),) for t in left.tuples]
            tagged += [t[:-1] + (Inr(t[-1]),) for t in right.tuples]
            return done(tagged)
        if isinstance(p, Plus1):
            return done(t[:-1] + (Inl(t[-1]),) for t in self.run(p.premise, bound).tuples)
        if isinstance(p, Plus2):
            return done(t[:-1] + (Inr(t[-1]),) for t in self.run(p.premise, bound).tuples)
        if isinstance(p, ParI):
            return done(t[:-2] + (Pair(t[-2], t[-1]),) for t in self.run(p.premise, bound).tuples)
        if isinstance(p, TensorI):
            left = self.run(p.left, bound)
            right = self.run(p.right, bound)
            return done(
                g[:-1] + d[:-1] + (Pair(g[-1], d[-1]),) for g in left.tuples for d in right.tuples
            )
        if isinstance(p, Der):
            premise = self.run(p.premise, bound)
            body = premise.sequent[-1]
            target = sequent[-1]
            kept = []
            for t in premise.tuples:
                if policy.mode is PolicyMode.BIPARTITE_UNIFORM and not self._negative(body, t[-1]):
                    continue
                bag = Bag((t[-1],))
                if policy.admits(target, bag):
                    kept.append(t[:-1] + (bag,))
            return done(kept)
        if isinstance(p, Weak):
            return done(t + (EMPTY,) for t in self.run(p.premise, bound).tuples)
        if isinstance(p, Cont):
            premise = self.run(p.premise, bound)
            target = sequent[-1]
            kept = []
            for t in premise.tuples:
                merged = policy.merge([t[-2], t[-1]])
                if policy.admits(target, merged):
                    kept.append(t[:-2] + (merged,))
            return done(kept)
        if isinstance(p, Ex):
            premise = self.run(p.premise, bound)

            def swap(t: PointTuple) -> PointTuple:
                items = list(t)
                items[p.index], items[-1] = items[-1], items[p.index]
                return tuple(items)

            return done(swap(t) for t in premise.tuples)
        if isinstance(p, Prom):
            return promote(self.run(p.premise, bound), policy, bound)
        if isinstance(p, Sum):
            return done(self.run(p.left, bound).tuples | self.run(p.right, bound).tuples)
        raise ProofCheckError(p.rule, "root", "no interpretation for this rule")


def interpret(p: Proof, policy: Optional[ExpPolicy] = None, bound: int = config.DEFAULT_BOUND) -> Interp:
    """
    Interpret a proof, exhaustively for tuple components of size <= bound.

    Args:
        p: Proof (checked first)
        policy: Exponential policy (default: non-uniform)
        bound: Size bound, at least 1

    Returns:
        Interp of the conclusion of p

    Raises:
        ProofCheckError: If p is ill-formed
        ConfigError: If bound < 1
    """
    if bound < 1:
        raise ConfigError(f"bound must be at least 1, got {bound}")
    policy = policy or ExpPolicy.non_uniform()
    check_proof(p)
    logger.debug(f"Interpreting under {policy.describe()} at bound {bound}")
    return _Evaluator(policy).run(p, bound)


# ============================================================================
# PROMOTION
# ============================================================================


def promote(premise: Interp, policy: Optional[ExpPolicy] = None, bound: Optional[int] = None) -> Interp:
    """
    The promotion f-dagger of an interpretation of |- ?A1, ..., ?An, A.

    Every finite family of premise tuples (mu1^j, ..., mun^j, a_j) is recombined
    into (sum_j mu1^j, ..., sum_j mun^j, [a_j]); families are enumerated by
    increasing size and pruned by output size. The empty family always
    contributes ([], ..., [], []).

    Raises:
        ProofCheckError: If some context formula is not a ?-formula
    """
    policy = policy or ExpPolicy.non_uniform()
    bound = premise.bound if bound is None else bound
    if not premise.sequent:
        raise ProofCheckError("prom", "root", "promotion needs a conclusion")
    for position, f in enumerate(premise.sequent[:-1]):
        if not isinstance(f, WhyNot):
            raise ProofCheckError("prom", "root", f"context formula {position} is {render_formula(f)}")
    context = premise.sequent[:-1]
    sequent = context + (OfCourse(premise.sequent[-1]),)
    n = len(context)
    rows = sorted(premise.tuples, key=_tuple_key)
    set_based = policy.set_based
    found = set()

    def emit(chosen: List[PointTuple]) -> None:
        sums = tuple(policy.merge(t[i] for t in chosen) for i in range(n))
        results = [t[-1] for t in chosen]
        result = Bag.of(set(results)) if set_based else Bag.of(results)
        candidate = sums + (result,)
        if not _fits(candidate, bound):
            return
        if policy.restricted:
            if not all(policy.admits(f, s) for f, s in zip(sequent, sums)):
                return
            if not policy.admits(sequent[-1], result):
                return
        found.add(candidate)

    chosen: List[PointTuple] = []

    def extend(start: int, result_size: int, context_sizes: Tuple[int, ...]) -> None:
        emit(chosen)
        for i in range(start, len(rows)):
            t = rows[i]
            grown = result_size + t[-1].size()
            if not set_based and grown > bound:
                continue
            sizes = tuple(s + t[j].size() - 1 for j, s in enumerate(context_sizes))
            if not set_based and any(s > bound for s in sizes):
                continue
            chosen.append(t)
            if set_based:
                if _set_sizes_fit(chosen, n, bound):
                    extend(i + 1, grown, sizes)
            else:
                extend(i, grown, sizes)
            chosen.pop()

    extend(0, 1, (1,) * n)
    logger.debug(f"promotion of {len(rows)} tuple(s) gave {len(found)} tuple(s) at bound {bound}")
    return Interp(sequent, frozenset(found), bound)


def _set_sizes_fit(chosen: List[PointTuple], n: int, bound: int) -> bool:
    result = Bag.of({t[-1] for t in chosen})
    if result.size() > bound:
        return False
    for i in range(n):
        union = Bag.of(bag_sum(t[i] for t in chosen).support())
        if union.size() > bound:
            return False
    return True


# ============================================================================
# CO-KLEISLI APPLICATION
# ============================================================================


def kleisli_apply(f: Iterable, x: Iterable, bound: Optional[int] = None) -> FrozenSet:
    """
    Apply f, a subset of |!A -o B|, to a subset x of |A|.

    Returns the points b with (mu, b) in f for some mu whose support lies in x.
    Pairs of f may be given as Python pairs or as Pair points.
    """
    x = frozenset(x)
    results = set()
    for item in f:
        mu, b = (item.left, item.right) if isinstance(item, Pair) else item
        if bound is not None and (mu.size() > bound or b.size() > bound):
            continue
        if mu.support() <= x:
            results.add(b)
    return frozenset(results)
