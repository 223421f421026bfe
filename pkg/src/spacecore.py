"""
Coherence spaces with three-valued verdicts.

A formula compiles, under a SemanticsConfig, to a Space. Spaces answer web
membership, verdicts on bags (multiset engine), on sets (hypercoherence engine,
sets being bags with all counts 1) or polarities of single points (bipartite
engine). Exponential spaces live in ``expon``.
"""

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import config
from errors import BoundExhausted, CardinalityError, ConfigError, TableError, WebError
from llsyntax import (
    Bot,
    Formula,
    Inl,
    Inr,
    Label,
    One,
    OfCourse,
    Pair,
    Par,
    Plus,
    STAR,
    Star,
    Tensor,
    Top,
    WhyNot,
    With,
    Zero,
    read_all,
)
from logger_config import get_logger
from multiset import Bag, bags_over, bags_with_support, sort_elements

logger = get_logger(__name__)


# ============================================================================
# VERDICTS, K AND CONFIGURATION
# ============================================================================


class Verdict(Enum):
    STRICT_COHERENT = "coherent-strict"
    NEUTRAL = "neutral"
    STRICT_INCOHERENT = "incoherent-strict"

    def mirror(self) -> "Verdict":
        return _MIRROR[self]

    @property
    def coherent(self) -> bool:
        return self is not Verdict.STRICT_INCOHERENT

    @property
    def incoherent(self) -> bool:
        return self is not Verdict.STRICT_COHERENT

    @classmethod
    def parse(cls, word: str) -> "Verdict":
        aliases = {"coherent": cls.STRICT_COHERENT, "incoherent": cls.STRICT_INCOHERENT}
        if word in aliases:
            return aliases[word]
        try:
            return cls(word)
        except ValueError:
            raise TableError(f"unknown verdict word '{word}'")


_MIRROR = {
    Verdict.STRICT_COHERENT: Verdict.STRICT_INCOHERENT,
    Verdict.NEUTRAL: Verdict.NEUTRAL,
    Verdict.STRICT_INCOHERENT: Verdict.STRICT_COHERENT,
}


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"

    def flip(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


@dataclass(frozen=True)
class KSet:
    """Admissible cardinalities: {2}, every n >= 2, or an explicit finite set."""

    kind: str
    values: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("pair", "all", "finite"):
            raise ConfigError(f"unknown K kind '{self.kind}'")
        if self.kind == "finite" and (not self.values or min(self.values) < 2):
            raise ConfigError(f"K must be a nonempty set of integers >= 2, got {self.values}")

    @classmethod
    def pair(cls) -> "KSet":
        return cls("pair")

    @classmethod
    def all(cls) -> "KSet":
        return cls("all")

    @classmethod
    def finite(cls, values: Iterable[int]) -> "KSet":
        values = tuple(sorted(set(values)))
        if values == (2,):
            return cls.pair()
        return cls("finite", values)

    @classmethod
    def parse(cls, text: str) -> "KSet":
        text = text.strip()
        if text == "pair":
            return cls.pair()
        if text == "all":
            return cls.all()
        if text.startswith("set:"):
            text = text[len("set:"):]
        try:
            return cls.finite(int(v) for v in text.split(","))
        except ValueError:
            raise ConfigError(f"cannot read K selector '{text}'")

    def __contains__(self, k: int) -> bool:
        if self.kind == "pair":
            return k == 2
        if self.kind == "all":
            return k >= 2
        return k in self.values

    @property
    def is_finite(self) -> bool:
        return self.kind != "all"

    @property
    def maximum(self) -> Optional[int]:
        if self.kind == "pair":
            return 2
        if self.kind == "finite":
            return max(self.values)
        return None

    def members(self, cap: int) -> List[int]:
        """Members of K that are at most cap, increasing."""
        return [k for k in range(2, cap + 1) if k in self]

    def __str__(self) -> str:
        if self.kind == "finite":
            return ",".join(str(v) for v in self.values)
        return self.kind


class Engine(Enum):
    RELATIONAL = "relational"
    BIPARTITE = "bipartite"
    MULTISET = "multiset"
    SET = "set"


class ExpFlavor(Enum):
    COFREE = "cofree"
    INDEXED = "indexed"
    UNIFORM_MULTISET = "uniform-multiset"
    UNIFORM_SET = "uniform-set"
    NONUNIFORM_HYPER = "nonuniform-hyper"
    BIPARTITE_STD = "bipartite-std"
    BIPARTITE_POS = "bipartite-pos"


ALLOWED_FLAVORS = {
    Engine.RELATIONAL: {ExpFlavor.COFREE},
    Engine.BIPARTITE: {ExpFlavor.BIPARTITE_STD, ExpFlavor.BIPARTITE_POS},
    Engine.MULTISET: {
        ExpFlavor.COFREE,
        ExpFlavor.INDEXED,
        ExpFlavor.UNIFORM_MULTISET,
        ExpFlavor.UNIFORM_SET,
    },
    Engine.SET: {ExpFlavor.NONUNIFORM_HYPER, ExpFlavor.UNIFORM_MULTISET, ExpFlavor.UNIFORM_SET},
}

UNIFORM_FLAVORS = {ExpFlavor.UNIFORM_MULTISET, ExpFlavor.UNIFORM_SET, ExpFlavor.BIPARTITE_POS}


@dataclass(frozen=True)
class SemanticsConfig:
    """One cell of the semantics matrix plus the bounds of its semi-decisions."""

    engine: Engine
    exponential: ExpFlavor = ExpFlavor.COFREE
    kset: Optional[KSet] = None
    card_bound: int = config.DEFAULT_CARD_BOUND
    budget: int = config.DECOMPOSITION_BUDGET

    def __post_init__(self):
        if self.exponential not in ALLOWED_FLAVORS[self.engine]:
            raise ConfigError(
                f"exponential '{self.exponential.value}' does not combine with engine '{self.engine.value}'"
            )
        if self.engine is Engine.MULTISET and self.kset is None:
            raise ConfigError("the multiset engine needs a K")
        if self.engine is not Engine.MULTISET and self.kset is not None:
            object.__setattr__(self, "kset", None)

    @classmethod
    def relational(cls) -> "SemanticsConfig":
        return cls(Engine.RELATIONAL)

    @classmethod
    def multiset(cls, kset: KSet, exponential: ExpFlavor = ExpFlavor.COFREE, **bounds) -> "SemanticsConfig":
        return cls(Engine.MULTISET, exponential, kset, **bounds)

    @classmethod
    def hyper(cls, exponential: ExpFlavor = ExpFlavor.NONUNIFORM_HYPER, **bounds) -> "SemanticsConfig":
        return cls(Engine.SET, exponential, **bounds)

    @classmethod
    def bipartite(cls, uniform: bool = False) -> "SemanticsConfig":
        flavor = ExpFlavor.BIPARTITE_POS if uniform else ExpFlavor.BIPARTITE_STD
        return cls(Engine.BIPARTITE, flavor)

    @property
    def is_uniform(self) -> bool:
        return self.exponential in UNIFORM_FLAVORS

    def non_uniform(self) -> "SemanticsConfig":
        """The non-uniform semantics whose neutral restriction is this one."""
        counterpart = {
            Engine.MULTISET: ExpFlavor.COFREE,
            Engine.SET: ExpFlavor.NONUNIFORM_HYPER,
            Engine.BIPARTITE: ExpFlavor.BIPARTITE_STD,
            Engine.RELATIONAL: ExpFlavor.COFREE,
        }[self.engine]
        return replace(self, exponential=counterpart)

    def describe(self) -> str:
        parts = [self.engine.value, self.exponential.value]
        if self.kset is not None:
            parts.append(f"K={self.kset}")
        return "/".join(parts)


# ============================================================================
# SPACES
# ============================================================================


class Space:
    """
    Base class of coherence spaces.

    Subclasses implement ``contains``, ``_verdict`` and ``enumerate``; the
    engine decides how a bag is read (multiset, set or single point).
    """

    def __init__(self, engine: Engine, kset: Optional[KSet] = None):
        self.engine = engine
        self.kset = kset
        self._verdicts: Dict[Bag, Verdict] = {}
        self._dual: Optional[Space] = None

    # -- web -------------------------------------------------------------------

    def contains(self, p) -> bool:
        raise NotImplementedError

    def enumerate(self, max_size: int) -> FrozenSet:
        raise NotImplementedError

    @property
    def cap(self) -> Optional[int]:
        """Largest cardinality this space can judge, None when unbounded."""
        return None

    # -- verdicts --------------------------------------------------------------

    def normalize(self, m: Bag) -> Bag:
        if self.engine is Engine.SET:
            return m if m.is_set() else Bag.of(m.support())
        return m

    def verdict(self, m: Bag) -> Verdict:
        """Verdict of a bag already known to be legal; memoized per space."""
        if self.engine is Engine.RELATIONAL:
            raise ConfigError("the relational semantics carries no verdicts")
        m = self.normalize(m)
        found = self._verdicts.get(m)
        if found is None:
            if self.engine is Engine.BIPARTITE:
                if len(m) != 1:
                    raise CardinalityError("bipartite verdicts are about single points")
                positive = self.polarity(m.items[0]) is Polarity.POSITIVE
                found = Verdict.STRICT_COHERENT if positive else Verdict.STRICT_INCOHERENT
            else:
                found = self._verdict(m)
            self._verdicts[m] = found
        return found

    def _verdict(self, m: Bag) -> Verdict:
        raise NotImplementedError

    def polarity(self, p) -> Polarity:
        raise ConfigError(f"{self} carries no polarity")

    def check_bag(self, m: Bag) -> None:
        """Raise unless m is a legal argument of ``verdict``."""
        for p in m:
            if not self.contains(p):
                raise WebError(f"{p} is not in the web of {self}")
        if self.engine is Engine.MULTISET and len(m) not in self.kset:
            raise CardinalityError(f"cardinality {len(m)} is not in K = {self.kset}")
        if self.engine is Engine.SET and len(m) == 0:
            raise CardinalityError("hypercoherence verdicts need a nonempty set")
        if self.engine is Engine.BIPARTITE and len(m) != 1:
            raise CardinalityError("bipartite verdicts are about single points")
        if self.cap is not None and len(m.support() if self.engine is Engine.SET else m) > self.cap:
            raise BoundExhausted(f"cardinality {len(m)} is above the cap {self.cap} of {self}")

    def dual(self) -> "Space":
        if self._dual is None:
            self._dual = DualSpace(self)
        return self._dual


class UnitSpace(Space):
    """The one-point space 1; its dual is bot."""

    def contains(self, p) -> bool:
        return isinstance(p, Star)

    def enumerate(self, max_size: int) -> FrozenSet:
        return frozenset({STAR}) if max_size >= 1 else frozenset()

    def _verdict(self, m: Bag) -> Verdict:
        return Verdict.NEUTRAL

    def polarity(self, p) -> Polarity:
        return Polarity.POSITIVE

    def __str__(self):
        return "1"


class EmptySpace(Space):
    """The empty space 0; its dual is top."""

    def contains(self, p) -> bool:
        return False

    def enumerate(self, max_size: int) -> FrozenSet:
        return frozenset()

    def _verdict(self, m: Bag) -> Verdict:
        raise WebError("the web of 0 is empty: there is no bag to judge")

    def __str__(self):
        return "0"


class DualSpace(Space):
    """Same web, coherence and incoherence exchanged."""

    def __init__(self, inner: Space):
        super().__init__(inner.engine, inner.kset)
        self.inner = inner
        self._dual = inner

    def contains(self, p) -> bool:
        return self.inner.contains(p)

    def enumerate(self, max_size: int) -> FrozenSet:
        return self.inner.enumerate(max_size)

    @property
    def cap(self) -> Optional[int]:
        return self.inner.cap

    def _verdict(self, m: Bag) -> Verdict:
        return self.inner.verdict(m).mirror()

    def polarity(self, p) -> Polarity:
        return self.inner.polarity(p).flip()

    def __str__(self):
        return f"(dual {self.inner})"


def _min_cap(*spaces: Space) -> Optional[int]:
    caps = [s.cap for s in spaces if s.cap is not None]
    return min(caps) if caps else None


class PlusSpace(Space):
    """Disjoint sum; mixed bags are strictly incoherent. With is its De Morgan dual."""

    def __init__(self, left: Space, right: Space):
        super().__init__(left.engine, left.kset)
        self.left = left
        self.right = right

    def contains(self, p) -> bool:
        if isinstance(p, Inl):
            return self.left.contains(p.payload)
        if isinstance(p, Inr):
            return self.right.contains(p.payload)
        return False

    def enumerate(self, max_size: int) -> FrozenSet:
        lefts = {Inl(p) for p in self.left.enumerate(max_size - 1)}
        rights = {Inr(p) for p in self.right.enumerate(max_size - 1)}
        return frozenset(lefts | rights)

    @property
    def cap(self) -> Optional[int]:
        return _min_cap(self.left, self.right)

    def _verdict(self, m: Bag) -> Verdict:
        if all(isinstance(p, Inl) for p in m):
            return self.left.verdict(m.map(lambda p: p.payload))
        if all(isinstance(p, Inr) for p in m):
            return self.right.verdict(m.map(lambda p: p.payload))
        return Verdict.STRICT_INCOHERENT

    def polarity(self, p) -> Polarity:
        if isinstance(p, Inl):
            return self.left.polarity(p.payload)
        return self.right.polarity(p.payload)

    def __str__(self):
        return f"(plus {self.left} {self.right})"


class TensorSpace(Space):
    """Cartesian product of webs; par is its De Morgan dual."""

    def __init__(self, left: Space, right: Space):
        super().__init__(left.engine, left.kset)
        self.left = left
        self.right = right

    def contains(self, p) -> bool:
        return isinstance(p, Pair) and self.left.contains(p.left) and self.right.contains(p.right)

    def enumerate(self, max_size: int) -> FrozenSet:
        points = set()
        for a in self.left.enumerate(max_size - 2):
            for b in self.right.enumerate(max_size - 1 - a.size()):
                points.add(Pair(a, b))
        return frozenset(points)

    @property
    def cap(self) -> Optional[int]:
        return _min_cap(self.left, self.right)

    def _verdict(self, m: Bag) -> Verdict:
        first = self.left.verdict(m.map(lambda p: p.left))
        if first is Verdict.STRICT_INCOHERENT:
            return first
        second = self.right.verdict(m.map(lambda p: p.right))
        if second is Verdict.STRICT_INCOHERENT:
            return second
        if first is Verdict.NEUTRAL and second is Verdict.NEUTRAL:
            return Verdict.NEUTRAL
        return Verdict.STRICT_COHERENT

    def polarity(self, p) -> Polarity:
        both = (
            self.left.polarity(p.left) is Polarity.POSITIVE
            and self.right.polarity(p.right) is Polarity.POSITIVE
        )
        return Polarity.POSITIVE if both else Polarity.NEGATIVE

    def __str__(self):
        return f"(tensor {self.left} {self.right})"


def plus(a: Space, b: Space) -> Space:
    return PlusSpace(a, b)


def with_(a: Space, b: Space) -> Space:
    return PlusSpace(a.dual(), b.dual()).dual()


def tensor(a: Space, b: Space) -> Space:
    return TensorSpace(a, b)


def par(a: Space, b: Space) -> Space:
    return TensorSpace(a.dual(), b.dual()).dual()


def lolli(a: Space, b: Space) -> Space:
    return par(a.dual(), b)


# ============================================================================
# TABLE SPACES
# ============================================================================


class TableSpace(Space):
    """
    A finite space given by an explicit verdict table over labels.

    The table maps every bag of cardinality in K up to ``cap`` to a verdict.
    Used with the set engine, the verdict of a set s is the verdict of the bag
    with support s and smallest cardinality present in the table.
    """

    def __init__(
        self,
        labels: Sequence[str],
        kset: KSet,
        cap: int,
        table: Dict[Bag, Verdict],
        name: str = "table",
        engine: Engine = Engine.MULTISET,
    ):
        super().__init__(engine, kset if engine is Engine.MULTISET else None)
        self.labels = tuple(labels)
        self.points = frozenset(Label(name) for name in self.labels)
        self.table_kset = kset
        self.table_cap = cap
        self.table = dict(table)
        self.name = name
        self._validate()
        self.by_support: Dict[frozenset, Verdict] = {}
        for bag in sorted(self.table, key=len, reverse=True):
            self.by_support[bag.support()] = self.table[bag]

    def _validate(self) -> None:
        for bag in self.table:
            if not all(p in self.points for p in bag):
                raise TableError(f"{self.name}: {bag} uses a label outside the web")
            if len(bag) not in self.table_kset or len(bag) > self.table_cap:
                raise TableError(f"{self.name}: {bag} has a cardinality outside K or above the cap")
        for k in self.table_kset.members(self.table_cap):
            for bag in bags_over(self.points, k):
                if bag not in self.table:
                    raise TableError(f"{self.name}: no verdict for {bag} (table is not total below its cap)")

    def as_engine(self, engine: Engine) -> "TableSpace":
        return TableSpace(self.labels, self.table_kset, self.table_cap, self.table, self.name, engine)

    def contains(self, p) -> bool:
        return p in self.points

    def enumerate(self, max_size: int) -> FrozenSet:
        return self.points if max_size >= 1 else frozenset()

    @property
    def cap(self) -> Optional[int]:
        if self.engine is Engine.SET:
            return len(self.labels)
        return self.table_cap

    def _verdict(self, m: Bag) -> Verdict:
        if self.engine is Engine.SET:
            found = self.by_support.get(m.support())
            if found is None:
                raise BoundExhausted(f"{self.name}: no table entry with support {m}")
            return found
        found = self.table.get(m)
        if found is None:
            if len(m) > self.table_cap:
                raise BoundExhausted(f"{self.name}: {m} is above the cap {self.table_cap}")
            raise CardinalityError(f"{self.name}: no verdict for {m}")
        return found

    def __str__(self):
        return self.name


def table_verdict(ts: TableSpace, m: Bag) -> Verdict:
    ts.check_bag(m)
    return ts.verdict(m)


def is_weakly_reflexive(ts: TableSpace) -> bool:
    """Every neutral entry has a singleton support."""
    return all(len(bag.support()) == 1 for bag, v in ts.table.items() if v is Verdict.NEUTRAL)


def table_from_rule(labels: Sequence[str], kset: KSet, cap: int, rule, name: str = "table") -> TableSpace:
    """Build a table by applying ``rule(bag) -> Verdict`` to every legal bag."""
    points = [Label(name) for name in labels]
    table = {}
    for k in kset.members(cap):
        for bag in bags_over(points, k):
            table[bag] = rule(bag)
    return TableSpace(labels, kset, cap, table, name)


def space_g(kset: Optional[KSet] = None, cap: int = 6) -> TableSpace:
    """
    The three-point space G: constant bags are neutral, bags with two-point
    support strictly coherent, bags using all three points strictly incoherent.
    """
    kset = kset or KSet.all()
    if kset.maximum is not None:
        cap = min(cap, kset.maximum)

    def rule(bag: Bag) -> Verdict:
        spread = len(bag.support())
        if spread == 1:
            return Verdict.NEUTRAL
        if spread == 2:
            return Verdict.STRICT_COHERENT
        return Verdict.STRICT_INCOHERENT

    return table_from_rule(("a", "b", "c"), kset, cap, rule, name="G")


def random_table_space(
    rng: random.Random,
    n_labels: int,
    kset: KSet,
    cap: Optional[int] = None,
    neutral_bias: float = 0.7,
) -> TableSpace:
    """
    A random weakly reflexive table space.

    Each label is, with probability ``neutral_bias``, neutral at every
    cardinality; otherwise its constant bags get random verdicts. Bags with
    larger supports are strictly coherent or strictly incoherent at random.
    """
    cap = cap or kset.maximum or 3
    labels = [chr(ord("a") + i) for i in range(n_labels)]
    neutral_labels = {name for name in labels if rng.random() < neutral_bias}
    strict = (Verdict.STRICT_COHERENT, Verdict.STRICT_INCOHERENT)

    def rule(bag: Bag) -> Verdict:
        support = bag.support()
        if len(support) == 1:
            (only,) = support
            if only.name in neutral_labels:
                return Verdict.NEUTRAL
            return rng.choice((Verdict.NEUTRAL,) + strict)
        return rng.choice(strict)

    return table_from_rule(labels, kset, cap, rule, name=f"random{n_labels}")


def parse_table_space(text: str, name: str = "table") -> TableSpace:
    """
    Read a table space file.

    Format:
        web: a b c
        K: pair|all|2,3
        cap: N                              (optional)
        verdict (bag a b) coherent-strict   (one bag)
        support (set a b) coherent-strict   (every bag with that support)

    Raises:
        TableError: On malformed lines or a table that is not total below its cap
    """
    labels: Optional[List[str]] = None
    kset: Optional[KSet] = None
    cap: Optional[int] = None
    bag_lines: List[Tuple[Bag, Verdict]] = []
    support_lines: List[Tuple[frozenset, Verdict]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        keyword = keyword.rstrip(":").lower()
        try:
            if keyword == "web":
                labels = rest.split()
            elif keyword == "k":
                kset = KSet.parse(rest)
            elif keyword == "cap":
                cap = int(rest)
            elif keyword in ("verdict", "support"):
                form, word = rest.rsplit(maxsplit=1)
                (node,) = read_all(form)
                members = [Label(arg.value) for arg in node.args()]
                if keyword == "verdict":
                    bag_lines.append((Bag.of(members), Verdict.parse(word)))
                else:
                    support_lines.append((frozenset(members), Verdict.parse(word)))
            else:
                raise TableError(f"unknown keyword '{keyword}'")
        except (ValueError, ConfigError) as e:
            raise TableError(f"{name} line {number}: {e}")

    if labels is None or kset is None:
        raise TableError(f"{name}: 'web:' and 'K:' lines are required")
    if cap is None:
        cap = kset.maximum or max((len(bag) for bag, _ in bag_lines), default=None)
        if cap is None:
            raise TableError(f"{name}: K is unbounded, declare 'cap:'")

    points = [Label(label) for label in labels]
    table: Dict[Bag, Verdict] = {}
    for support, verdict in support_lines:
        for k in kset.members(cap):
            for bag in bags_with_support(support, k):
                table[bag] = verdict
    for bag, verdict in bag_lines:
        table[bag] = verdict
    logger.debug(f"Read table space {name}: {len(labels)} labels, K={kset}, cap={cap}, {len(table)} entries")
    return TableSpace(labels, kset, cap, table, name)


def load_table_space(path: Path) -> TableSpace:
    path = Path(path)
    return parse_table_space(path.read_text(encoding="utf-8"), name=path.stem)


def render_table_space(ts: TableSpace) -> str:
    lines = [f"web: {' '.join(ts.labels)}", f"K: {ts.table_kset}", f"cap: {ts.table_cap}"]
    for bag in sort_elements(ts.table):
        lines.append(f"verdict {bag} {ts.table[bag].value}")
    return "\n".join(lines) + "\n"


# ============================================================================
# FORMULAS AS SPACES
# ============================================================================


@lru_cache(maxsize=1024)
def build_space(cfg: SemanticsConfig, f: Formula) -> Space:
    """Compile a formula to its space under cfg; ? and the negative connectives go through duals."""
    from expon import bang

    kset = cfg.kset
    if isinstance(f, One):
        return UnitSpace(cfg.engine, kset)
    if isinstance(f, Zero):
        return EmptySpace(cfg.engine, kset)
    if isinstance(f, (Bot, Top, Par, With, WhyNot)):
        return build_space(cfg, f.dual()).dual()
    if isinstance(f, Plus):
        return plus(build_space(cfg, f.left), build_space(cfg, f.right))
    if isinstance(f, Tensor):
        return tensor(build_space(cfg, f.left), build_space(cfg, f.right))
    if isinstance(f, OfCourse):
        return bang(build_space(cfg, f.body), cfg)
    raise TypeError(f"not a formula: {f!r}")


def as_space(cfg: SemanticsConfig, target) -> Space:
    """Accept either a formula or a ready-made space."""
    if isinstance(target, Space):
        return target
    return build_space(cfg, target)


def verdict(cfg: SemanticsConfig, f, m: Bag) -> Verdict:
    """
    Verdict of the bag m in the space of f (formula or space) under cfg.

    Raises:
        WebError: If some element of m is outside the web
        CardinalityError: If #m is not in K (multiset engine) or m is empty (set engine)
    """
    space = as_space(cfg, f)
    space.check_bag(m)
    return space.verdict(m)


def polarity(f, p, cfg: Optional[SemanticsConfig] = None) -> Polarity:
    """Polarity of p in the bipartite space of f."""
    space = as_space(cfg or SemanticsConfig.bipartite(), f)
    if not space.contains(p):
        raise WebError(f"{p} is not in the web of {space}")
    return space.polarity(p)


# ============================================================================
# CLIQUE SEARCH
# ============================================================================


def effective_card_bound(card_bound: Optional[int], n_points: int) -> int:
    return max(card_bound or config.DEFAULT_CARD_BOUND, 2 * n_points)


def candidate_bags(space: Space, points: Iterable, card_bound: int) -> Iterator[Bag]:
    """Every bag (or set) over points that the coherence of a clique must cover."""
    points = sort_elements(set(points))
    if space.engine is Engine.BIPARTITE:
        for p in points:
            yield Bag((p,))
    elif space.engine is Engine.SET:
        for size in range(1, min(len(points), card_bound) + 1):
            for chosen in combinations(points, size):
                yield Bag(chosen)
    elif space.engine is Engine.MULTISET:
        bound = card_bound if space.cap is None else min(card_bound, space.cap)
        for k in space.kset.members(bound):
            yield from bags_over(points, k)


def search_is_exact(space: Space, card_bound: int) -> bool:
    """Whether ``candidate_bags`` covers every bag the clique condition quantifies over."""
    if space.engine is not Engine.MULTISET:
        return True
    bound = card_bound if space.cap is None else min(card_bound, space.cap)
    return space.kset.maximum is not None and space.kset.maximum <= bound


def incoherent_witness(space: Space, points: Iterable, card_bound: Optional[int] = None) -> Optional[Bag]:
    """First strictly incoherent bag over points, or None."""
    points = list(points)
    bound = effective_card_bound(card_bound, len(set(points)))
    for bag in candidate_bags(space, points, bound):
        if space.verdict(bag) is Verdict.STRICT_INCOHERENT:
            return bag
    return None
