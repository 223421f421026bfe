"""
Finite multisets ("bags") and the combinatorics built on them:
sums, supports, sub-bags, sections and simultaneous column decompositions.
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Iterable, Iterator, List, Optional, Set, Tuple

from errors import BoundExhausted
from logger_config import get_logger

logger = get_logger(__name__)


# ============================================================================
# CANONICAL ORDER
# ============================================================================


def element_key(element) -> tuple:
    """
    Total structural order used for canonical forms.

    Points and bags provide their own ``sort_key``; plain labels, integers,
    tuples and frozensets are ordered by a type tag first.
    """
    sort_key = getattr(element, "sort_key", None)
    if sort_key is not None:
        return sort_key()
    if isinstance(element, str):
        return (0, element)
    if isinstance(element, int):
        return (1, element)
    if isinstance(element, tuple):
        return (2, tuple(element_key(e) for e in element))
    if isinstance(element, frozenset):
        return (3, tuple(sorted(element_key(e) for e in element)))
    raise TypeError(f"No canonical order for {element!r}")


def sort_elements(elements: Iterable) -> tuple:
    return tuple(sorted(elements, key=element_key))


def render_element(element) -> str:
    if isinstance(element, frozenset):
        return "(set " + " ".join(render_element(e) for e in sort_elements(element)) + ")"
    if isinstance(element, tuple):
        return "(tuple " + " ".join(render_element(e) for e in element) + ")"
    return str(element)


# ============================================================================
# BAG
# ============================================================================


@dataclass(frozen=True)
class Bag:
    """Finite multiset stored as the tuple of its elements in canonical order."""

    items: tuple = ()

    @classmethod
    def of(cls, elements: Iterable = ()) -> "Bag":
        return cls(sort_elements(elements))

    @classmethod
    def repeat(cls, element, k: int) -> "Bag":
        return cls((element,) * k)

    @classmethod
    def from_counts(cls, counts: dict) -> "Bag":
        return cls.of(e for e, n in counts.items() for _ in range(n))

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator:
        return iter(self.items)

    def __contains__(self, element) -> bool:
        return element in self.items

    def __add__(self, other: "Bag") -> "Bag":
        return Bag.of(self.items + other.items)

    def __str__(self) -> str:
        if not self.items:
            return "(bag)"
        return "(bag " + " ".join(render_element(e) for e in self.items) + ")"

    @cached_property
    def _counts(self) -> Counter:
        return Counter(self.items)

    def counts(self) -> Counter:
        return Counter(self._counts)

    def count(self, element) -> int:
        return self._counts.get(element, 0)

    def support(self) -> frozenset:
        return frozenset(self._counts)

    def distinct(self) -> tuple:
        """Distinct elements in canonical order."""
        return tuple(dict.fromkeys(self.items))

    def is_set(self) -> bool:
        return len(self._counts) == len(self.items)

    def is_sub_bag(self, other: "Bag") -> bool:
        return all(n <= other.count(e) for e, n in self._counts.items())

    def map(self, fn: Callable) -> "Bag":
        return Bag.of(fn(e) for e in self.items)

    def sort_key(self) -> tuple:
        return (14, tuple(element_key(e) for e in self.items))

    def size(self) -> int:
        """Node count: 1 plus the sizes of the elements."""
        return 1 + sum(e.size() for e in self.items)

    def sub_bags(self, k: int) -> Iterator["Bag"]:
        """All sub-bags of cardinality k, each once."""
        seen = set()
        for chosen in combinations(self.items, k):
            if chosen not in seen:
                seen.add(chosen)
                yield Bag(chosen)


EMPTY = Bag()


def bag_sum(bags: Iterable[Bag]) -> Bag:
    """Generalised union: counts add up."""
    items = []
    for bag in bags:
        items.extend(bag.items)
    return Bag.of(items)


def support(bag: Bag) -> frozenset:
    return bag.support()


def sub_bag(a: Bag, b: Bag) -> bool:
    return a.is_sub_bag(b)


def bags_over(elements: Iterable, k: int) -> Iterator[Bag]:
    """Every bag of cardinality k whose support lies in ``elements``."""
    for chosen in combinations_with_replacement(sort_elements(set(elements)), k):
        yield Bag(chosen)


def bags_with_support(elements: Iterable, k: int) -> Iterator[Bag]:
    """Every bag of cardinality k whose support is exactly ``elements``."""
    base = sort_elements(set(elements))
    if len(base) > k:
        return
    for extra in combinations_with_replacement(base, k - len(base)):
        yield Bag.of(base + extra)


# ============================================================================
# SECTIONS
# ============================================================================


def sections(mu: Iterable) -> Set[Bag]:
    """
    All bags built by picking one element in each component of ``mu``.

    Args:
        mu: Bag (or sequence) of components; components are bags or sets

    Returns:
        Set of sections; empty when some component is empty
    """
    return set(iter_sections(mu))


def iter_sections(mu: Iterable) -> Iterator[Bag]:
    """Lazy variant of ``sections``; a section may be yielded more than once."""
    choices = [sort_elements(set(component)) for component in mu]
    for picked in product(*choices):
        yield Bag.of(picked)


def set_sections(x: Iterable) -> Set[frozenset]:
    """
    Set-level sections: sets s meeting every member of x with s inside their union.

    Args:
        x: Collection of sets or bags (bags are read through their support)

    Returns:
        Set of frozensets
    """
    members = [frozenset(member) for member in x]
    if any(not member for member in members):
        return set()
    universe = sort_elements(frozenset().union(*members))
    found = set()
    for size in range(0 if not members else 1, len(universe) + 1):
        for chosen in combinations(universe, size):
            candidate = frozenset(chosen)
            if all(candidate & member for member in members):
                found.add(candidate)
    return found


# ============================================================================
# COLUMN DECOMPOSITIONS
# ============================================================================


def column_decompositions(
    mu: Iterable,
    column_filter: Optional[Callable[[tuple], bool]] = None,
    budget: Optional[int] = None,
) -> Iterator[Tuple[tuple, ...]]:
    """
    Arrange every component of mu as a row of the same length J and yield the columns.

    Each yielded family is a tuple of columns; a column is a tuple holding one
    element per row, rows taken in the canonical order of mu. Families that
    differ only by a permutation of columns are yielded once. Nothing is
    yielded when the components have different cardinalities.

    Args:
        mu: Bag of bags
        column_filter: Optional predicate; columns failing it are never used,
            which prunes the search when the caller only wants admissible families
        budget: Maximum number of candidate columns examined

    Yields:
        Tuples of columns

    Raises:
        BoundExhausted: If the budget runs out before the search ends
    """
    rows: List[Bag] = [Bag.of(component) for component in mu]
    if rows and len({len(row) for row in rows}) != 1:
        return
    width = len(rows[0]) if rows else 0
    remaining = [row.counts() for row in rows]
    steps = [0]

    def extend(columns: list, lower: Optional[tuple], left: int) -> Iterator[Tuple[tuple, ...]]:
        if left == 0:
            yield tuple(columns)
            return
        options = [sort_elements(e for e, n in counter.items() if n > 0) for counter in remaining]
        for column in product(*options):
            steps[0] += 1
            if budget is not None and steps[0] > budget:
                raise BoundExhausted(f"column decomposition budget {budget} exhausted")
            key = tuple(element_key(e) for e in column)
            if lower is not None and key < lower:
                continue
            if column_filter is not None and not column_filter(column):
                continue
            for counter, element in zip(remaining, column):
                counter[element] -= 1
            columns.append(column)
            yield from extend(columns, key, left - 1)
            columns.pop()
            for counter, element in zip(remaining, column):
                counter[element] += 1

    yield from extend([], None, width)
