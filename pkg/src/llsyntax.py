"""
Formulas, points and proofs of linear logic, with their s-expression text format.

Proofs use a right-sided sequent calculus: the principal formula of every rule
sits at the tail of the sequent and exchange swaps a position with the last one.
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from errors import ParseError, ProofCheckError
from logger_config import get_logger
from multiset import Bag, element_key

logger = get_logger(__name__)


# ============================================================================
# S-EXPRESSION READER
# ============================================================================


@dataclass(frozen=True)
class Node:
    """A read s-expression: ``value`` is a token string or a tuple of Nodes."""

    value: Union[str, tuple]
    position: int

    @property
    def is_list(self) -> bool:
        return isinstance(self.value, tuple)

    def head(self) -> str:
        if not self.is_list or not self.value or self.value[0].is_list:
            raise ParseError("expected a form starting with a keyword", self.position)
        return self.value[0].value

    def args(self) -> tuple:
        return self.value[1:]


def _skip_whitespace(s: str, i: int) -> int:
    while i < len(s):
        if s[i] in ";#":
            while i < len(s) and s[i] != "\n":
                i += 1
            continue
        if not s[i].isspace():
            return i
        i += 1
    return i


def _read_token(s: str, i: int) -> Tuple[str, int]:
    start = i
    while i < len(s) and not s[i].isspace() and s[i] not in "()":
        i += 1
    return s[start:i], i


def _read_list(s: str, i: int) -> Tuple[Node, int]:
    start = i
    i += 1
    items = []
    while True:
        i = _skip_whitespace(s, i)
        if i == len(s):
            raise ParseError("list not closed", start)
        if s[i] == ")":
            return Node(tuple(items), start), i + 1
        value, i = _read(s, i)
        items.append(value)


def _read(s: str, i: int) -> Tuple[Node, int]:
    i = _skip_whitespace(s, i)
    if i == len(s):
        raise ParseError("unexpected end of input", i)
    if s[i] == "(":
        return _read_list(s, i)
    if s[i] == ")":
        raise ParseError("unbalanced parentheses", i)
    token, end = _read_token(s, i)
    return Node(token, i), end


def read_all(text: str) -> List[Node]:
    """Read every top-level s-expression of ``text``."""
    nodes = []
    i = _skip_whitespace(text, 0)
    while i < len(text):
        node, i = _read(text, i)
        nodes.append(node)
        i = _skip_whitespace(text, i)
    return nodes


def read_one(text: str) -> Node:
    nodes = read_all(text)
    if len(nodes) != 1:
        raise ParseError(f"expected exactly one expression, found {len(nodes)}", 0)
    return nodes[0]


def _expect_arity(node: Node, arity: int) -> tuple:
    args = node.args()
    if len(args) != arity:
        raise ParseError(
            f"'{node.head()}' expects {arity} argument(s), got {len(args)}", node.position
        )
    return args


def _int_token(node: Node) -> int:
    if node.is_list:
        raise ParseError("expected an integer", node.position)
    try:
        return int(node.value)
    except ValueError:
        raise ParseError(f"expected an integer, found '{node.value}'", node.position)


# ============================================================================
# FORMULAS
# ============================================================================


class Formula:
    """Base class of formula nodes. Subclasses are frozen dataclasses."""

    def dual(self) -> "Formula":
        raise NotImplementedError

    def __str__(self) -> str:
        return render_formula(self)


@dataclass(frozen=True)
class One(Formula):
    def dual(self):
        return BOT


@dataclass(frozen=True)
class Bot(Formula):
    def dual(self):
        return ONE


@dataclass(frozen=True)
class Zero(Formula):
    def dual(self):
        return TOP


@dataclass(frozen=True)
class Top(Formula):
    def dual(self):
        return ZERO


@dataclass(frozen=True)
class Tensor(Formula):
    left: Formula
    right: Formula

    def dual(self):
        return Par(self.left.dual(), self.right.dual())


@dataclass(frozen=True)
class Par(Formula):
    left: Formula
    right: Formula

    def dual(self):
        return Tensor(self.left.dual(), self.right.dual())


@dataclass(frozen=True)
class With(Formula):
    left: Formula
    right: Formula

    def dual(self):
        return Plus(self.left.dual(), self.right.dual())


@dataclass(frozen=True)
class Plus(Formula):
    left: Formula
    right: Formula

    def dual(self):
        return With(self.left.dual(), self.right.dual())


@dataclass(frozen=True)
class OfCourse(Formula):
    body: Formula

    def dual(self):
        return WhyNot(self.body.dual())


@dataclass(frozen=True)
class WhyNot(Formula):
    body: Formula

    def dual(self):
        return OfCourse(self.body.dual())


ONE = One()
BOT = Bot()
ZERO = Zero()
TOP = Top()
BOOL = Plus(ONE, ONE)

BINARY = {"tensor": Tensor, "par": Par, "with": With, "plus": Plus}
UNARY = {"ofc": OfCourse, "why": WhyNot}
CONSTANTS = {"1": ONE, "bot": BOT, "0": ZERO, "top": TOP}


def dual(f: Formula) -> Formula:
    return f.dual()


def nat(n: int, position: Optional[int] = None) -> Formula:
    """n-fold plus of 1, right nested; nat(2) is bool."""
    if n < 1:
        raise ParseError(f"nat needs n >= 1, got {n}", position)
    formula = ONE
    for _ in range(n - 1):
        formula = Plus(ONE, formula)
    return formula


def lolli(a: Formula, b: Formula) -> Formula:
    """Linear arrow A -o B, i.e. dual(A) par B."""
    return Par(a.dual(), b)


def formula_from_node(node: Node) -> Formula:
    if not node.is_list:
        if node.value in CONSTANTS:
            return CONSTANTS[node.value]
        if node.value == "bool":
            return BOOL
        raise ParseError(f"unknown formula symbol '{node.value}'", node.position)
    head = node.head()
    if head in BINARY:
        left, right = _expect_arity(node, 2)
        return BINARY[head](formula_from_node(left), formula_from_node(right))
    if head in UNARY:
        (body,) = _expect_arity(node, 1)
        return UNARY[head](formula_from_node(body))
    if head == "dual":
        (body,) = _expect_arity(node, 1)
        return formula_from_node(body).dual()
    if head == "lolli":
        left, right = _expect_arity(node, 2)
        return lolli(formula_from_node(left), formula_from_node(right))
    if head == "nat":
        (n,) = _expect_arity(node, 1)
        return nat(_int_token(n), n.position)
    raise ParseError(f"unknown connective '{head}'", node.position)


def parse_formula(text: str) -> Formula:
    return formula_from_node(read_one(text))


def render_formula(f: Formula) -> str:
    for word, constant in CONSTANTS.items():
        if f == constant:
            return word
    for word, cls in BINARY.items():
        if type(f) is cls:
            return f"({word} {render_formula(f.left)} {render_formula(f.right)})"
    for word, cls in UNARY.items():
        if type(f) is cls:
            return f"({word} {render_formula(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


def render_sequent(sequent: Sequence[Formula]) -> str:
    return "|- " + ", ".join(render_formula(f) for f in sequent)


# ============================================================================
# POINTS
# ============================================================================


class Point:
    """Base class of web points; ``Bag`` plays the role of the bag point."""


@dataclass(frozen=True)
class Star(Point):
    def sort_key(self):
        return (10,)

    def size(self) -> int:
        return 1

    def __str__(self):
        return "*"


@dataclass(frozen=True)
class Label(Point):
    """Opaque point of a table space."""

    name: str

    def sort_key(self):
        return (9, self.name)

    def size(self) -> int:
        return 1

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Inl(Point):
    payload: object

    def sort_key(self):
        return (11, element_key(self.payload))

    def size(self) -> int:
        return 1 + self.payload.size()

    def __str__(self):
        return f"(inl {self.payload})"


@dataclass(frozen=True)
class Inr(Point):
    payload: object

    def sort_key(self):
        return (12, element_key(self.payload))

    def size(self) -> int:
        return 1 + self.payload.size()

    def __str__(self):
        return f"(inr {self.payload})"


@dataclass(frozen=True)
class Pair(Point):
    left: object
    right: object

    def sort_key(self):
        return (13, element_key(self.left), element_key(self.right))

    def size(self) -> int:
        return 1 + self.left.size() + self.right.size()

    def __str__(self):
        return f"(pair {self.left} {self.right})"


STAR = Star()
TRUE = Inl(STAR)
FALSE = Inr(STAR)


def point_size(p) -> int:
    return p.size()


def point_from_node(node: Node):
    if not node.is_list:
        if node.value == "*":
            return STAR
        return Label(node.value)
    head = node.head()
    if head == "inl":
        (payload,) = _expect_arity(node, 1)
        return Inl(point_from_node(payload))
    if head == "inr":
        (payload,) = _expect_arity(node, 1)
        return Inr(point_from_node(payload))
    if head == "pair":
        left, right = _expect_arity(node, 2)
        return Pair(point_from_node(left), point_from_node(right))
    if head == "bag":
        return Bag.of(point_from_node(arg) for arg in node.args())
    raise ParseError(f"unknown point constructor '{head}'", node.position)


def parse_point(text: str):
    return point_from_node(read_one(text))


def render_point(p) -> str:
    return str(p)


def tuple_from_node(node: Node) -> tuple:
    if not node.is_list or node.head() != "tuple":
        raise ParseError("expected (tuple ...)", node.position)
    return tuple(point_from_node(arg) for arg in node.args())


def parse_tuple(text: str) -> tuple:
    return tuple_from_node(read_one(text))


def render_tuple(points: Sequence) -> str:
    if not points:
        return "(tuple)"
    return "(tuple " + " ".join(str(p) for p in points) + ")"


def parse_point_set(text: str) -> FrozenSet:
    """A point set file: one point per top-level expression."""
    return frozenset(point_from_node(node) for node in read_all(text))


# ============================================================================
# WEBS
# ============================================================================


def point_in_web(f: Formula, p) -> bool:
    """Structural web membership; webs are invariant under duality."""
    if isinstance(f, (One, Bot)):
        return isinstance(p, Star)
    if isinstance(f, (Zero, Top)):
        return False
    if isinstance(f, (Plus, With)):
        if isinstance(p, Inl):
            return point_in_web(f.left, p.payload)
        if isinstance(p, Inr):
            return point_in_web(f.right, p.payload)
        return False
    if isinstance(f, (Tensor, Par)):
        return isinstance(p, Pair) and point_in_web(f.left, p.left) and point_in_web(f.right, p.right)
    if isinstance(f, (OfCourse, WhyNot)):
        return isinstance(p, Bag) and all(point_in_web(f.body, e) for e in p)
    return False


def bags_up_to(points: Sequence, max_size: int) -> Iterator[Bag]:
    """
    Every bag over ``points`` whose size (1 + element sizes) is at most max_size.

    Args:
        points: Candidate elements, any order
        max_size: Size bound of the produced bags
    """
    ordered = sorted(points, key=element_key)
    sizes = [p.size() for p in ordered]
    chosen = []

    def extend(start: int, remaining: int) -> Iterator[Bag]:
        yield Bag(tuple(chosen))
        for i in range(start, len(ordered)):
            if sizes[i] <= remaining:
                chosen.append(ordered[i])
                yield from extend(i, remaining - sizes[i])
                chosen.pop()

    if max_size >= 1:
        yield from extend(0, max_size - 1)


@lru_cache(maxsize=4096)
def enum_web(f: Formula, max_size: int) -> FrozenSet:
    """All points of the web of f whose size is at most max_size."""
    if max_size < 1:
        return frozenset()
    if isinstance(f, (One, Bot)):
        return frozenset({STAR})
    if isinstance(f, (Zero, Top)):
        return frozenset()
    if isinstance(f, (Plus, With)):
        lefts = (Inl(p) for p in enum_web(f.left, max_size - 1))
        rights = (Inr(p) for p in enum_web(f.right, max_size - 1))
        return frozenset(lefts) | frozenset(rights)
    if isinstance(f, (Tensor, Par)):
        points = set()
        for a in enum_web(f.left, max_size - 2):
            for b in enum_web(f.right, max_size - 1 - a.size()):
                points.add(Pair(a, b))
        return frozenset(points)
    if isinstance(f, (OfCourse, WhyNot)):
        return frozenset(bags_up_to(enum_web(f.body, max_size - 1), max_size))
    raise TypeError(f"not a formula: {f!r}")


# ============================================================================
# PROOFS
# ============================================================================


class Proof:
    """Base class of proof nodes; ``conclusion`` is checked once and cached."""

    rule = "?"

    @cached_property
    def conclusion(self) -> Tuple[Formula, ...]:
        return check_proof(self)

    def premises(self) -> tuple:
        return ()

    def __str__(self) -> str:
        return render_proof(self)


@dataclass(frozen=True)
class Ax(Proof):
    formula: Formula
    rule = "ax"


@dataclass(frozen=True)
class Cut(Proof):
    formula: Formula
    left: Proof
    right: Proof
    rule = "cut"

    def premises(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class OneI(Proof):
    rule = "one"


@dataclass(frozen=True)
class BotI(Proof):
    premise: Proof
    rule = "bot"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class TopI(Proof):
    context: Tuple[Formula, ...] = ()
    rule = "top"


@dataclass(frozen=True)
class WithI(Proof):
    left: Proof
    right: Proof
    rule = "with"

    def premises(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Plus1(Proof):
    premise: Proof
    other: Formula
    rule = "plus1"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class Plus2(Proof):
    premise: Proof
    other: Formula
    rule = "plus2"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class ParI(Proof):
    premise: Proof
    rule = "par"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class TensorI(Proof):
    left: Proof
    right: Proof
    rule = "tensor"

    def premises(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Prom(Proof):
    premise: Proof
    rule = "prom"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class Cont(Proof):
    premise: Proof
    rule = "cont"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class Weak(Proof):
    premise: Proof
    formula: Formula
    rule = "weak"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class Der(Proof):
    premise: Proof
    rule = "der"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class Ex(Proof):
    index: int
    premise: Proof
    rule = "ex"

    def premises(self):
        return (self.premise,)


@dataclass(frozen=True)
class GiveUp(Proof):
    rule = "giveup"


@dataclass(frozen=True)
class Diverge(Proof):
    context: Tuple[Formula, ...] = ()
    rule = "diverge"


@dataclass(frozen=True)
class Sum(Proof):
    left: Proof
    right: Proof
    rule = "sum"

    def premises(self):
        return (self.left, self.right)


def uses_sum(p: Proof) -> bool:
    return isinstance(p, Sum) or any(uses_sum(q) for q in p.premises())


def _proof_from(node: Node) -> Proof:
    head = node.head()
    args = node.args()
    if head == "ax":
        (f,) = _expect_arity(node, 1)
        return Ax(formula_from_node(f))
    if head == "cut":
        f, left, right = _expect_arity(node, 3)
        return Cut(formula_from_node(f), _proof_from(left), _proof_from(right))
    if head == "one":
        _expect_arity(node, 0)
        return OneI()
    if head == "giveup":
        _expect_arity(node, 0)
        return GiveUp()
    if head == "top":
        return TopI(tuple(formula_from_node(f) for f in args))
    if head == "diverge":
        return Diverge(tuple(formula_from_node(f) for f in args))
    if head in ("plus1", "plus2", "weak"):
        premise, f = _expect_arity(node, 2)
        cls = {"plus1": Plus1, "plus2": Plus2, "weak": Weak}[head]
        return cls(_proof_from(premise), formula_from_node(f))
    if head == "ex":
        index, premise = _expect_arity(node, 2)
        return Ex(_int_token(index), _proof_from(premise))
    unary = {"bot": BotI, "par": ParI, "prom": Prom, "cont": Cont, "der": Der}
    if head in unary:
        (premise,) = _expect_arity(node, 1)
        return unary[head](_proof_from(premise))
    binary = {"with": WithI, "tensor": TensorI, "sum": Sum}
    if head in binary:
        left, right = _expect_arity(node, 2)
        return binary[head](_proof_from(left), _proof_from(right))
    raise ParseError(f"unknown rule '{head}'", node.position)


def parse_proof(text: str) -> Proof:
    return _proof_from(read_one(text))


def load_proof(path: Path) -> Proof:
    logger.debug(f"Loading proof {path}")
    return parse_proof(Path(path).read_text(encoding="utf-8"))


def render_proof(p: Proof) -> str:
    if isinstance(p, Ax):
        return f"(ax {render_formula(p.formula)})"
    if isinstance(p, Cut):
        return f"(cut {render_formula(p.formula)} {render_proof(p.left)} {render_proof(p.right)})"
    if isinstance(p, (TopI, Diverge)):
        return "(" + " ".join([p.rule] + [render_formula(f) for f in p.context]) + ")"
    if isinstance(p, (Plus1, Plus2)):
        return f"({p.rule} {render_proof(p.premise)} {render_formula(p.other)})"
    if isinstance(p, Weak):
        return f"(weak {render_proof(p.premise)} {render_formula(p.formula)})"
    if isinstance(p, Ex):
        return f"(ex {p.index} {render_proof(p.premise)})"
    return "(" + " ".join([p.rule] + [render_proof(q) for q in p.premises()]) + ")"


# ============================================================================
# PROOF CHECKING
# ============================================================================


def _tail(rule: str, path: str, sequent: tuple, count: int = 1) -> None:
    if len(sequent) < count:
        raise ProofCheckError(
            rule, path, f"needs {count} formula(s) in the premise, found {render_sequent(sequent)}"
        )


def _expect(rule: str, path: str, expected: Formula, found: Formula) -> None:
    if expected != found:
        raise ProofCheckError(
            rule, path, f"expected {render_formula(expected)}, found {render_formula(found)}"
        )


def check_proof(p: Proof, path: str = "root") -> Tuple[Formula, ...]:
    """
    Validate every node of a proof and return its conclusion.

    Args:
        p: Proof tree
        path: Position of p, used in diagnostics ("root/0/1" = second premise of first premise)

    Returns:
        The conclusion sequent as a tuple of formulas

    Raises:
        ProofCheckError: If some node does not instantiate its rule shape
    """
    rule = p.rule
    premises = [check_proof(q, f"{path}/{i}") for i, q in enumerate(p.premises())]

    if isinstance(p, Ax):
        return (p.formula, p.formula.dual())
    if isinstance(p, OneI):
        return (ONE,)
    if isinstance(p, GiveUp):
        return ()
    if isinstance(p, TopI):
        return tuple(p.context) + (TOP,)
    if isinstance(p, Diverge):
        return tuple(p.context)
    if isinstance(p, BotI):
        return premises[0] + (BOT,)
    if isinstance(p, Cut):
        left, right = premises
        _tail(rule, path, left)
        _tail(rule, path, right)
        _expect(rule, path, p.formula, left[-1])
        _expect(rule, path, p.formula.dual(), right[-1])
        return left[:-1] + right[:-1]
    if isinstance(p, WithI):
        left, right = premises
        _tail(rule, path, left)
        _tail(rule, path, right)
        if left[:-1] != right[:-1]:
            raise ProofCheckError(
                rule, path, f"contexts differ: {render_sequent(left[:-1])} vs {render_sequent(right[:-1])}"
            )
        return left[:-1] + (With(left[-1], right[-1]),)
    if isinstance(p, Plus1):
        (premise,) = premises
        _tail(rule, path, premise)
        return premise[:-1] + (Plus(premise[-1], p.other),)
    if isinstance(p, Plus2):
        (premise,) = premises
        _tail(rule, path, premise)
        return premise[:-1] + (Plus(p.other, premise[-1]),)
    if isinstance(p, ParI):
        (premise,) = premises
        _tail(rule, path, premise, 2)
        return premise[:-2] + (Par(premise[-2], premise[-1]),)
    if isinstance(p, TensorI):
        left, right = premises
        _tail(rule, path, left)
        _tail(rule, path, right)
        return left[:-1] + right[:-1] + (Tensor(left[-1], right[-1]),)
    if isinstance(p, Prom):
        (premise,) = premises
        _tail(rule, path, premise)
        for position, f in enumerate(premise[:-1]):
            if not isinstance(f, WhyNot):
                raise ProofCheckError(
                    rule, path, f"context formula {position} is {render_formula(f)}, expected a ?-formula"
                )
        return premise[:-1] + (OfCourse(premise[-1]),)
    if isinstance(p, Cont):
        (premise,) = premises
        _tail(rule, path, premise, 2)
        if not isinstance(premise[-1], WhyNot):
            raise ProofCheckError(rule, path, f"expected a ?-formula, found {render_formula(premise[-1])}")
        _expect(rule, path, premise[-1], premise[-2])
        return premise[:-1]
    if isinstance(p, Weak):
        if not isinstance(p.formula, WhyNot):
            raise ProofCheckError(rule, path, f"expected a ?-formula, found {render_formula(p.formula)}")
        return premises[0] + (p.formula,)
    if isinstance(p, Der):
        (premise,) = premises
        _tail(rule, path, premise)
        return premise[:-1] + (WhyNot(premise[-1]),)
    if isinstance(p, Ex):
        (premise,) = premises
        if not 0 <= p.index < len(premise):
            raise ProofCheckError(rule, path, f"index {p.index} outside a sequent of length {len(premise)}")
        swapped = list(premise)
        swapped[p.index], swapped[-1] = swapped[-1], swapped[p.index]
        return tuple(swapped)
    if isinstance(p, Sum):
        left, right = premises
        if left != right:
            raise ProofCheckError(
                rule, path, f"conclusions differ: {render_sequent(left)} vs {render_sequent(right)}"
            )
        return left
    raise TypeError(f"not a proof node: {p!r}")
