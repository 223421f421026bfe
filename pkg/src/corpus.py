"""
Loaders for the shipped corpus: proofs, interaction pairs, cut-elimination
pairs, table spaces, formulas and point sets.
"""

from pathlib import Path
from typing import Dict, FrozenSet, Optional, Tuple

import config
from errors import ParseError
from expon import bang, why_not
from llsyntax import Formula, Node, Proof, formula_from_node, load_proof, parse_formula, parse_point_set, read_one
from logger_config import get_logger
from neutral import support_closure
from spacecore import (
    Engine,
    ExpFlavor,
    KSet,
    SemanticsConfig,
    Space,
    TableSpace,
    build_space,
    load_table_space,
    lolli,
    par,
    plus,
    tensor,
    with_,
)

logger = get_logger(__name__)


def load_proofs(directory: Optional[Path] = None) -> Dict[str, Proof]:
    """Every ``*.llp`` proof of a directory, keyed by file stem."""
    directory = Path(directory or config.PROOF_DIR)
    proofs = {}
    for path in sorted(directory.glob(f"*{config.PROOF_SUFFIX}")):
        proofs[path.stem] = load_proof(path)
        logger.debug(f"Loaded proof {path.name}")
    logger.debug(f"Loaded {len(proofs)} proof(s) from {directory}")
    return proofs


def _paired(directory: Path, first: str, second: str) -> Dict[str, Tuple[Proof, Proof]]:
    """Proofs stored as ``<name>-<first>.llp`` / ``<name>-<second>.llp``."""
    pairs = {}
    suffix = f"-{first}{config.PROOF_SUFFIX}"
    for path in sorted(directory.glob(f"*{suffix}")):
        name = path.name[: -len(suffix)]
        partner = directory / f"{name}-{second}{config.PROOF_SUFFIX}"
        if not partner.exists():
            raise ParseError(f"{path.name} has no partner {partner.name}")
        pairs[name] = (load_proof(path), load_proof(partner))
    logger.debug(f"Loaded {len(pairs)} pair(s) from {directory}")
    return pairs


def load_interaction_pairs(directory: Optional[Path] = None) -> Dict[str, Tuple[Proof, Proof]]:
    """Pairs (proof of |- A, proof of |- dual A)."""
    return _paired(Path(directory or config.INTERACT_DIR), "left", "right")


def load_cutelim_pairs(directory: Optional[Path] = None) -> Dict[str, Tuple[Proof, Proof]]:
    """Pairs (proof, proof after one cut-elimination step)."""
    return _paired(Path(directory or config.CUTELIM_DIR), "before", "after")


def load_spaces(directory: Optional[Path] = None) -> Dict[str, TableSpace]:
    directory = Path(directory or config.SPACE_DIR)
    return {path.stem: load_table_space(path) for path in sorted(directory.glob(f"*{config.TABLE_SUFFIX}"))}


def load_formula(path: Path) -> Formula:
    return parse_formula(Path(path).read_text(encoding="utf-8"))


def load_point_set(path: Path) -> FrozenSet:
    return parse_point_set(Path(path).read_text(encoding="utf-8"))


# ============================================================================
# SPACE EXPRESSIONS
# ============================================================================


SPACE_BINARY = {"tensor": tensor, "par": par, "with": with_, "plus": plus, "lolli": lolli}


def closure_config(cfg: SemanticsConfig) -> SemanticsConfig:
    """Multiset semantics read by ``(closure X)`` inside a set-engine expression."""
    flavor = cfg.exponential if cfg.exponential in (ExpFlavor.UNIFORM_MULTISET, ExpFlavor.UNIFORM_SET) else ExpFlavor.COFREE
    return SemanticsConfig.multiset(cfg.kset or KSet.all(), flavor, card_bound=cfg.card_bound)


def _needs_spaces(node: Node, tables: Dict[str, TableSpace]) -> bool:
    if not node.is_list:
        return node.value in tables
    if node.value and not node.value[0].is_list and node.value[0].value == "closure":
        return True
    return any(_needs_spaces(arg, tables) for arg in node.args())


def _space_from(cfg: SemanticsConfig, node: Node, tables: Dict[str, TableSpace]) -> Space:
    if not _needs_spaces(node, tables):
        return build_space(cfg, formula_from_node(node))
    if not node.is_list:
        return tables[node.value].as_engine(cfg.engine)
    head = node.head()
    if head == "closure":
        if cfg.engine is not Engine.SET or len(node.args()) != 1:
            raise ParseError("(closure X) takes one argument under a hypercoherence semantics", node.position)
        return support_closure(_space_from(closure_config(cfg), node.args()[0], tables))
    args = [_space_from(cfg, arg, tables) for arg in node.args()]
    if head in SPACE_BINARY and len(args) == 2:
        return SPACE_BINARY[head](*args)
    if head == "ofc" and len(args) == 1:
        return bang(args[0], cfg)
    if head == "why" and len(args) == 1:
        return why_not(args[0], cfg)
    if head == "dual" and len(args) == 1:
        return args[0].dual()
    raise ParseError(f"'{head}' cannot combine table spaces", node.position)


def space_expression(cfg: SemanticsConfig, text: str, tables: Optional[Dict[str, TableSpace]] = None):
    """
    Read a formula whose atoms may also name table spaces, e.g. ``(lolli (ofc G) bool)``.

    ``(closure X)`` is the support closure of the multiset reading of X; it is
    only meaningful under a hypercoherence semantics. Returns a Formula when
    neither tables nor closures are mentioned, a Space otherwise.
    """
    tables = load_spaces() if tables is None else tables
    node = read_one(text)
    if not _needs_spaces(node, tables):
        return formula_from_node(node)
    space = _space_from(cfg, node, tables)
    logger.debug(f"Built space {space} under {cfg.describe()}")
    return space
