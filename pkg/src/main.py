"""
Command-line front end of the semantics workbench.

    python main.py interpret ../corpus/proofs/bool_twice.llp --semantics coh-uniform
    python main.py verdict "(ofc bool)" "(bag (bag (inl *)) (bag (inl *) (inl *)))" --semantics multi
    python main.py laws

Results go to stdout (text or JSON records); progress and diagnostics go to
stderr and the log file.
"""

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict, List, Optional

import config
from corpus import (
    load_cutelim_pairs,
    load_formula,
    load_interaction_pairs,
    load_point_set,
    load_proofs,
    space_expression,
)
from errors import ConfigError, LLSemError, WebError
from laws import laws_suite
from llsyntax import load_proof, parse_point, parse_point_set, render_tuple
from logger_config import get_logger, setup_logging
from multiset import Bag, render_element, sort_elements
from neutral import neutral_query, restrict_interp
from relsem import ExpPolicy, interpret, load_interp
from spacecore import ExpFlavor, KSet, SemanticsConfig, load_table_space, verdict
from verify import CheckRecord, Status, corpus_suite, cutelim_suite, fuzz_suite, interact, interaction_record, interaction_suite, is_clique

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

# name -> factory(K) ; K is None outside the multiset engine
SEMANTICS: Dict[str, Callable[[Optional[KSet]], SemanticsConfig]] = {
    "rel": lambda k: SemanticsConfig.relational(),
    "bipartite": lambda k: SemanticsConfig.bipartite(),
    "bipartite-uniform": lambda k: SemanticsConfig.bipartite(uniform=True),
    "coh": lambda k: SemanticsConfig.multiset(k or KSet.pair()),
    "coh-uniform": lambda k: SemanticsConfig.multiset(k or KSet.pair(), ExpFlavor.UNIFORM_MULTISET),
    "coh-uniform-set": lambda k: SemanticsConfig.multiset(k or KSet.pair(), ExpFlavor.UNIFORM_SET),
    "hyper": lambda k: SemanticsConfig.hyper(),
    "hyper-uniform": lambda k: SemanticsConfig.hyper(ExpFlavor.UNIFORM_MULTISET),
    "hyper-uniform-set": lambda k: SemanticsConfig.hyper(ExpFlavor.UNIFORM_SET),
    "multi": lambda k: SemanticsConfig.multiset(k or KSet.all()),
    "multi-uniform": lambda k: SemanticsConfig.multiset(k or KSet.all(), ExpFlavor.UNIFORM_MULTISET),
    "multi-uniform-set": lambda k: SemanticsConfig.multiset(k or KSet.all(), ExpFlavor.UNIFORM_SET),
}

MULTISET_SEMANTICS = {name for name in SEMANTICS if name.startswith(("coh", "multi"))}


# ============================================================================
# SELECTORS
# ============================================================================


def semantics_config(
    name: str,
    kset: Optional[str] = None,
    exponential: Optional[str] = None,
    card_bound: Optional[int] = None,
) -> SemanticsConfig:
    """
    Resolve the command-line selectors to a SemanticsConfig.

    Raises:
        ConfigError: On an unknown name or a selector that does not apply
    """
    if name not in SEMANTICS:
        raise ConfigError(f"unknown semantics '{name}'")
    if kset is not None and name not in MULTISET_SEMANTICS:
        raise ConfigError(f"--K does not apply to '{name}'")
    cfg = SEMANTICS[name](KSet.parse(kset) if kset else None)
    if exponential == "indexed":
        if cfg.is_uniform:
            raise ConfigError(f"the indexed exponential has no uniform variant ('{name}')")
        cfg = replace(cfg, exponential=ExpFlavor.INDEXED)
    if card_bound is not None:
        cfg = replace(cfg, card_bound=card_bound)
    return cfg


def read_target(cfg: SemanticsConfig, text: str):
    """A formula or space given inline, as a .llf file or as a .tbs file."""
    path = Path(text)
    if path.suffix == config.TABLE_SUFFIX and path.exists():
        return load_table_space(path).as_engine(cfg.engine)
    if path.suffix == config.FORMULA_SUFFIX and path.exists():
        return load_formula(path)
    return space_expression(cfg, text)


def read_points(text: str) -> frozenset:
    path = Path(text)
    if path.suffix == config.POINTS_SUFFIX and path.exists():
        return load_point_set(path)
    return parse_point_set(text)


# ============================================================================
# OUTPUT
# ============================================================================


def emit(args: argparse.Namespace, record: dict, text: str) -> None:
    if args.output == "json":
        print(json.dumps(record, indent=2, ensure_ascii=False))
    else:
        print(text)


def report_records(args: argparse.Namespace, records: List[CheckRecord]) -> int:
    failures = [r for r in records if r.failed]
    bounded = [r for r in records if r.status is Status.BOUNDED]
    if args.output == "json":
        print(json.dumps([r.to_record() for r in records], indent=2, ensure_ascii=False))
    else:
        for r in records:
            print(r.render())
    logger.info("=" * 70)
    logger.info(f"{len(records)} check(s): {len(records) - len(failures) - len(bounded)} passed, "
                f"{len(bounded)} bounded, {len(failures)} failed")
    if failures:
        logger.error(f"✗ {len(failures)} check(s) failed")
        return EXIT_CHECK_FAILED
    logger.info("✓ All checks passed")
    return EXIT_OK


# ============================================================================
# COMMANDS
# ============================================================================


def cmd_interpret(args: argparse.Namespace, cfg: SemanticsConfig) -> int:
    proof = load_proof(Path(args.proof))
    interp = interpret(proof, ExpPolicy.from_config(cfg), args.bound)
    logger.debug(f"{len(interp)} tuple(s) under {cfg.describe()}")
    record = dict(interp.to_record(), semantics=args.semantics)
    emit(args, record, f"; semantics {args.semantics} ({cfg.describe()})\n" + interp.render().rstrip("\n"))
    return EXIT_OK


def cmd_verdict(args: argparse.Namespace, cfg: SemanticsConfig) -> int:
    target = read_target(cfg, args.formula)
    bag = parse_point(args.bag)
    if not isinstance(bag, Bag):
        raise WebError(f"{render_element(bag)} is not a bag")
    v = verdict(cfg, target, bag)
    emit(args, {"formula": args.formula, "bag": str(bag), "semantics": cfg.describe(), "verdict": v.value}, v.value)
    return EXIT_OK


def cmd_clique(args: argparse.Namespace, cfg: SemanticsConfig) -> int:
    target = read_target(cfg, args.formula)
    points = read_points(args.points)
    report = is_clique(cfg, target, points, args.card_bound)
    text = report.status.value
    if report.witness is not None:
        text += f" witness {report.witness}"
    emit(args, dict(report.to_record(), semantics=cfg.describe()), text)
    return EXIT_OK if report.is_clique else EXIT_CHECK_FAILED


def cmd_neutral(args: argparse.Namespace, cfg: SemanticsConfig) -> int:
    target = read_target(cfg, args.formula)
    query = neutral_query(cfg, target, parse_point(args.point), args.card_bound)
    text = "true" if query.member else "false"
    if not query.exact:
        text += " (bounded)"
    emit(args, query.to_record(), text)
    return EXIT_OK


def cmd_restrict(args: argparse.Namespace, cfg: SemanticsConfig) -> int:
    interp = load_interp(Path(args.interp))
    kept = restrict_interp(cfg, interp)
    logger.debug(f"Kept {len(kept)} of {len(interp)} tuple(s)")
    emit(args, dict(kept.to_record(), semantics=cfg.describe()), kept.render().rstrip("\n"))
    return EXIT_OK


def cmd_interact(args: argparse.Namespace, cfg: SemanticsConfig) -> int:
    report = interact(load_proof(Path(args.left)), load_proof(Path(args.right)), cfg, args.bound)
    record = interaction_record(f"interact/{Path(args.left).stem}", cfg, report)
    emit(args, report.to_record(), report.render())
    return EXIT_CHECK_FAILED if record.failed else EXIT_OK


def cmd_compare(args: argparse.Namespace, cfg: SemanticsConfig) -> int:
    proof = load_proof(Path(args.proof))
    first = semantics_config(args.first, card_bound=args.card_bound)
    second = semantics_config(args.second, card_bound=args.card_bound)
    left = interpret(proof, ExpPolicy.from_config(first), args.bound).tuples
    right = interpret(proof, ExpPolicy.from_config(second), args.bound).tuples
    only_left = sort_elements(left - right)
    only_right = sort_elements(right - left)
    record = {
        args.first: [render_tuple(t) for t in only_left],
        args.second: [render_tuple(t) for t in only_right],
    }
    lines = [f"< {render_tuple(t)}" for t in only_left] + [f"> {render_tuple(t)}" for t in only_right]
    emit(args, record, "\n".join(lines) if lines else "same interpretation")
    return EXIT_OK


def cmd_laws(args: argparse.Namespace, cfg: SemanticsConfig) -> int:
    corpus_dir = Path(args.corpus)
    logger.info("=" * 70)
    logger.info("LAW HARNESS AND CORPUS SUITES")
    logger.info("=" * 70)

    records = laws_suite()
    logger.info(f"✓ Laws: {len(records)} check(s)")

    proofs = load_proofs(corpus_dir / "proofs")
    records += corpus_suite(proofs, args.bound)
    logger.info(f"✓ Corpus: {len(proofs)} proof(s)")

    pairs = load_interaction_pairs(corpus_dir / "interact")
    records += interaction_suite(pairs, bound=args.bound)
    logger.info(f"✓ Interaction: {len(pairs)} pair(s)")

    steps = load_cutelim_pairs(corpus_dir / "cutelim")
    records += cutelim_suite(steps, bound=args.bound)
    logger.info(f"✓ Cut elimination: {len(steps)} pair(s)")

    if args.fuzz:
        records += fuzz_suite(args.seed, args.fuzz)
        logger.info(f"✓ Fuzzing: {args.fuzz} random space(s)")
    else:
        logger.warning("⚠ Fuzzing skipped (--fuzz 0)")

    return report_records(args, sorted(records, key=lambda r: (r.check_id, r.semantics)))


COMMANDS = {
    "interpret": cmd_interpret,
    "verdict": cmd_verdict,
    "clique": cmd_clique,
    "neutral": cmd_neutral,
    "restrict": cmd_restrict,
    "interact": cmd_interact,
    "compare": cmd_compare,
    "laws": cmd_laws,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--semantics", default="coh", choices=sorted(SEMANTICS))
    common.add_argument("--K", dest="kset", help="pair | all | set:2,3 (multiset semantics only)")
    common.add_argument("--exponential", choices=("cofree", "indexed"))
    common.add_argument("--bound", type=int, default=config.DEFAULT_BOUND)
    common.add_argument("--card-bound", type=int)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--verbose", action="store_true", help="debug output on stderr")

    parser = argparse.ArgumentParser(description="Linear-logic proof interpreter and coherence-semantics workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("interpret", parents=[common], help="interpretation of a proof")
    p.add_argument("proof")
    p = sub.add_parser("verdict", parents=[common], help="verdict of a bag")
    p.add_argument("formula")
    p.add_argument("bag")
    p = sub.add_parser("clique", parents=[common], help="clique check of a point set")
    p.add_argument("formula")
    p.add_argument("points", help="a .pts file or inline points")
    p = sub.add_parser("neutral", parents=[common], help="neutral-web membership")
    p.add_argument("formula")
    p.add_argument("point")
    p = sub.add_parser("restrict", parents=[common], help="neutral restriction of an interpretation")
    p.add_argument("interp")
    p = sub.add_parser("interact", parents=[common], help="interaction of dual proofs")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("compare", parents=[common], help="tuples present under one semantics only")
    p.add_argument("proof")
    p.add_argument("first", choices=sorted(SEMANTICS))
    p.add_argument("second", choices=sorted(SEMANTICS))
    p = sub.add_parser("laws", parents=[common], help="law harness and corpus suites")
    p.add_argument("--corpus", default=str(config.CORPUS_DIR))
    p.add_argument("--fuzz", type=int, default=config.FUZZ_SPACES, help="number of random spaces (0 skips)")
    p.add_argument("--seed", type=int, default=config.FUZZ_SEED)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    setup_logging(config.LOG_DIR, verbose=args.verbose)
    logger.debug(f"Command: {args.command} {vars(args)}")

    try:
        cfg = semantics_config(args.semantics, args.kset, args.exponential, args.card_bound)
        return COMMANDS[args.command](args, cfg)
    except LLSemError as e:
        logger.error(f"✗ {e.message}")
        if args.output == "json":
            print(json.dumps(e.to_record(), indent=2, ensure_ascii=False))
        return e.exit_code
    except Exception as e:
        logger.error(f"✗ Unexpected error: {e}", exc_info=True)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
