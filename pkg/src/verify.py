"""
Checks: cliquehood, determinism, interaction of dual proofs, logicality of
the neutral restriction, the bipartite checks, and the randomized suites over
small table spaces.

Every check produces CheckRecord values; corpus-wide suites run their items on
a thread pool and merge the records by check id.
"""

import random
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

import config
from errors import LLSemError, WebError
from expon import CoFreeBang
from llsyntax import (
    Formula,
    Pair,
    Par,
    Proof,
    WhyNot,
    dual,
    render_formula,
    render_sequent,
    render_tuple,
    uses_sum,
)
from logger_config import get_logger
from multiset import Bag, render_element, sort_elements
from neutral import brute_force_neutral, neutral_member, restrict_interp, restrict_space
from relsem import ExpPolicy, Interp, interpret
from spacecore import (
    Engine,
    ExpFlavor,
    KSet,
    SemanticsConfig,
    Space,
    Verdict,
    as_space,
    candidate_bags,
    effective_card_bound,
    incoherent_witness,
    random_table_space,
    search_is_exact,
)

logger = get_logger(__name__)


# ============================================================================
# REPORT RECORDS
# ============================================================================


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    BOUNDED = "bounded"


@dataclass(frozen=True)
class CheckRecord:
    """One line of a report: {check-id, semantics, status, witness?}."""

    check_id: str
    semantics: str
    status: Status
    witness: Optional[str] = None
    detail: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL

    def to_record(self) -> dict:
        record = {"check-id": self.check_id, "semantics": self.semantics, "status": self.status.value}
        if self.witness is not None:
            record["witness"] = self.witness
        if self.detail is not None:
            record["detail"] = self.detail
        return record

    def render(self) -> str:
        line = f"{self.status.value:8} {self.check_id} [{self.semantics}]"
        if self.witness is not None:
            line += f" witness: {self.witness}"
        if self.detail is not None:
            line += f" ({self.detail})"
        return line


def passed(check_id: str, semantics: str, exact: bool = True, detail: Optional[str] = None) -> CheckRecord:
    return CheckRecord(check_id, semantics, Status.PASS if exact else Status.BOUNDED, detail=detail)


def failed(check_id: str, semantics: str, witness: str, detail: Optional[str] = None) -> CheckRecord:
    return CheckRecord(check_id, semantics, Status.FAIL, witness, detail)


def run_checks(jobs: Dict[str, Callable[[], List[CheckRecord]]], desc: str = "Checking") -> List[CheckRecord]:
    """
    Run independent check jobs on a thread pool.

    An LLSemError inside a job becomes a failing record for that job
    (BoundExhausted becomes a bounded one); records come back sorted by check id.
    """
    records: List[CheckRecord] = []
    if not jobs:
        return records
    logger.debug(f"Running {len(jobs)} job(s) with {config.MAX_WORKERS} workers")
    with ThreadPoolExecutor(max_workers=config.MAX_WORKERS) as executor:
        futures = {executor.submit(job): job_id for job_id, job in jobs.items()}
        with tqdm(total=len(futures), desc=desc, unit="check", disable=len(futures) < 2) as pbar:
            for future in as_completed(futures):
                job_id = futures[future]
                try:
                    records.extend(future.result())
                except LLSemError as e:
                    status = Status.BOUNDED if e.exit_code == 3 else Status.FAIL
                    logger.error(f"{job_id}: {e.message}")
                    records.append(CheckRecord(job_id, "-", status, detail=e.message))
                pbar.update(1)
    return sorted(records, key=lambda r: (r.check_id, r.semantics))


# ============================================================================
# CLIQUES
# ============================================================================


class CliqueStatus(Enum):
    CLIQUE = "clique"
    NOT_CLIQUE = "not-clique"
    UP_TO_BOUND = "clique-up-to-bound"


@dataclass(frozen=True)
class CliqueReport:
    """
    Outcome of a clique check.

    A NOT_CLIQUE witness is a bag over the candidate set, legal for the
    space, whose verdict is strictly incoherent. UP_TO_BOUND means no witness
    exists among the cardinalities checked, which do not cover all of K.
    """

    status: CliqueStatus
    witness: Optional[Bag] = None
    cardinalities: Tuple[int, ...] = ()
    bound: Optional[int] = None

    @property
    def is_clique(self) -> bool:
        return self.status is not CliqueStatus.NOT_CLIQUE

    def to_record(self) -> dict:
        record = {"status": self.status.value, "cardinalities": list(self.cardinalities)}
        if self.witness is not None:
            record["witness"] = str(self.witness)
        if self.bound is not None:
            record["bound"] = self.bound
        return record


def is_clique(cfg: SemanticsConfig, f, x: Iterable, card_bound: Optional[int] = None) -> CliqueReport:
    """
    Whether x is a clique of f (formula or space): no strictly incoherent bag over x.

    Bags range over cardinalities in K up to card_bound (default max(6, 2 #x)),
    nonempty subsets of at most card_bound points for the set engine, single
    points for the bipartite engine (positive points only). Every set is a
    clique relationally.

    Raises:
        WebError: If some point of x is outside the web
    """
    space = as_space(cfg, f)
    points = sort_elements(set(x))
    for p in points:
        if not space.contains(p):
            raise WebError(f"{render_element(p)} is not in the web of {space}")
    if space.engine is Engine.RELATIONAL:
        return CliqueReport(CliqueStatus.CLIQUE)

    bound = card_bound if card_bound is not None else effective_card_bound(None, len(points))
    seen = set()
    for bag in candidate_bags(space, points, bound):
        seen.add(len(bag))
        if space.verdict(bag) is Verdict.STRICT_INCOHERENT:
            return CliqueReport(CliqueStatus.NOT_CLIQUE, bag, tuple(sorted(seen)), bound)
    cardinalities = tuple(sorted(seen))
    exact = search_is_exact(space, bound)
    if space.engine is Engine.SET:
        exact = bound >= len(points)
    if exact:
        return CliqueReport(CliqueStatus.CLIQUE, None, cardinalities, bound)
    return CliqueReport(CliqueStatus.UP_TO_BOUND, None, cardinalities, bound)


def sequent_formula(sequent: Sequence[Formula]) -> Formula:
    """A context read as the par of its formulas, nested to the right."""
    if not sequent:
        raise WebError("the empty sequent has no space")
    result = sequent[-1]
    for f in reversed(sequent[:-1]):
        result = Par(f, result)
    return result


def tuple_point(t: Sequence) -> object:
    """The point of ``sequent_formula`` matching a tuple of the context."""
    result = t[-1]
    for p in reversed(t[:-1]):
        result = Pair(p, result)
    return result


def interp_clique(cfg: SemanticsConfig, interp: Interp, card_bound: Optional[int] = None) -> CliqueReport:
    """Clique check of an interpretation in the space of its conclusion."""
    f = sequent_formula(interp.sequent)
    return is_clique(cfg, f, [tuple_point(t) for t in interp.tuples], card_bound)


# ============================================================================
# DETERMINISM
# ============================================================================


@dataclass(frozen=True)
class DeterminismResult:
    size: int
    common: FrozenSet

    @property
    def ok(self) -> bool:
        return self.size <= 1


def determinism_check(cfg: SemanticsConfig, f, x: Iterable, y: Iterable, card_bound: Optional[int] = None) -> DeterminismResult:
    """
    Size of x & y for a clique x of f and a clique y of its dual.

    Raises:
        WebError: If x is not a clique of f or y not a clique of the dual
    """
    space = as_space(cfg, f)
    x, y = frozenset(x), frozenset(y)
    for name, target, points in (("x", space, x), ("y", space.dual(), y)):
        report = is_clique(cfg, target, points, card_bound)
        if not report.is_clique:
            raise WebError(f"{name} is not a clique of {target}: witness {report.witness}")
    common = x & y
    return DeterminismResult(len(common), common)


# ============================================================================
# INTERACTION
# ============================================================================


class Outcome(Enum):
    GIVE_UP = "give-up"
    DIVERGENCE = "divergence"


@dataclass(frozen=True)
class InteractionReport:
    """
    Result of cutting a proof of |- A against a proof of |- dual A.

    ``deterministic`` tells whether at most one point was expected (no sum
    rule on either side and a semantics with verdicts); ``neutral`` flags, for
    each result point, its membership in the neutral web of A.
    """

    formula: Formula
    outcome: Outcome
    points: Tuple = ()
    deterministic: bool = True
    neutral: Tuple[bool, ...] = ()

    @property
    def determinism_ok(self) -> bool:
        return not self.deterministic or len(self.points) <= 1

    def to_record(self) -> dict:
        return {
            "formula": render_formula(self.formula),
            "outcome": self.outcome.value,
            "points": [render_element(p) for p in self.points],
            "deterministic": self.deterministic,
            "neutral": list(self.neutral),
        }

    def render(self) -> str:
        if self.outcome is Outcome.DIVERGENCE:
            return "divergence"
        points = " ".join(render_element(p) for p in self.points)
        return f"give-up {points}"


def interact(
    p1: Proof,
    p2: Proof,
    cfg: Optional[SemanticsConfig] = None,
    bound: int = config.DEFAULT_BOUND,
) -> InteractionReport:
    """
    Interaction of a proof of |- A with a proof of |- dual A.

    The two interpretations are intersected over |A|: nonempty gives GIVE_UP
    with the common points, empty gives DIVERGENCE.

    Raises:
        ProofCheckError: If one of the proofs is ill-formed
        WebError: If the conclusions are not |- A and |- dual A
    """
    cfg = cfg or SemanticsConfig.multiset(KSet.pair())
    left, right = p1.conclusion, p2.conclusion
    if len(left) != 1 or len(right) != 1 or right[0] != dual(left[0]):
        raise WebError(f"conclusions {render_sequent(left)} and {render_sequent(right)} are not dual")
    a = left[0]
    policy = ExpPolicy.from_config(cfg)
    first = {t[0] for t in interpret(p1, policy, bound).tuples}
    second = {t[0] for t in interpret(p2, policy, bound).tuples}
    common = sort_elements(first & second)
    deterministic = (
        not uses_sum(p1) and not uses_sum(p2) and cfg.engine in (Engine.MULTISET, Engine.SET)
    )
    if not common:
        return InteractionReport(a, Outcome.DIVERGENCE, (), deterministic)
    flags = tuple(neutral_member(cfg, a, p) for p in common)
    report = InteractionReport(a, Outcome.GIVE_UP, common, deterministic, flags)
    if not report.determinism_ok:
        logger.warning(f"Interaction on {render_formula(a)} produced {len(common)} points")
    return report


def interaction_record(check_id: str, cfg: SemanticsConfig, report: InteractionReport) -> CheckRecord:
    """A deterministic interaction passes with at most one point, that point neutral."""
    semantics = cfg.describe()
    if not report.determinism_ok:
        return failed(check_id, semantics, " ".join(render_element(p) for p in report.points), "more than one point")
    if report.deterministic and not all(report.neutral):
        return failed(check_id, semantics, render_element(report.points[0]), "result outside the neutral web")
    return passed(check_id, semantics, detail=report.render())


# ============================================================================
# LOGICALITY AND BIPARTITE CHECKS
# ============================================================================


def logicality_pairs() -> List[Tuple[SemanticsConfig, SemanticsConfig]]:
    """(non-uniform, uniform) pairs whose uniform side is the neutral restriction."""
    return [
        (
            SemanticsConfig.multiset(KSet.pair()),
            SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET),
        ),
        (
            SemanticsConfig.multiset(KSet.all()),
            SemanticsConfig.multiset(KSet.all(), ExpFlavor.UNIFORM_MULTISET),
        ),
        (
            SemanticsConfig.hyper(),
            SemanticsConfig.hyper(ExpFlavor.UNIFORM_MULTISET),
        ),
    ]


def _first_difference(a: Interp, b: Interp) -> str:
    extra = sort_elements(a.tuples ^ b.tuples)
    return render_tuple(extra[0]) if extra else ""


def logicality_check(
    name: str,
    proof: Proof,
    non_uniform: SemanticsConfig,
    uniform: SemanticsConfig,
    bound: int = config.LOGICALITY_BOUND,
) -> CheckRecord:
    """The neutral restriction of the non-uniform interpretation equals the uniform one."""
    semantics = f"{non_uniform.describe()} -> {uniform.describe()}"
    check_id = f"logicality/{name}"
    restricted = restrict_interp(non_uniform, interpret(proof, ExpPolicy.non_uniform(), bound))
    target = interpret(proof, ExpPolicy.from_config(uniform), bound)
    if restricted.tuples != target.tuples:
        return failed(check_id, semantics, _first_difference(restricted, target))
    return passed(check_id, semantics, detail=f"{len(target)} tuple(s)")


def bipartite_check(name: str, proof: Proof, bound: int = config.LOGICALITY_BOUND) -> List[CheckRecord]:
    """
    Non-uniform bipartite interpretations are the relational ones and contain
    positive points only; proofs of |- ?A are empty in the uniform variant.
    """
    records = []
    sequent = proof.conclusion
    std = SemanticsConfig.bipartite()
    relational = interpret(proof, ExpPolicy.non_uniform(), bound)
    if sequent:
        report = interp_clique(std, relational)
        if report.is_clique:
            records.append(passed(f"bipartite-positive/{name}", std.describe(), detail=f"{len(relational)} tuple(s)"))
        else:
            records.append(failed(f"bipartite-positive/{name}", std.describe(), str(report.witness)))
    if len(sequent) == 1 and isinstance(sequent[0], WhyNot):
        pos = SemanticsConfig.bipartite(uniform=True)
        uniform = interpret(proof, ExpPolicy.from_config(pos), bound)
        if uniform.tuples:
            records.append(failed(f"bipartite-why-not/{name}", pos.describe(), render_tuple(uniform.sorted_tuples()[0])))
        else:
            records.append(passed(f"bipartite-why-not/{name}", pos.describe()))
    return records


def soundness_check(
    name: str,
    proof: Proof,
    cfg: SemanticsConfig,
    bound: int = config.LOGICALITY_BOUND,
    card_bound: Optional[int] = None,
) -> CheckRecord:
    """The interpretation of a proof under cfg is a clique of its conclusion."""
    check_id = f"soundness/{name}"
    interp = interpret(proof, ExpPolicy.from_config(cfg), bound)
    if not interp.sequent:
        return passed(check_id, cfg.describe(), detail="empty sequent")
    report = interp_clique(cfg, interp, card_bound or config.DEFAULT_CARD_BOUND)
    if not report.is_clique:
        return failed(check_id, cfg.describe(), str(report.witness))
    return passed(check_id, cfg.describe(), report.status is CliqueStatus.CLIQUE, f"{len(interp)} tuple(s)")


def uniform_subset_check(name: str, proof: Proof, cfg: SemanticsConfig, bound: int = config.LOGICALITY_BOUND) -> CheckRecord:
    """Uniform interpretations only drop tuples of the non-uniform one."""
    check_id = f"uniform-subset/{name}"
    full = interpret(proof, ExpPolicy.non_uniform(), bound)
    uniform = interpret(proof, ExpPolicy.from_config(cfg), bound)
    extra = sort_elements(uniform.tuples - full.tuples)
    if extra:
        return failed(check_id, cfg.describe(), render_tuple(extra[0]))
    return passed(check_id, cfg.describe(), detail=f"{len(uniform)} of {len(full)} tuple(s)")


def cut_invariance_check(
    name: str,
    before: Proof,
    after: Proof,
    cfg: Optional[SemanticsConfig] = None,
    bound: int = config.DEFAULT_BOUND,
) -> CheckRecord:
    """A proof and the result of one cut-elimination step have the same interpretation."""
    cfg = cfg or SemanticsConfig.relational()
    check_id = f"cut-elimination/{name}"
    if before.conclusion != after.conclusion:
        return failed(check_id, cfg.describe(), render_sequent(after.conclusion), "conclusions differ")
    policy = ExpPolicy.from_config(cfg)
    left, right = interpret(before, policy, bound), interpret(after, policy, bound)
    if left.tuples != right.tuples:
        return failed(check_id, cfg.describe(), _first_difference(left, right))
    return passed(check_id, cfg.describe(), detail=f"{len(left)} tuple(s)")


def soundness_configs() -> List[SemanticsConfig]:
    return [
        SemanticsConfig.multiset(KSet.pair()),
        SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_MULTISET),
        SemanticsConfig.multiset(KSet.pair(), ExpFlavor.UNIFORM_SET),
    ]


def corpus_suite(proofs: Dict[str, Proof], bound: int = config.LOGICALITY_BOUND) -> List[CheckRecord]:
    """Logicality, soundness, uniform inclusion and the bipartite checks over a proof corpus."""
    jobs: Dict[str, Callable[[], List[CheckRecord]]] = {}
    for name, proof in proofs.items():
        for i, (non_uniform, uniform) in enumerate(logicality_pairs()):
            jobs[f"logicality/{name}/{i}"] = (
                lambda p=proof, n=name, a=non_uniform, b=uniform: [
                    logicality_check(n, p, a, b, bound),
                    uniform_subset_check(n, p, b, bound),
                ]
            )
        for i, cfg in enumerate(soundness_configs()):
            jobs[f"soundness/{name}/{i}"] = lambda p=proof, n=name, c=cfg: [soundness_check(n, p, c, bound)]
        jobs[f"bipartite/{name}"] = lambda p=proof, n=name: bipartite_check(n, p, bound)
    return run_checks(jobs, desc="Corpus")


def cutelim_suite(pairs: Dict[str, Tuple[Proof, Proof]], bound: int = config.DEFAULT_BOUND) -> List[CheckRecord]:
    jobs = {
        f"cut-elimination/{name}": (lambda a=before, b=after, n=name: [cut_invariance_check(n, a, b, bound=bound)])
        for name, (before, after) in pairs.items()
    }
    return run_checks(jobs, desc="Cut elimination")


def interaction_suite(
    pairs: Dict[str, Tuple[Proof, Proof]],
    cfg: Optional[SemanticsConfig] = None,
    bound: int = config.DEFAULT_BOUND,
) -> List[CheckRecord]:
    cfg = cfg or SemanticsConfig.multiset(KSet.pair())
    jobs = {
        f"interact/{name}": (lambda a=left, b=right, n=name: [interaction_record(f"interact/{n}", cfg, interact(a, b, cfg, bound))])
        for name, (left, right) in pairs.items()
    }
    return run_checks(jobs, desc="Interaction")


# ============================================================================
# RANDOMIZED SUITES OVER TABLE SPACES
# ============================================================================


FUZZ_KSETS = (KSet.pair(), KSet.finite((2, 3)))


def _random_spaces(seed: int, count: int) -> Iterable[Tuple[int, Space]]:
    rng = random.Random(seed)
    for i in range(count):
        kset = FUZZ_KSETS[i % len(FUZZ_KSETS)]
        n_labels = rng.randint(1, config.FUZZ_MAX_WEB)
        yield i, random_table_space(rng, n_labels, kset)


def _subsets(points: Sequence) -> Iterable[FrozenSet]:
    for size in range(len(points) + 1):
        for chosen in combinations(points, size):
            yield frozenset(chosen)


def neutral_characterization_check(index: int, space: Space, max_bag: int = config.FUZZ_MAX_BAG) -> List[CheckRecord]:
    """
    Brute-force neutral web of !X against its characterization, and against
    the neutral web of !(N X).
    """
    cfg = SemanticsConfig.multiset(space.kset)
    ofc = CoFreeBang(space, cfg)
    restricted = CoFreeBang(restrict_space(space), cfg)
    semantics = f"{space} K={space.kset}"
    for mu in sort_elements(ofc.enumerate(max_bag + 1)):
        if len(mu) > max_bag:
            continue
        brute, _ = brute_force_neutral(ofc, mu)
        characterized = neutral_member(cfg, ofc, mu)
        if brute != characterized:
            return [failed(f"neutral-web/{index:03d}", semantics, str(mu), f"brute force says {brute}")]
        if restricted.contains(mu) and neutral_member(cfg, restricted, mu) != characterized:
            return [failed(f"neutral-commutes/{index:03d}", semantics, str(mu))]
    return [passed(f"neutral-web/{index:03d}", semantics)]


def space_determinism_check(index: int, space: Space) -> List[CheckRecord]:
    """Every clique meets every anti-clique in at most one point."""
    cfg = SemanticsConfig.multiset(space.kset)
    points = sort_elements(space.enumerate(1))
    cliques = [x for x in _subsets(points) if incoherent_witness(space, x) is None]
    anti = [y for y in _subsets(points) if incoherent_witness(space.dual(), y) is None]
    semantics = f"{space} K={space.kset}"
    for x in cliques:
        for y in anti:
            if len(x & y) > 1:
                witness = " ".join(render_element(p) for p in sort_elements(x & y))
                return [failed(f"determinism/{index:03d}", semantics, witness)]
    return [passed(f"determinism/{index:03d}", semantics, detail=f"{len(cliques)}x{len(anti)} pairs")]


def fuzz_suite(seed: int = config.FUZZ_SEED, count: int = config.FUZZ_SPACES) -> List[CheckRecord]:
    """Neutral-web and determinism checks over random weakly reflexive table spaces."""
    jobs: Dict[str, Callable[[], List[CheckRecord]]] = {}
    for i, space in _random_spaces(seed, count):
        jobs[f"neutral-web/{i}"] = lambda i=i, s=space: neutral_characterization_check(i, s)
        jobs[f"determinism/{i}"] = lambda i=i, s=space: space_determinism_check(i, s)
    return run_checks(jobs, desc="Fuzzing")
