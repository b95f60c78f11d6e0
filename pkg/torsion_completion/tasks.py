"""The operations a scenario task may name, and their parameter resolution."""

import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from easydict import EasyDict
from loguru import logger

from algebra.calculus import module_calculus
from algebra.modules import FpModule
from algebra.ring import ElementSequence
from cech.verify import complete_char_verify, cone_triangle_verify, product_verify
from complexes.cohomology import cohomology_module, is_quasi_iso
from constants import (
    DEFAULT_LEVEL,
    DEFAULT_LIMITS,
    DEFAULT_SEED,
    DEFAULT_WINDOW,
    VERDICT_FAIL,
    VERDICT_NOT_APPLICABLE,
    VERDICT_PASS,
)
from constants.errors import EngineError, GradingError, LevelCapExceeded, ScenarioError, WindowInsufficient
from derived.verify import (
    CheckResult,
    VerificationReport,
    gm_duality_verify,
    idempotence_verify,
    make_report,
    mgm_verify,
    permanence_verify,
    torsion_char_verify,
)
from koszul.certificates import ProZeroCertificate, wpr_check
from koszul.tower import KoszulTower
from telescope.maps import w_map
from telescope.remark import koszul_limit_remark
from torsion_completion.report import TaskReport
from torsion_completion.scenario import Scenario, ScenarioContext, TaskSpec

# Random instances per check when a cech_product task sets no trials.
DEFAULT_TRIALS = 2


@dataclass
class PreparedTask:
    """A task with every name resolved and every parameter fixed."""

    index: int
    op: str
    line: int
    level: int
    seed: int
    trials: int
    window: Optional[Tuple[int, int]] = None
    resolution_length: Optional[int] = None
    sequence: Optional[ElementSequence] = None
    other_sequence: Optional[ElementSequence] = None
    module: Optional[FpModule] = None
    other_module: Optional[FpModule] = None


@dataclass(frozen=True)
class Operation:
    run: Callable[[PreparedTask], VerificationReport]
    # Task keys that must name a sequence or module.
    needs: Tuple[str, ...]
    min_level: int = 1


# ---------------------------------
# Operations without a verifier of their own.
# ---------------------------------


def certificate_dict(certificate: ProZeroCertificate) -> Dict:
    return {
        "cap": certificate.cap,
        "pairs": {k: [list(p) for p in v] for k, v in sorted(certificate.pairs.items())},
        "offsets": {k: certificate.offset(k) for k in sorted(certificate.pairs)},
        "undetermined": list(certificate.undetermined),
    }


def _wpr(task: PreparedTask) -> VerificationReport:
    certificate = wpr_check(task.sequence, task.level)
    witnesses = [f"H^{k}: no vanishing pair within cap {certificate.cap}" for k in certificate.undetermined]
    check = CheckResult("pro_zero", certificate.verdict, witnesses, {"certificate": certificate_dict(certificate)})
    return make_report("wpr_check", [check])


def _koszul_soundness(task: PreparedTask) -> VerificationReport:
    tower = KoszulTower(task.sequence, task.level)
    failures, negative = [], {}
    for i in range(1, task.level + 1):
        if not module_calculus(tower.h0_comparison(i)).is_isomorphism:
            failures.append(f"level {i}: H^0 is not A/(a^{i})")
        nonzero = [k for k in range(-task.sequence.n, 0) if not cohomology_module(tower.level(i), k).is_zero()]
        if nonzero:
            negative[i] = nonzero
    h0 = CheckResult("h0", VERDICT_FAIL if failures else VERDICT_PASS, failures)
    # Negative cohomology vanishes for regular sequences only; otherwise it is recorded, not judged.
    witnesses = [f"level {i}: H^{k} is nonzero" for i, degrees in sorted(negative.items()) for k in degrees]
    acyclic = CheckResult(
        "negative_cohomology",
        VERDICT_NOT_APPLICABLE if negative else VERDICT_PASS,
        witnesses,
        {"nonzero": negative},
    )
    return make_report("koszul_soundness", [h0, acyclic])


def _telescope_lemma(task: PreparedTask) -> VerificationReport:
    witnesses = []
    for j in range(1, task.level + 1):
        verdict = is_quasi_iso(w_map(task.sequence, j))
        witnesses.extend(f"level {j}: H^{k}(w) is not bijective" for k in sorted(verdict.failures))
    check = CheckResult("w_quasi_iso", VERDICT_FAIL if witnesses else VERDICT_PASS, witnesses)
    return make_report("telescope_lemma", [check])


def _koszul_remark(task: PreparedTask) -> VerificationReport:
    if task.window is None:
        raise GradingError("the Koszul limit comparison needs a graded ring")
    remark = koszul_limit_remark(task.sequence, task.level, task.window)
    totals = {j: remark.telescope_total(j) for j in sorted(remark.telescope_dimensions)}
    limit = CheckResult(
        "limit",
        VERDICT_PASS,
        details={"limit_dimensions": remark.limit_dimensions, "vanishing_level": remark.vanishing_level},
    )
    levelwise = CheckResult(
        "levelwise",
        VERDICT_FAIL if remark.levelwise_isomorphic else VERDICT_PASS,
        [] if not remark.levelwise_isomorphic else [f"every telescope level has H^0 total {remark.limit_total}"],
        {"limit_total": remark.limit_total, "telescope_totals": totals},
    )
    mittag_leffler = CheckResult(
        "mittag_leffler",
        VERDICT_PASS if remark.mittag_leffler_fails else VERDICT_FAIL,
        [] if remark.mittag_leffler_fails else [f"images stabilize after level {max(remark.strict_steps, default=0)}"],
        {"strict_steps": list(remark.strict_steps)},
    )
    return make_report("koszul_remark", [limit, levelwise, mittag_leffler], {"telescope_h0": remark.telescope_dimensions})


OPERATIONS: Dict[str, Operation] = {
    "wpr_check": Operation(_wpr, ("sequence",), min_level=2),
    "koszul_soundness": Operation(_koszul_soundness, ("sequence",)),
    "telescope_lemma": Operation(_telescope_lemma, ("sequence",)),
    "koszul_remark": Operation(_koszul_remark, ("sequence",), min_level=2),
    "idempotence": Operation(
        lambda t: idempotence_verify(t.module, t.sequence, t.level, t.resolution_length), ("module", "sequence")
    ),
    "torsion_char": Operation(lambda t: torsion_char_verify(t.module, t.sequence, t.level), ("module", "sequence")),
    "mgm": Operation(
        lambda t: mgm_verify(t.module, t.sequence, t.level, t.window, t.resolution_length), ("module", "sequence")
    ),
    "gm_duality": Operation(
        lambda t: gm_duality_verify(t.module, t.other_module, t.sequence, t.level, t.window, t.resolution_length),
        ("module", "other_module", "sequence"),
    ),
    "permanence": Operation(
        lambda t: permanence_verify(t.sequence, t.other_sequence, t.level, t.window), ("sequence", "other_sequence")
    ),
    "cone_triangle": Operation(lambda t: cone_triangle_verify(t.sequence, t.level), ("sequence",)),
    "complete_char": Operation(
        lambda t: complete_char_verify(t.module, t.sequence, t.level, t.window, t.resolution_length),
        ("module", "sequence"),
    ),
    "cech_product": Operation(
        lambda t: product_verify(t.sequence, t.level, np.random.default_rng(seed=t.seed), t.trials), ("sequence",)
    ),
}


# ---------------------------------
# Resolution.
# ---------------------------------


def _first(*values):
    return next((v for v in values if v is not None), None)


def _lookup(spec: TaskSpec, key: str, context: ScenarioContext):
    name = getattr(spec, key)
    if name is None:
        raise ScenarioError(f"task {spec.op} needs {key}", spec.line, 1)
    table = context.sequences if key.endswith("sequence") else context.modules
    if name not in table:
        kind = "sequence" if key.endswith("sequence") else "module"
        raise ScenarioError(f"task {spec.op}: no {kind} named {name!r}", spec.line, 1)
    return table[name]


def prepare_tasks(scenario: Scenario, context: ScenarioContext, settings: EasyDict) -> List[PreparedTask]:
    """Resolves names and parameters; a task value beats a flag, which beats the scenario defaults.

    Raises:
        ScenarioError: On an unknown operation, an unresolved name or a parameter out of bounds.
    """
    defaults = scenario.defaults
    limits = settings.get("limits", DEFAULT_LIMITS)
    prepared = []
    for index, spec in enumerate(scenario.tasks):
        if spec.op not in OPERATIONS:
            raise ScenarioError(f"unknown task {spec.op!r}", spec.line, 1)
        operation = OPERATIONS[spec.op]
        level = _first(spec.level, settings.get("level"), defaults.level, DEFAULT_LEVEL)
        if not operation.min_level <= level <= limits.level_cap:
            raise ScenarioError(
                f"task {spec.op}: level {level} outside {operation.min_level}..{limits.level_cap}", spec.line, 1
            )
        window = None
        if context.ring.is_graded:
            window = tuple(_first(spec.window, settings.get("window"), defaults.window, DEFAULT_WINDOW))
            if window[0] > window[1]:
                raise ScenarioError(f"task {spec.op}: empty window {window[0]}..{window[1]}", spec.line, 1)
        length = _first(spec.resolution_length, settings.get("resolution_length"), defaults.resolution_length)
        if length is not None and length < 1:
            raise ScenarioError(f"task {spec.op}: resolution length {length} must be positive", spec.line, 1)
        task = PreparedTask(
            index=index,
            op=spec.op,
            line=spec.line,
            level=level,
            seed=_first(spec.seed, settings.get("seed"), defaults.seed, DEFAULT_SEED),
            trials=_first(spec.trials, DEFAULT_TRIALS),
            window=window,
            resolution_length=length,
        )
        for key in operation.needs:
            setattr(task, key, _lookup(spec, key, context))
        prepared.append(task)
    logger.debug(f"Prepared {len(prepared)} tasks: {[t.op for t in prepared]}")
    return prepared


# ---------------------------------
# Execution.
# ---------------------------------


def execute(task: PreparedTask) -> TaskReport:
    """Runs one task. Resource caps propagate; any other engine error becomes a failing check."""
    logger.info(f"Task {task.index} ({task.op}, line {task.line}) at level {task.level}")
    start = time.time()
    try:
        report = OPERATIONS[task.op].run(task)
    except GradingError as e:
        report = make_report(task.op, [CheckResult("grading", VERDICT_NOT_APPLICABLE, [str(e)])])
    except (LevelCapExceeded, WindowInsufficient):
        raise
    except EngineError as e:
        logger.exception(f"Task {task.index} ({task.op}) raised")
        report = make_report(task.op, [CheckResult("error", VERDICT_FAIL, [f"{type(e).__name__}: {e}"])])
    return TaskReport(
        index=task.index,
        op=task.op,
        verdict=report.verdict,
        witnesses=report.witnesses,
        checks=[c.as_dict() for c in report.checks],
        tables=report.tables,
        timing_seconds=round(time.time() - start, 3),
    )
