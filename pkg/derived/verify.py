"""Verifiers for idempotence, torsion characterization, MGM, GM duality, permanence and base change.

Every verifier returns a VerificationReport of named checks. Levelwise checks
decide quasi-isomorphisms outright; limit statements are decided by offset
certificates (module regime) or by stabilized graded windows (graded regime).
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from algebra.graded import restrict_truncated
from algebra.groebner import span_contains
from algebra.ideals import ideals_contained, in_radical, same_submodule, torsion_submodule
from algebra.matrix import unit_vector
from algebra.modules import FpModule
from algebra.ring import ElementSequence, RingMap, RingPresentation
from complexes.cohomology import cohomology, cohomology_module, cohomology_range, induced_map, is_quasi_iso
from complexes.complex import Complex, ComplexMap
from complexes.graded import graded_cohomology_dimension, graded_map_cell
from complexes.levels import DIRECT, INVERSE, LevelSystem, cohomology_system
from complexes.operations import (
    base_change,
    hom_from_free,
    hom_map_source,
    hom_map_target,
    identity_tensor,
    tensor,
    tensor_map,
    tensor_unitor,
    tensor_with_identity,
)
from constants import (
    DEFAULT_LIMITS,
    STABILITY_GUARD,
    VERDICT_FAIL,
    VERDICT_HYPOTHESIS_FAILS,
    VERDICT_NOT_APPLICABLE,
    VERDICT_PASS,
    VERDICT_UNDETERMINED,
)
from constants.errors import ComplexError
from derived.limits import LimitCertificate, map_limit_check, vanishing_check
from derived.systems import RGammaSystem, free_model
from derived.window import (
    GradedWindowTable,
    clearing_level,
    complex_table,
    graded_window_table,
    grown_window_table,
    onset_comparison,
    system_degrees,
    window_range,
)
from koszul.certificates import ProZeroCertificate, required_levels
from koszul.tower import DualKoszulSystem, KoszulTower, dual_koszul
from telescope.completion import CompletionTower, as_complex, quotient_complex
from telescope.maps import u_map, w_map
from telescope.telescope import TelescopeSystem, telescope

Window = Optional[Tuple[int, int]]
Table = Dict[int, Dict[int, int]]


@dataclass
class CheckResult:
    name: str
    verdict: str
    witnesses: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == VERDICT_PASS

    def as_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "verdict": self.verdict, "witnesses": list(self.witnesses), "details": self.details}


def combine_verdicts(verdicts: Sequence[str]) -> str:
    """fail (or a failed hypothesis) beats undetermined, which beats pass; all not-applicable stays so."""
    for verdict in verdicts:
        if verdict in (VERDICT_FAIL, VERDICT_HYPOTHESIS_FAILS):
            return verdict
    for verdict in verdicts:
        if verdict.startswith(VERDICT_UNDETERMINED):
            return verdict
    if verdicts and all(v == VERDICT_NOT_APPLICABLE for v in verdicts):
        return VERDICT_NOT_APPLICABLE
    return VERDICT_PASS


@dataclass
class VerificationReport:
    task: str
    checks: List[CheckResult] = field(default_factory=list)
    # Graded tables, k -> d -> dimension, keyed by what they tabulate.
    tables: Dict[str, Table] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return combine_verdicts([c.verdict for c in self.checks])

    @property
    def witnesses(self) -> List[str]:
        return [f"{c.name}: {w}" for c in self.checks for w in c.witnesses]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(f"no check named {name!r} in {self.task}")

    def as_dict(self) -> Dict[str, Any]:
        return {
            "task": self.task,
            "verdict": self.verdict,
            "checks": [c.as_dict() for c in self.checks],
            "tables": self.tables,
        }


def make_report(task: str, checks: List[CheckResult], tables: Optional[Dict[str, Table]] = None) -> VerificationReport:
    report = VerificationReport(task, checks, tables or {})
    if report.verdict == VERDICT_PASS:
        logger.success(f"{task}: pass")
    elif report.verdict in (VERDICT_FAIL, VERDICT_HYPOTHESIS_FAILS):
        logger.error(f"{task}: {report.verdict}; {report.witnesses[:3]}")
    else:
        logger.info(f"{task}: {report.verdict}")
    return report


# ---------------------------------
# Shared pieces.
# ---------------------------------


def _render(vector: Sequence) -> str:
    if len(vector) == 1:
        return str(vector[0].as_expr())
    return "(" + ", ".join(str(f.as_expr()) for f in vector) + ")"


def _degrees(*complexes: Complex) -> List[int]:
    out = set()
    for x in complexes:
        out |= set(cohomology_range(x))
    return sorted(out)


def _between_levels(system: LevelSystem, phi: ComplexMap, j: int) -> ComplexMap:
    if system.direction == DIRECT:
        return phi.between(system.level(j), system.level(j + 1))
    return phi.between(system.level(j + 1), system.level(j))


def _quotient_system(system: "LevelSystem[Complex]", elements: Sequence, last: int) -> "LevelSystem[Complex]":
    """Levels X_j / (f) X_j with the induced transitions."""
    quotient: LevelSystem[Complex] = LevelSystem(
        system.direction,
        system.first,
        last,
        lambda j: quotient_complex(system.level(j), elements),
        lambda j: _between_levels(quotient, system.transition(j), j),
        name=f"{system.name}/({len(elements)})",
    )
    return quotient


def _tensored_system(x: Complex, system: "LevelSystem[Complex]", last: int) -> "LevelSystem[Complex]":
    """Levels X ⊗ Y_j with transitions 1 ⊗ t_j."""
    tensored: LevelSystem[Complex] = LevelSystem(
        system.direction,
        system.first,
        last,
        lambda j: tensor(x, system.level(j)),
        lambda j: _between_levels(tensored, identity_tensor(x, system.transition(j)), j),
        name=f"{x.name}⊗{system.name}",
    )
    return tensored


def limit_certificate(
    source: "LevelSystem[Complex]",
    target: "LevelSystem[Complex]",
    maps: Callable[[int], ComplexMap],
    degrees: Sequence[int],
    cap: int,
) -> LimitCertificate:
    """Merged certificate of H^k(φ_j) for every k in degrees; either system may be a constant complex."""
    certificate = LimitCertificate(source.direction, cap)
    for k in degrees:
        certificate = certificate.merged(
            map_limit_check(
                cohomology_system(source, k),
                cohomology_system(target, k),
                lambda j, k=k: induced_map(maps(j), k),
                cap,
                degree=k,
            )
        )
    return certificate


def constant_complex_system(direction: str, x: Complex, last: int) -> "LevelSystem[Complex]":
    return LevelSystem(direction, 1, last, lambda j: x, lambda j: ComplexMap.identity(x), name=x.name)


def _certificate_check(name: str, certificate: LimitCertificate, **details) -> CheckResult:
    witnesses = [f"degree {k}: no offset pair within cap {certificate.cap}" for k in certificate.undetermined]
    return CheckResult(name, certificate.verdict, witnesses, {"certificate": certificate.as_dict(), **details})


def _pro_zero_dict(certificate: ProZeroCertificate) -> Dict[str, Any]:
    return {
        "cap": certificate.cap,
        "pairs": {k: [list(p) for p in v] for k, v in sorted(certificate.pairs.items())},
        "undetermined": list(certificate.undetermined),
    }


def _quasi_iso_witnesses(phi: ComplexMap, label: str) -> List[str]:
    verdict = is_quasi_iso(phi)
    if verdict.holds:
        return []
    out = []
    for k, failure in sorted(verdict.failures.items()):
        out.extend(f"{label}: H^{k} kernel {cycle}" for cycle in failure["kernel"])
        out.extend(f"{label}: H^{k} cokernel {cycle}" for cycle in failure["cokernel"])
        if not failure["kernel"] and not failure["cokernel"]:
            out.append(f"{label}: H^{k} is not bijective")
    return out


def non_torsion_witness(x: Complex, sequence: ElementSequence) -> Optional[str]:
    """A cohomology class of X outside Γ_𝔞, None when every H^k(X) is 𝔞-torsion."""
    ring = x.ring
    for k in cohomology_range(x):
        h = cohomology_module(x, k)
        if h.is_zero():
            continue
        module = h.module
        torsion = torsion_submodule(module, sequence)
        columns = [c for c in list(torsion.inclusion.matrix.columns) + list(module.relations.columns) if any(c)]
        for i in range(module.rank):
            if not columns or not span_contains(ring, module.rank, columns, unit_vector(ring, module.rank, i)):
                return f"H^{k} class {_render(h.cycles[i])} is not torsion"
    return None


def table_mismatches(left: Table, right: Table) -> List[str]:
    out = []
    for k in sorted(set(left) | set(right)):
        row_left, row_right = left.get(k, {}), right.get(k, {})
        for d in sorted(set(row_left) | set(row_right)):
            a, b = row_left.get(d, 0), row_right.get(d, 0)
            if a != b:
                out.append(f"H^{k} in degree {d}: {a} against {b}")
    return out


def is_graded_input(sequence: ElementSequence, *complexes: Complex) -> bool:
    return sequence.is_homogeneous() and all(x.is_graded for x in complexes)


def _radical_witness(ring: RingPresentation, seq_a: ElementSequence, seq_b: ElementSequence) -> Optional[str]:
    for source, target in ((seq_a, seq_b), (seq_b, seq_a)):
        for f in source:
            if not in_radical(ring, target.elements, f):
                return f"{f.as_expr()} ∉ √{target!r}"
    return None


def _equal_ideals(ring: RingPresentation, seq_a: ElementSequence, seq_b: ElementSequence) -> bool:
    return ideals_contained(ring, seq_a.elements, seq_b.elements) and ideals_contained(ring, seq_b.elements, seq_a.elements)


def _same_gamma(module: FpModule, seq_a: ElementSequence, seq_b: ElementSequence) -> bool:
    ta = torsion_submodule(module, seq_a)
    tb = torsion_submodule(module, seq_b)
    return same_submodule(module, ta.inclusion, tb.inclusion) and same_submodule(module, tb.inclusion, ta.inclusion)


# ---------------------------------
# Idempotence.
# ---------------------------------


def _rgamma_idempotence(m: Union[FpModule, Complex], sequence: ElementSequence, top: int) -> CheckResult:
    rg = RGammaSystem(m, sequence, top)
    diagonal: LevelSystem[Complex] = LevelSystem(
        DIRECT,
        1,
        top,
        lambda j: tensor(rg.duals.level(j), rg.level(j)),
        lambda j: _between_levels(diagonal, tensor_map(rg.duals.transition(j), rg.transition(j)), j),
        name="K∨⊗K∨⊗M",
    )
    maps: Dict[int, ComplexMap] = {}

    def augment(j: int) -> ComplexMap:
        if j not in maps:
            augmentation = tensor_with_identity(rg.duals.augmentation(j), rg.level(j))
            maps[j] = tensor_unitor(rg.level(j)).compose(augmentation).between(diagonal.level(j), rg.level(j))
        return maps[j]

    degrees = _degrees(diagonal.level(top), rg.level(top))
    certificate = limit_certificate(diagonal, rg.system, augment, degrees, top)
    return _certificate_check("rgamma", certificate)


def _llambda_idempotence(p: Complex, sequence: ElementSequence, top: int) -> CheckResult:
    koszul = KoszulTower(sequence, top)
    source: LevelSystem[Complex] = LevelSystem(
        INVERSE,
        1,
        top,
        lambda j: tensor(koszul.level(j), p),
        lambda j: _between_levels(source, tensor_with_identity(koszul.transition(j), p), j),
        name="K⊗P",
    )
    target: LevelSystem[Complex] = LevelSystem(
        INVERSE,
        1,
        top,
        lambda j: quotient_complex(source.level(j), sequence.power(j).elements),
        lambda j: _between_levels(target, source.transition(j), j),
        name="A/(𝒂^j)⊗K⊗P",
    )

    def complete(j: int) -> ComplexMap:
        return ComplexMap.identity(source.level(j)).between(source.level(j), target.level(j))

    degrees = _degrees(source.level(top), target.level(top))
    certificate = limit_certificate(source, target, complete, degrees, top)
    return _certificate_check("llambda", certificate)


def idempotence_verify(
    m: Union[FpModule, Complex], sequence: ElementSequence, top: int, length: Optional[int] = None
) -> VerificationReport:
    """RΓ: e^∨⊗1 from the diagonal K^∨(𝒂^j)⊗K^∨(𝒂^j)⊗M to K^∨(𝒂^j)⊗M is an isomorphism on colimits.
    LΛ: K(𝒂^j)⊗P into its own completion level A/(𝒂^j)⊗K(𝒂^j)⊗P is an isomorphism on limits.
    """
    logger.info(f"Idempotence of RΓ and LΛ along {sequence} up to level {top}")
    p, _, _ = free_model(m, length, sequence.n)
    return make_report("idempotence", [_rgamma_idempotence(m, sequence, top), _llambda_idempotence(p, sequence, top)])


def _coordinate_kernel(phi: ComplexMap) -> Dict[int, List[int]]:
    """Positions of the generators a coordinate projection of free complexes sends to zero."""
    return {
        k: [c for c, column in enumerate(phi.at(k).matrix.columns) if not any(column)] for k in phi.source.degrees
    }


def _subcomplex(x: Complex, positions: Dict[int, List[int]], name: str) -> Complex:
    ring = x.ring
    modules = {}
    for k, chosen in positions.items():
        m = x.module(k)
        degrees = None if m.degrees is None else [m.degrees[c] for c in chosen]
        modules[k] = FpModule.free(ring, len(chosen), degrees, [m.labels[c] for c in chosen])
    differentials = {
        k: x.d(k).matrix.select_rows(positions.get(k + 1, [])).select_columns(chosen)
        for k, chosen in positions.items()
        if chosen and positions.get(k + 1)
    }
    return Complex(ring, modules, differentials, name=name)


def idempotence_kernel_check(sequence: ElementSequence, top: int) -> CheckResult:
    """For one element: ker(e^∨⊗1) on K^∨(a^j)⊗K^∨(a^j) is the degree-one part of the first factor
    tensored with K^∨(a^j), concentrated in degrees 1 and 2, with cohomology vanishing in the colimit.

    Raises:
        ValueError: If the sequence has more than one element.
    """
    if sequence.n != 1:
        raise ValueError(f"the kernel description holds for one element, got {sequence}")
    duals = DualKoszulSystem(sequence, top)
    positions: Dict[int, Dict[int, List[int]]] = {}
    structural = []

    def kernel_level(j: int) -> Complex:
        product = tensor(duals.level(j), duals.level(j))
        augmentation = tensor_with_identity(duals.augmentation(j), duals.level(j))
        phi = tensor_unitor(duals.level(j)).compose(augmentation)
        positions[j] = _coordinate_kernel(phi)
        z = _subcomplex(product, positions[j], f"ker{j}")
        if z.degrees != (1, 2):
            structural.append(f"level {j}: kernel lives in degrees {z.degrees}")
        for k in product.degrees:
            # e∨⊗1 is a coordinate projection onto K^∨(a^j), so kernel and image ranks fill the product.
            if len(positions[j].get(k, [])) + duals.level(j).rank(k) != product.rank(k):
                structural.append(f"level {j}: e∨⊗1 is not onto in degree {k}")
        return z

    def restricted(j: int) -> ComplexMap:
        source, target = kernels.level(j), kernels.level(j + 1)
        transition = tensor_map(duals.transition(j), duals.transition(j))
        maps = {
            k: transition.at(k).matrix.select_rows(positions[j + 1][k]).select_columns(chosen)
            for k, chosen in positions[j].items()
            if chosen and positions[j + 1].get(k)
        }
        return ComplexMap(source, target, maps)

    kernels: LevelSystem[Complex] = LevelSystem(DIRECT, 1, top, kernel_level, restricted, name="ker(e∨⊗1)")
    for j in kernels.indices:
        kernels.level(j)
    certificates, verdicts, witnesses = {}, [], list(structural)
    for k in (1, 2):
        certificate = vanishing_check(cohomology_system(kernels, k), top, degree=k)
        certificates[k] = _pro_zero_dict(certificate)
        verdicts.append(certificate.verdict)
        if not certificate.complete:
            witnesses.append(f"H^{k} of the kernel: no vanishing pair within cap {top}")
    verdict = VERDICT_FAIL if structural else combine_verdicts(verdicts)
    return CheckResult("kernel", verdict, witnesses, {"certificates": certificates})


# ---------------------------------
# Torsion characterization.
# ---------------------------------


def torsion_char_verify(m: Union[FpModule, Complex], sequence: ElementSequence, top: int) -> VerificationReport:
    """σ_j: K^∨(𝒂^j)⊗M → M induces an isomorphism on colimits when every H^k(M) is 𝔞-torsion.

    The onset is the first level from which every cohomology class of M lifts and
    every kernel class has died, as read off the offset pairs.
    """
    x = as_complex(m)
    witness = non_torsion_witness(x, sequence)
    if witness is not None:
        return make_report("torsion_char", [CheckResult("precondition", VERDICT_NOT_APPLICABLE, [witness])])
    rg = RGammaSystem(x, sequence, top)
    degrees = _degrees(rg.level(top), x)
    certificate = limit_certificate(rg.system, constant_complex_system(DIRECT, x, top), rg.sigma, degrees, top)
    onset = max(1, certificate.max_offset)
    logger.debug(f"σ along {sequence}: {certificate.verdict}, onset {onset}")
    return make_report("torsion_char", [_certificate_check("sigma", certificate, onset=onset)])


# ---------------------------------
# MGM.
# ---------------------------------


def _completion_of_sigma(p: Complex, sequence: ElementSequence, top: int) -> CheckResult:
    """For each completion level j, A/(𝒂^j)⊗σ_i is an isomorphism on colimits over i."""
    rg = RGammaSystem(p, sequence, 2 * top)
    certificates, verdicts, witnesses = {}, [], []
    for j in required_levels(top):
        elements = sequence.power(j).elements
        cap = top + j
        source = _quotient_system(rg.system, elements, cap)
        quotient = quotient_complex(p, elements)
        target = constant_complex_system(DIRECT, quotient, cap)

        def sigma(i: int, source=source, quotient=quotient) -> ComplexMap:
            return rg.sigma(i).between(source.level(i), quotient)

        certificate = limit_certificate(source, target, sigma, _degrees(source.level(cap), quotient), cap)
        certificates[j] = certificate.as_dict()
        verdicts.append(certificate.verdict)
        witnesses.extend(f"level {j}: degree {k} undetermined at cap {cap}" for k in certificate.undetermined)
    return CheckResult("llambda_sigma", combine_verdicts(verdicts), witnesses, {"certificates": certificates})


def _torsion_of_tau(p: Complex, sequence: ElementSequence, top: int) -> CheckResult:
    """For each Koszul level i, K^∨(𝒂^i)⊗τ_j is an isomorphism on limits over j."""
    levels = required_levels(top)
    duals = DualKoszulSystem(sequence, top)
    tower = CompletionTower(sequence, p, top + levels[-1])
    certificates, verdicts, witnesses = {}, [], []
    for i in levels:
        dual = duals.level(i)
        cap = top + i
        base = tensor(dual, p)
        target = _tensored_system(dual, tower.system, cap)

        def tau(j: int, dual=dual, base=base, target=target) -> ComplexMap:
            return identity_tensor(dual, tower.tau(j)).between(base, target.level(j))

        certificate = limit_certificate(constant_complex_system(INVERSE, base, cap), target, tau, _degrees(base, target.level(cap)), cap)
        certificates[i] = certificate.as_dict()
        verdicts.append(certificate.verdict)
        witnesses.extend(f"level {i}: degree {k} undetermined at cap {cap}" for k in certificate.undetermined)
    return CheckResult("rgamma_tau", combine_verdicts(verdicts), witnesses, {"certificates": certificates})


def _completion_table(x: Complex, sequence: ElementSequence, top: int, window: Tuple[int, int], degrees: Sequence[int]) -> GradedWindowTable:
    """lim_j H(X/(𝒂^j)X)_d over the window.

    The tower is constant in the window from the clearing level c on. With a guard
    of c every accepted run reaches past c, so a stable entry is the true limit.
    """
    c = clearing_level(x, sequence, window[1])
    tower = CompletionTower(sequence, x, max(top, 2 * c + 1)).system
    return graded_window_table(tower, window, degrees, guard=c)


def _torsion_of_completion(
    p: Complex, sequence: ElementSequence, top: int, window: Tuple[int, int], degrees: Sequence[int]
) -> Tuple[GradedWindowTable, Dict[int, int], int]:
    """colim_i lim_j H(K^∨(𝒂^i)⊗P/(𝒂^j))_d, that is RΓ(LΛ M).

    Each RΓ level i gets its own completion tower; the colimit over i is then read
    at a level j past every tower's stable level. Returns the table, the stable
    level of each tower and that common level.
    """
    rg = RGammaSystem(p, sequence, top)
    stable_levels = {i: _completion_table(rg.level(i), sequence, top, window, degrees).stable_level for i in rg.system.indices}
    level = max(stable_levels.values())
    outer = _quotient_system(rg.system, sequence.power(level).elements, top)
    return graded_window_table(outer, window, degrees), stable_levels, level


def _completion_of_torsion(
    p: Complex, sequence: ElementSequence, top: int, window: Tuple[int, int], degrees: Sequence[int]
) -> Tuple[GradedWindowTable, Dict[int, int], int]:
    """lim_j colim_i H(K^∨(𝒂^i)⊗P/(𝒂^j))_d, that is LΛ(RΓ M).

    At each completion level j the RΓ system modulo (𝒂^j) is grown until stable;
    the limit over j is then the completion tower of one RΓ level past every
    stable level, up to the last j so tabulated. Returns the table, the stable
    level of each j and that common level.
    """
    c = clearing_level(p, sequence, window[1])
    last = max(top, 2 * c + 1)
    rg = RGammaSystem(p, sequence, max(last, DEFAULT_LIMITS.level_cap))
    stable_levels = {}
    for j in range(1, last + 1):
        quotient = _quotient_system(rg.system, sequence.power(j).elements, rg.top)
        # Positive Koszul degrees land in (𝒂^j) after j transitions, so a shorter bijective run may still die.
        table = grown_window_table(quotient, window, degrees, top, guard=j + STABILITY_GUARD)
        stable_levels[j] = table.stable_level
    level = max(stable_levels.values())
    outer = CompletionTower(sequence, rg.level(level), last).system
    return graded_window_table(outer, window, degrees, guard=c), stable_levels, level


def _round_trip(
    x: Complex, p: Complex, floor: Optional[int], sequence: ElementSequence, top: int, window: Window
) -> Tuple[CheckResult, Dict[str, Table]]:
    """Graded tables of LΛ M, RΓ M and the composites LΛ(RΓ M) and RΓ(LΛ M).

    LΛ(RΓ M) must match LΛ M and RΓ(LΛ M) must match RΓ M; LΛ M matches H(M)
    degreewise, and for torsion M so do RΓ M and LΛ(RΓ M).
    """
    if window is None or not is_graded_input(sequence, x, p):
        return CheckResult("round_trip", VERDICT_NOT_APPLICABLE, ["needs graded input and a window"]), {}

    rg = RGammaSystem(p, sequence, top).system
    degrees = [k for k in system_degrees(rg, cohomology_range(p)) if floor is None or k >= floor]
    completion = _completion_table(p, sequence, top, window, degrees)
    gamma_lambda, tower_levels, j_level = _torsion_of_completion(p, sequence, top, window, degrees)
    lambda_gamma, colimit_levels, i_level = _completion_of_torsion(p, sequence, top, window, degrees)
    tables = {
        "completion": completion.as_dict(),
        "module": complex_table(p, window, degrees),
        "torsion": graded_window_table(rg, window, degrees).as_dict(),
        "torsion_of_completion": gamma_lambda.as_dict(),
        "completion_of_torsion": lambda_gamma.as_dict(),
    }
    pairs = [
        ("completion", "module"),
        ("torsion_of_completion", "torsion"),
        ("completion_of_torsion", "completion"),
    ]
    torsion = non_torsion_witness(x, sequence) is None
    if torsion:
        pairs += [("torsion", "module"), ("completion_of_torsion", "module")]
    witnesses = [f"{left} against {right}: {w}" for left, right in pairs for w in table_mismatches(tables[left], tables[right])]
    details = {
        "torsion_input": torsion,
        "tower_levels": tower_levels,
        "completion_level": j_level,
        "colimit_levels": colimit_levels,
        "torsion_level": i_level,
    }
    return CheckResult("round_trip", VERDICT_FAIL if witnesses else VERDICT_PASS, witnesses, details), tables


def mgm_verify(
    m: Union[FpModule, Complex],
    sequence: ElementSequence,
    top: int,
    window: Window = None,
    length: Optional[int] = None,
) -> VerificationReport:
    """The MGM equivalence through its two comparison lemmas and a graded round trip.

    Raises:
        WindowInsufficient: If some graded entry does not stabilize by level top.
    """
    logger.info(f"MGM along {sequence} up to level {top}, window {window}")
    x = as_complex(m)
    p, resolution, degree = free_model(m, length, sequence.n)
    floor = None
    if resolution is not None and resolution.floor(0) is not None:
        floor = resolution.floor(0) + degree
    round_trip, tables = _round_trip(x, p, floor, sequence, top, window)
    checks = [_completion_of_sigma(p, sequence, top), _torsion_of_tau(p, sequence, top), round_trip]
    return make_report("mgm", checks, tables)


# ---------------------------------
# GM duality.
# ---------------------------------

GM_MAPS = ("hom_counit", "hom_tau", "hom_u", "hom_completion")


class _DualityMaps:
    """The four maps with T = Tel_j, I = N:
    Hom(T⊗P, T⊗I) → Hom(T⊗P, I) → Hom(T⊗P, Hom(T,I)) ← Hom(P, Hom(T,I)) ← Hom(Hom(T,P), Hom(T,I)).
    """

    def __init__(self, p: Complex, n: Complex, sequence: ElementSequence, top: int):
        self.p = p
        self.n = n
        self.sequence = sequence
        self.telescopes = TelescopeSystem(sequence, top)
        self._maps: Dict[int, Dict[str, ComplexMap]] = {}

    def at(self, j: int) -> Dict[str, ComplexMap]:
        if j not in self._maps:
            tel = self.telescopes.telescope(j)
            t, p, n = tel.complex, self.p, self.n
            u = u_map(self.sequence, j, tel)
            tp = tensor(t, p)
            hom_tn = hom_from_free(t, n)
            counit = tensor_unitor(n).compose(tensor_with_identity(u, n))
            tau_n = hom_map_source(u, n).between(n, hom_tn)
            u_p = tensor_unitor(p).compose(tensor_with_identity(u, p))
            tau_p = hom_map_source(u, p).between(p, hom_from_free(t, p))
            self._maps[j] = {
                "hom_counit": hom_map_target(tp, counit),
                "hom_tau": hom_map_target(tp, tau_n),
                "hom_u": hom_map_source(u_p, hom_tn),
                "hom_completion": hom_map_source(tau_p, hom_tn),
            }
        return self._maps[j]


def gm_duality_verify(
    m: Union[FpModule, Complex],
    n: Union[FpModule, Complex],
    sequence: ElementSequence,
    top: int,
    window: Window = None,
    length: Optional[int] = None,
) -> VerificationReport:
    """The four duality maps per graded cell at level top, with the level from which they hold,
    and ρ: Hom(K^∨(𝒂^j), N) → Hom(Tel_j, N) as a quasi-isomorphism at every level.
    """
    logger.info(f"GM duality along {sequence} up to level {top}, window {window}")
    p, _, _ = free_model(m, length, sequence.n)
    target = as_complex(n)
    checks = []
    if window is not None and is_graded_input(sequence, p, target):
        maps = _DualityMaps(p, target, sequence, top)
        for name in GM_MAPS:
            comparison = onset_comparison(lambda j, name=name: maps.at(j)[name], window, top)
            verdict = VERDICT_PASS if comparison.top.holds else VERDICT_FAIL
            checks.append(CheckResult(name, verdict, comparison.top.witnesses(), {"onset": comparison.onset}))
    else:
        checks.extend(CheckResult(name, VERDICT_NOT_APPLICABLE, ["needs graded input and a window"]) for name in GM_MAPS)
    telescopes = TelescopeSystem(sequence, top)
    witnesses = []
    for j in range(1, top + 1):
        w = w_map(sequence, j, telescopes.telescope(j))
        witnesses.extend(_quasi_iso_witnesses(hom_map_source(w, target), f"level {j}"))
    checks.append(CheckResult("rho", VERDICT_FAIL if witnesses else VERDICT_PASS, witnesses))
    return make_report("gm_duality", checks)


# ---------------------------------
# Permanence and base change.
# ---------------------------------


def _rgamma_tables(
    unit: Union[FpModule, Complex], seq_a: ElementSequence, seq_b: ElementSequence, top: int, window: Tuple[int, int]
) -> Tuple[Table, Table]:
    system_a = RGammaSystem(unit, seq_a, top).system
    system_b = RGammaSystem(unit, seq_b, top).system
    degrees = sorted(set(system_degrees(system_a)) | set(system_degrees(system_b)))
    return graded_window_table(system_a, window, degrees).as_dict(), graded_window_table(system_b, window, degrees).as_dict()


def permanence_verify(seq_a: ElementSequence, seq_b: ElementSequence, top: int, window: Window = None) -> VerificationReport:
    """Equal radicals give equal Γ on the suite A, A/(𝒂), A/(𝒃) and, graded, equal RΓ(A) tables."""
    ring = seq_a.ring
    logger.info(f"Permanence of {seq_a} against {seq_b}")
    witness = _radical_witness(ring, seq_a, seq_b)
    if witness is not None:
        return make_report("permanence", [CheckResult("radical", VERDICT_HYPOTHESIS_FAILS, [witness])])
    checks = [CheckResult("radical", VERDICT_PASS, details={"equal_ideals": _equal_ideals(ring, seq_a, seq_b)})]
    unit = FpModule.free(ring, 1, (0,) if ring.is_graded else None)
    suite = {"A": unit, "A/a": FpModule.cyclic(ring, seq_a.elements), "A/b": FpModule.cyclic(ring, seq_b.elements)}
    differing = [f"Γ differs on {name}" for name, module in suite.items() if not _same_gamma(module, seq_a, seq_b)]
    checks.append(CheckResult("gamma", VERDICT_FAIL if differing else VERDICT_PASS, differing))
    tables = {}
    if window is not None and seq_a.is_homogeneous() and seq_b.is_homogeneous():
        tables["rgamma_a"], tables["rgamma_b"] = _rgamma_tables(unit, seq_a, seq_b, top, window)
        mismatches = table_mismatches(tables["rgamma_a"], tables["rgamma_b"])
        checks.append(CheckResult("tables", VERDICT_FAIL if mismatches else VERDICT_PASS, mismatches))
    else:
        checks.append(CheckResult("tables", VERDICT_NOT_APPLICABLE, ["needs homogeneous sequences and a window"]))
    return make_report("permanence", checks, tables)


def _same_differentials(x: Complex, y: Complex) -> bool:
    if x.rank_profile() != y.rank_profile():
        return False
    return all(x.d(k).matrix == y.d(k).matrix for k in x.degrees)


def _level_mismatches(
    left: "LevelSystem[Complex]", right: "LevelSystem[Complex]", window: Tuple[int, int], degrees: Sequence[int], label: str
) -> List[str]:
    """Per level j and cell (k, d): cohomology dimensions and transition ranks of two systems."""
    out = []
    for j in left.indices:
        for k in degrees:
            for d in window_range(window):
                a = graded_cohomology_dimension(left.level(j), k, d)
                b = graded_cohomology_dimension(right.level(j), k, d)
                if a != b:
                    out.append(f"{label} level {j}: H^{k} in degree {d}: {a} against {b}")
                elif j < left.last:
                    rank_a = graded_map_cell(left.transition(j), k, d).rank
                    rank_b = graded_map_cell(right.transition(j), k, d).rank
                    if rank_a != rank_b:
                        out.append(f"{label} transition {j}: H^{k} in degree {d}: rank {rank_a} against {rank_b}")
    return out


def _stable_table_check(name: str, left: GradedWindowTable, right: GradedWindowTable, top: int) -> CheckResult:
    """Stable cells of both tables must agree; cells unstable on either side leave the check undetermined."""
    mismatches = []
    for cell in sorted(set(left.entries) & set(right.entries)):
        a, b = left.entries[cell], right.entries[cell]
        if a.is_stable and b.is_stable and a.stable_dimension != b.stable_dimension:
            k, d = cell
            mismatches.append(f"H^{k} in degree {d}: {a.stable_dimension} against {b.stable_dimension}")
    unstable = sorted(set(left.unstable) | set(right.unstable))
    details = {"unstable": [list(c) for c in unstable]}
    if mismatches:
        return CheckResult(name, VERDICT_FAIL, mismatches, details)
    if unstable:
        witnesses = [f"H^{k} in degree {d} does not stabilize by level {top}" for k, d in unstable]
        return CheckResult(name, f"{VERDICT_UNDETERMINED} at cap {top}", witnesses, details)
    return CheckResult(name, VERDICT_PASS, details=details)


def base_change_verify(
    f: RingMap,
    seq_a: ElementSequence,
    seq_b: ElementSequence,
    m: Union[FpModule, Complex],
    top: int,
    window: Window = None,
) -> VerificationReport:
    """RΓ and LΛ commute with restriction along f: A → B when √𝔟 = √(f(𝔞)B).

    B ⊗_A K^∨(𝒂^j) and B ⊗_A Tel_j are the complexes of f(𝒂). In the graded regime M
    is restricted to A through its degrees up to window[1] + top·Σdeg(𝒂), which is
    all a level j ≤ top reads in the window. The Koszul levels of M over A and over
    B are then compared cell by cell with their transitions, and the stable tables
    of RΓ_𝔞 and LΛ_𝔞 over A against RΓ_𝔟 and LΛ_𝔟 over B. Otherwise Γ_𝔞 of the
    restriction, which is Γ along f(𝒂), is compared with Γ_𝔟 on each H^k(M).

    Raises:
        ComplexError: If the sequences do not live on the source and target of f.
    """
    if seq_a.ring != f.source or seq_b.ring != f.target:
        raise ComplexError(f"{seq_a} and {seq_b} do not match the ring map")
    image = f.apply_sequence(seq_a)
    logger.info(f"Base change of {seq_a} to {image} against {seq_b}")
    witness = _radical_witness(f.target, image, seq_b)
    if witness is not None:
        return make_report("base_change", [CheckResult("radical", VERDICT_HYPOTHESIS_FAILS, [witness])])
    checks = [CheckResult("radical", VERDICT_PASS, details={"equal_ideals": _equal_ideals(f.target, image, seq_b)})]
    mismatched = []
    for j in range(1, top + 1):
        if not _same_differentials(base_change(f, dual_koszul(seq_a.power(j))), dual_koszul(image.power(j))):
            mismatched.append(f"K∨ level {j}")
        if not _same_differentials(base_change(f, telescope(seq_a, j).complex), telescope(image, j).complex):
            mismatched.append(f"Tel level {j}")
    checks.append(CheckResult("complexes", VERDICT_FAIL if mismatched else VERDICT_PASS, mismatched))
    x = as_complex(m)
    graded = window is not None and isinstance(m, FpModule) and f.is_graded() and is_graded_input(seq_a, x)
    if not (graded and seq_b.is_homogeneous()):
        differing = [f"Γ differs on H^{k}" for k in cohomology_range(x) if not _same_gamma(cohomology(x, k), image, seq_b)]
        checks.append(CheckResult("gamma", VERDICT_FAIL if differing else VERDICT_PASS, differing))
        reason = ["needs a graded module, a graded ring map and a window"]
        for name in ("rgamma_levels", "completion_levels", "rgamma_tables", "completion_tables"):
            checks.append(CheckResult(name, VERDICT_NOT_APPLICABLE, list(reason)))
        return make_report("base_change", checks)

    ceiling = window[1] + top * sum(seq_a.degrees())
    restricted = restrict_truncated(f, m, ceiling)
    logger.debug(f"Restriction through degree {ceiling}: {restricted.rank} generators over {f.source}")
    over_a, over_b = as_complex(restricted), x

    rgamma_a = RGammaSystem(over_a, seq_a, top).system
    rgamma_image = RGammaSystem(over_b, image, top).system
    degrees = system_degrees(rgamma_a, system_degrees(rgamma_image))
    mismatches = _level_mismatches(rgamma_a, rgamma_image, window, degrees, "K∨⊗M")
    checks.append(CheckResult("rgamma_levels", VERDICT_FAIL if mismatches else VERDICT_PASS, mismatches))

    koszul_a = _tensored_system(over_a, KoszulTower(seq_a, top).system, top)
    koszul_image = _tensored_system(over_b, KoszulTower(image, top).system, top)
    degrees = system_degrees(koszul_a, system_degrees(koszul_image))
    mismatches = _level_mismatches(koszul_a, koszul_image, window, degrees, "K⊗M")
    checks.append(CheckResult("completion_levels", VERDICT_FAIL if mismatches else VERDICT_PASS, mismatches))

    rgamma_b = RGammaSystem(over_b, seq_b, top).system
    degrees = system_degrees(rgamma_a, system_degrees(rgamma_b))
    left = graded_window_table(rgamma_a, window, degrees)
    right = graded_window_table(rgamma_b, window, degrees)
    checks.append(_stable_table_check("rgamma_tables", left, right, top))
    tables = {"rgamma_restricted": left.stable_dict(), "rgamma_b": right.stable_dict()}

    p_a, _, _ = free_model(restricted, None, seq_a.n)
    p_b, _, _ = free_model(m, None, seq_b.n)
    degrees = sorted(set(cohomology_range(p_a)) | set(cohomology_range(p_b)))
    left = _completion_table(p_a, seq_a, top, window, degrees)
    right = _completion_table(p_b, seq_b, top, window, degrees)
    checks.append(_stable_table_check("completion_tables", left, right, top))
    tables["completion_restricted"], tables["completion_b"] = left.stable_dict(), right.stable_dict()
    return make_report("base_change", checks, tables)
