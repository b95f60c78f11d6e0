"""Verifiers for the Čech side: the cone triangle A → C_j → K^∨(𝒂^j)[1], completeness and the AW product.

Completeness of M is decided twice, once through the completion tower
(τ: P → lim A/(𝒂^j)⊗P) and once through the Čech hom system
(lim Hom(C_j, P) = 0), and the two conclusions must agree.
"""

from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from loguru import logger

from algebra.calculus import image, kernel
from algebra.ideals import same_submodule
from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import ElementSequence
from cech.level import CechLevelComplex, cech_hom_system, cech_level
from cech.product import Cochain, aw_product, random_cochain
from complexes.cohomology import cohomology_range, induced_map
from complexes.complex import Complex, ComplexMap
from complexes.levels import INVERSE, LevelSystem, cohomology_system
from complexes.operations import cone, permutation_map, shift, shift_map
from constants import VERDICT_FAIL, VERDICT_NOT_APPLICABLE, VERDICT_PASS, VERDICT_UNDETERMINED
from constants.errors import ComplexError
from derived.systems import free_model
from derived.verify import (
    CheckResult,
    VerificationReport,
    constant_complex_system,
    is_graded_input,
    limit_certificate,
    make_report,
    non_torsion_witness,
    table_mismatches,
)
from derived.window import complex_table, graded_window_table, system_degrees
from koszul.certificates import ProZeroCertificate, pro_zero_check
from koszul.tower import K_BOTTOM, dual_koszul
from telescope.completion import CompletionTower, as_complex

Window = Optional[Tuple[int, int]]

COMPLETE = "complete"
NOT_COMPLETE = "not complete"


# ---------------------------------
# Cone triangle.
# ---------------------------------


def _dual_subset(label: Tuple) -> Tuple[int, ...]:
    """The factors of a K^∨ generator sitting in the dual of the bottom Koszul degree."""
    return tuple(t for t, component in enumerate(label) if component == ("dual", K_BOTTOM))


def cone_iso(level: CechLevelComplex) -> ComplexMap:
    """cone(f_j) → K^∨(𝒂^j)[1], g_S ↦ (-1)^{|S|} e_S^∨, the unit summand of the cone playing S = ∅.

    Raises:
        ComplexError: If the assignment is not a map of complexes.
    """
    source = cone(level.localization())
    target = shift(dual_koszul(level.sequence.power(level.level)), 1)
    images = {}
    for k in source.degrees:
        positions = {_dual_subset(label): pos for pos, label in enumerate(target.module(k).labels)}
        subsets = [()] if k == -1 else level.tuples(k)
        images[k] = [(positions[subset], -1 if len(subset) % 2 else 1) for subset in subsets]
    phi = permutation_map(source, target, images)
    phi.verify()
    return phi


def triangle_maps(level: CechLevelComplex) -> Tuple[ComplexMap, ComplexMap, ComplexMap, ComplexMap]:
    """f_j, the inclusion of C_j into the cone, the projection onto A[1], and f_j[1]."""
    ring = level.ring
    f = level.localization()
    unit, c = f.source, f.target
    mapping_cone = cone(f)
    inclusion = {}
    for k in c.degrees:
        offset = unit.rank(k + 1)
        entries = {(offset + i, i): ring.one for i in range(c.rank(k))}
        inclusion[k] = PolyMatrix.from_entries(ring, mapping_cone.rank(k), c.rank(k), entries)
    f_shifted = shift_map(f, 1)
    projection = {-1: PolyMatrix.from_entries(ring, 1, mapping_cone.rank(-1), {(0, 0): ring.one})}
    return f, ComplexMap(c, mapping_cone, inclusion), ComplexMap(mapping_cone, f_shifted.source, projection), f_shifted


def _exact_at(alpha: ModuleMap, beta: ModuleMap) -> bool:
    """im α = ker β inside the middle module."""
    if beta.source.is_zero():
        return True
    if not beta.compose(alpha).is_zero():
        return False
    _, kernel_inclusion = kernel(beta)
    _, image_inclusion = image(alpha)
    return same_submodule(beta.source, image_inclusion, kernel_inclusion)


def _long_exact_sequence(level: CechLevelComplex) -> List[str]:
    f, inclusion, projection, f_shifted = triangle_maps(level)
    failures = []
    for k in range(-2, level.n + 1):
        alpha, beta = induced_map(f, k), induced_map(inclusion, k)
        gamma, delta = induced_map(projection, k), induced_map(f_shifted, k)
        for spot, (left, right) in (("C", (alpha, beta)), ("cone", (beta, gamma)), ("A[1]", (gamma, delta))):
            if not _exact_at(left, right):
                failures.append(f"not exact at H^{k}({spot})")
    return failures


def cone_triangle_verify(sequence: ElementSequence, j: int) -> VerificationReport:
    """cone(f_j) ≅ K^∨(𝒂^j)[1] on the nose, and the triangle's long exact sequence is exact."""
    logger.info(f"Cone triangle of {sequence} at level {j}")
    level = cech_level(sequence, j)
    try:
        phi = cone_iso(level)
        bijective = all(phi.source.rank(k) == phi.target.rank(k) for k in phi.degrees())
        iso = CheckResult("iso", VERDICT_PASS if bijective else VERDICT_FAIL, [] if bijective else ["ranks differ"])
    except (ComplexError, KeyError) as e:
        iso = CheckResult("iso", VERDICT_FAIL, [str(e)])
    failures = _long_exact_sequence(level)
    exactness = CheckResult("les", VERDICT_FAIL if failures else VERDICT_PASS, failures)
    return make_report("cone_triangle", [iso, exactness])


# ---------------------------------
# Completeness.
# ---------------------------------


def _conclusion(certificate, x: Complex, sequence: ElementSequence) -> Tuple[Optional[bool], List[str]]:
    """Complete when the certificate closes; otherwise a non-torsion class decides the other way."""
    if certificate.complete:
        return True, []
    witness = non_torsion_witness(x, sequence)
    if witness is not None:
        return False, [witness]
    return None, [f"degree {k}: no pair within cap {certificate.cap}" for k in certificate.undetermined]


def _side(name: str, complete: Optional[bool], witnesses: List[str], cap: int, **details) -> CheckResult:
    verdict = VERDICT_PASS if complete is not None else f"{VERDICT_UNDETERMINED} at cap {cap}"
    label = {True: COMPLETE, False: NOT_COMPLETE, None: None}[complete]
    return CheckResult(name, verdict, witnesses, {"complete": complete, "conclusion": label, **details})


def _hom_certificate(hom: "LevelSystem[Complex]", degrees: List[int], cap: int) -> ProZeroCertificate:
    certificate = ProZeroCertificate(cap)
    for k in degrees:
        certificate = certificate.merged(pro_zero_check(cohomology_system(hom, k), cap, degree=k))
    return certificate


def _kept(degrees, floor: Optional[int]) -> List[int]:
    return [k for k in degrees if floor is None or k >= floor]


def _graded_sides(
    x: Complex, p: Complex, floor: Optional[int], sequence: ElementSequence, top: int, window: Tuple[int, int]
) -> Tuple[CheckResult, CheckResult, Dict[str, Dict]]:
    completion = CompletionTower(sequence, p, top).system
    lam = graded_window_table(completion, window, _kept(system_degrees(completion, cohomology_range(p)), floor))
    tables = {"completion": lam.as_dict(), "module": complex_table(p, window, lam.degrees)}
    mismatches = table_mismatches(tables["completion"], tables["module"])
    llambda = _side("llambda", not mismatches, mismatches, top)

    hom = cech_hom_system(sequence, p, top)
    surviving = graded_window_table(hom, window, _kept(system_degrees(hom), floor)).as_dict()
    tables["cech_hom"] = surviving
    witnesses = [
        f"H^{k} in degree {d}: {dim} survives" for k, row in sorted(surviving.items()) for d, dim in sorted(row.items()) if dim
    ]
    cech = _side("cech", not witnesses, witnesses, top)
    return llambda, cech, tables


def _module_sides(
    x: Complex, p: Complex, floor: Optional[int], sequence: ElementSequence, top: int
) -> Tuple[CheckResult, CheckResult]:
    completion = CompletionTower(sequence, p, top)
    degrees = _kept(system_degrees(completion.system, cohomology_range(p)), floor)
    source = constant_complex_system(INVERSE, p, top)

    def tau(j: int) -> ComplexMap:
        return completion.tau(j).between(p, completion.level(j))

    certificate = limit_certificate(source, completion.system, tau, degrees, top)
    complete, witnesses = _conclusion(certificate, x, sequence)
    llambda = _side("llambda", complete, witnesses, top, certificate=certificate.as_dict())

    hom = cech_hom_system(sequence, p, top)
    vanishing = _hom_certificate(hom, _kept(system_degrees(hom), floor), top)
    complete, witnesses = _conclusion(vanishing, x, sequence)
    cech = _side("cech", complete, witnesses, top, undetermined=list(vanishing.undetermined))
    return llambda, cech


def _agreement(llambda: CheckResult, cech: CheckResult) -> CheckResult:
    left, right = llambda.details["complete"], cech.details["complete"]
    if left is None or right is None:
        return CheckResult("agreement", VERDICT_NOT_APPLICABLE, ["one side is undetermined"], {"complete": None})
    if left != right:
        return CheckResult(
            "agreement",
            VERDICT_FAIL,
            [f"completion tower says {llambda.details['conclusion']}, Čech says {cech.details['conclusion']}"],
            {"complete": None},
        )
    return CheckResult("agreement", VERDICT_PASS, [], {"complete": left, "conclusion": llambda.details["conclusion"]})


def complete_char_verify(
    m: Union[FpModule, Complex],
    sequence: ElementSequence,
    top: int,
    window: Window = None,
    length: Optional[int] = None,
) -> VerificationReport:
    """M is 𝔞-adically complete iff P → lim A/(𝒂^j)⊗P is an isomorphism iff lim Hom(C_j, P) vanishes.

    Graded input with a window compares stabilized tables; otherwise offset
    certificates decide, and a class of H(M) that is not 𝔞-torsion settles an
    open certificate as "not complete" (a finitely generated module is complete
    exactly when a power of 𝔞 kills it).

    Raises:
        WindowInsufficient: If some graded entry does not stabilize by level top.
    """
    logger.info(f"Completeness along {sequence} up to level {top}, window {window}")
    x = as_complex(m)
    p, resolution, degree = free_model(m, length, sequence.n)
    floor = None
    if resolution is not None and resolution.floor(0) is not None:
        floor = resolution.floor(0) + degree
    tables = {}
    if window is not None and is_graded_input(sequence, x, p):
        llambda, cech, tables = _graded_sides(x, p, floor, sequence, top, window)
    else:
        llambda, cech = _module_sides(x, p, floor, sequence, top)
    return make_report("complete_char", [llambda, cech, _agreement(llambda, cech)], tables)


# ---------------------------------
# Products.
# ---------------------------------


def _render(cochain: Cochain) -> str:
    return "[" + ", ".join(str(u.as_expr()) for u in cochain.numerators) + "]"


def product_verify(sequence: ElementSequence, j: int, rng: np.random.Generator, trials: int = 2) -> VerificationReport:
    """The AW product on random level-j cochains: two-sided unit, Leibniz rule and associativity."""
    logger.info(f"AW product on level {j} cochains of {sequence}, {trials} trials")
    level = cech_level(sequence, j)
    n = level.n
    unit = Cochain.unit(level)
    failures: Dict[str, List[str]] = {"unit": [], "leibniz": [], "associativity": []}
    for _ in range(trials):
        for p in range(n):
            f = random_cochain(level, p, rng)
            if not (aw_product(unit, f).equals(f) and aw_product(f, unit).equals(f)):
                failures["unit"].append(f"degree {p}: {_render(f)}")
            for q in range(n - p):
                g = random_cochain(level, q, rng)
                left = aw_product(f, g).coboundary()
                right = aw_product(f.coboundary(), g) + aw_product(f, g.coboundary()).scale(-1 if p % 2 else 1)
                if not left.equals(right):
                    failures["leibniz"].append(f"degrees ({p}, {q}): {_render(f)} · {_render(g)}")
                for r in range(n - p - q):
                    h = random_cochain(level, r, rng)
                    # Both groupings land on level 4j.
                    left = aw_product(aw_product(f, g), aw_product(unit, h))
                    right = aw_product(aw_product(unit, f), aw_product(g, h))
                    if not left.equals(right):
                        failures["associativity"].append(f"degrees ({p}, {q}, {r})")
    checks = [CheckResult(name, VERDICT_FAIL if found else VERDICT_PASS, found) for name, found in failures.items()]
    return make_report("cech_product", checks)
