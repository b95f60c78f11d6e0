from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from algebra.calculus import direct_sum as direct_sum_modules
from algebra.calculus import kernel, module_calculus, prune
from algebra.groebner import SubmoduleBasis
from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from complexes.complex import Complex, ComplexMap
from complexes.operations import cone, tensor
from complexes.reduction import minimize
from constants.errors import ComplexError


class CohomologyModule:
    """H^k(X) = ker d^k / im d^{k-1}, computed on the minimal model of X.

    Attributes:
        module: the presentation of H^k(X); generator i is the class of cycles[i].
        cycles: representative cycles in X^k (the original complex), one per generator.
    """

    def __init__(self, x: Complex, k: int):
        self.complex = x
        self.k = k
        reduction = minimize(x)
        self._reduction = reduction
        y = reduction.reduced
        ring = x.ring
        self.ring = ring
        space = y.module(k)
        self._space = space
        boundaries = [c for c in y.d(k - 1).matrix.columns if any(c)]
        if space.rank == 0:
            cycles = []
        else:
            _, inclusion = kernel(y.d(k))
            cycles = list(inclusion.matrix.columns)
        spanned = boundaries + list(space.relations.columns)
        if spanned:
            basis = SubmoduleBasis.of(ring, space.rank, spanned)
            cycles = [z for z in cycles if not basis.contains(z)]
        self._generators = cycles
        stacked = cycles + spanned
        self._lifter = SubmoduleBasis.of(ring, space.rank, stacked, track=True) if stacked else None
        relations = []
        if cycles and self._lifter is not None:
            relations = [s[: len(cycles)] for s in self._lifter.syzygies()]
        degrees = None
        if space.degrees is not None:
            degrees = [space.column_degree(z) for z in cycles]
        labels = [(("H", k, i),) for i in range(len(cycles))]
        raw = FpModule(ring, len(cycles), PolyMatrix(ring, len(cycles), relations, reduce=False), degrees, labels)
        pruned = prune(raw)
        self.module = pruned.module
        self._to_module = pruned.to_pruned.matrix
        reduced_cycles = PolyMatrix(ring, space.rank, cycles, reduce=False) @ pruned.from_pruned.matrix if cycles else None
        include = reduction.inclusion.at(k).matrix
        self.cycles: List[Tuple[PolyElement, ...]] = (
            [include.apply(c) for c in reduced_cycles.columns] if reduced_cycles is not None else []
        )
        logger.trace(f"H^{k}({x.name or 'X'}) has {self.module.rank} generators")

    def express(self, vector: Sequence[PolyElement]) -> Tuple[PolyElement, ...]:
        """Coordinates in module of the class of a cycle of X^k.

        Raises:
            ComplexError: If the vector is not a cycle.
        """
        ring = self.ring
        reduced = self._reduction.projection.at(self.k).matrix.apply(vector) if self._space.rank else ()
        if not any(reduced):
            return tuple(ring.zero for _ in range(self.module.rank))
        coefficients = self._lifter.lift(reduced) if self._lifter is not None else None
        if coefficients is None:
            raise ComplexError(f"vector is not a cycle in degree {self.k}")
        on_generators = coefficients[: len(self._generators)]
        return self._to_module.apply(on_generators)

    def is_zero(self) -> bool:
        return self.module.is_zero()


def cohomology_module(x: Complex, k: int) -> CohomologyModule:
    key = ("H", k)
    if key not in x.cache:
        x.cache[key] = CohomologyModule(x, k)
    return x.cache[key]


def cohomology(x: Complex, k: int) -> FpModule:
    return cohomology_module(x, k).module


def cohomology_range(x: Complex) -> range:
    support = x.support
    if support is None:
        return range(0)
    return range(support[0], support[1] + 1)


def is_acyclic(x: Complex) -> bool:
    reduced = minimize(x).reduced
    if not reduced.degrees:
        return True
    return all(cohomology_module(x, k).is_zero() for k in cohomology_range(x))


def induced_map(phi: ComplexMap, k: int) -> ModuleMap:
    """H^k(φ), checked for well-definedness."""
    source = cohomology_module(phi.source, k)
    target = cohomology_module(phi.target, k)
    columns = [target.express(phi.at(k).matrix.apply(z)) for z in source.cycles]
    matrix = PolyMatrix(phi.ring, target.module.rank, columns, reduce=False)
    return ModuleMap(source.module, target.module, matrix)


@dataclass
class QuasiIsoVerdict:
    holds: bool
    # degree -> {"kernel": [...], "cokernel": [...]} with cycle representatives as text.
    failures: Dict[int, Dict[str, List[str]]] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def _render(vector: Sequence[PolyElement]) -> str:
    return "(" + ", ".join(str(f.as_expr()) for f in vector) + ")"


def is_quasi_iso(phi: ComplexMap) -> QuasiIsoVerdict:
    """Decides whether every H^k(φ) is bijective; failing degrees carry witness cycles."""
    if not minimize(cone(phi)).reduced.degrees:
        return QuasiIsoVerdict(True)
    degrees = sorted(set(cohomology_range(phi.source)) | set(cohomology_range(phi.target)))
    failures = {}
    for k in degrees:
        calculus = module_calculus(induced_map(phi, k))
        if calculus.is_isomorphism:
            continue
        source = cohomology_module(phi.source, k)
        target = cohomology_module(phi.target, k)
        witness = {"kernel": [], "cokernel": []}
        ring = phi.ring
        for column in calculus.kernel_inclusion.matrix.columns:
            cycle = PolyMatrix(ring, phi.source.rank(k), source.cycles, reduce=False).apply(column) if source.cycles else ()
            witness["kernel"].append(_render(cycle))
        lifts = calculus.cokernel_projection.matrix
        for i in range(calculus.cokernel.rank):
            # Generators of the cokernel are images of target generators; report the first preimage.
            for j, column in enumerate(lifts.columns):
                if column[i] and not calculus.cokernel.contains(column):
                    witness["cokernel"].append(_render(target.cycles[j]))
                    break
        failures[k] = witness
    verdict = QuasiIsoVerdict(not failures, failures)
    if failures:
        logger.debug(f"Map is not a quasi-isomorphism in degrees {sorted(failures)}")
    return verdict


def exact_functor_comparison(x: Complex, k: int, r: int) -> ModuleMap:
    """The canonical map H^k(X)^{⊕r} → H^k(X ⊗ A^r)."""
    ring = x.ring
    degrees = [0] * r if ring.is_graded else None
    free = Complex.concentrated(FpModule.free(ring, r, degrees, [(("e", t),) for t in range(r)]))
    product = tensor(x, free)
    source = cohomology_module(x, k)
    target = cohomology_module(product, k)
    # tensor places X^a⊗A^r summands by ascending a; A^r lives in degree 0 so only X^k contributes.
    columns = []
    for t in range(r):
        for z in source.cycles:
            vector = [ring.zero] * product.rank(k)
            for i, f in enumerate(z):
                vector[i * r + t] = f
            columns.append(target.express(vector))
    summed = direct_sum_modules([source.module] * r) if r else FpModule.zero(ring)
    return ModuleMap(summed, target.module, PolyMatrix(ring, target.module.rank, columns, reduce=False))
