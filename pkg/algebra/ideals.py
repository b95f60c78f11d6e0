import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from algebra.calculus import direct_sum, kernel, submodule
from algebra.groebner import SubmoduleBasis
from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import ElementSequence, RingPresentation
from constants import DEFAULT_LIMITS, RABINOWITSCH_VARIABLE
from constants.errors import LevelCapExceeded


def ideal_contains(ring: RingPresentation, generators: Sequence[PolyElement], f: PolyElement) -> bool:
    f = ring.reduce(f)
    if not f:
        return True
    gens = [(g,) for g in generators if g]
    if not gens:
        return False
    return SubmoduleBasis.of(ring, 1, gens).contains((f,))


def ideal_power(sequence: ElementSequence, j: int) -> Tuple[List[PolyElement], List[PolyElement]]:
    """Generators of (𝒂^j) = (a_1^j..a_n^j) and of 𝔞^j, the ideal of all degree-j products."""
    if j < 1:
        raise ValueError(f"ideal power needs j ≥ 1, got {j}")
    ring = sequence.ring
    powers = list(sequence.power(j).elements)
    products = []
    seen = set()
    for combination in itertools.combinations_with_replacement(range(sequence.n), j):
        g = sequence.product(combination)
        key = tuple(sorted(g.items()))
        if g and key not in seen:
            seen.add(key)
            products.append(g)
    logger.trace(f"𝔞^{j} for {sequence} has {len(products)} generators")
    return powers, products


def ideals_contained(ring: RingPresentation, smaller: Sequence[PolyElement], larger: Sequence[PolyElement]) -> bool:
    return all(ideal_contains(ring, larger, f) for f in smaller)


@dataclass(frozen=True)
class RadicalVerdict:
    equal: bool
    # A generator of one ideal outside the radical of the other, when not equal.
    witness: Optional[str] = None


def in_radical(ring: RingPresentation, generators: Sequence[PolyElement], f: PolyElement) -> bool:
    """f ∈ √(𝔟 + I), decided by 1 ∈ I + 𝔟 + (1 - t·f) in k[x, t]."""
    extended = ring.with_variable(RABINOWITSCH_VARIABLE)
    lift = lambda g: extended.poly_ring.from_expr(g.as_expr()) if g else extended.zero
    t = extended.var(RABINOWITSCH_VARIABLE)
    gens = [lift(g) for g in list(ring.ideal_basis) + list(generators)]
    gens.append(extended.one - t * lift(ring.reduce(f)))
    return extended.contains_one(gens)


def radical_equal(ring: RingPresentation, gens_a: Sequence, gens_b: Sequence) -> RadicalVerdict:
    a = [ring.coerce(g) for g in gens_a]
    b = [ring.coerce(g) for g in gens_b]
    for source, target in ((a, b), (b, a)):
        for f in source:
            if not in_radical(ring, target, f):
                return RadicalVerdict(False, str(f.as_expr()))
    return RadicalVerdict(True)


def annihilator_submodule(module: FpModule, generators: Sequence[PolyElement]) -> Tuple[FpModule, ModuleMap]:
    """(0 :_M 𝔟) as the kernel of M → M^m, v ↦ (g·v)_g."""
    ring = module.ring
    gens = [g for g in generators if g]
    if not gens:
        return module, ModuleMap.identity(module)
    target = direct_sum([module] * len(gens))
    columns = []
    for i in range(module.rank):
        column = []
        for g in gens:
            column.extend(g if k == i else ring.zero for k in range(module.rank))
        columns.append(column)
    multiply = ModuleMap(module, target, PolyMatrix(ring, target.rank, columns), check=False)
    return kernel(multiply)


def same_submodule(module: FpModule, smaller: ModuleMap, larger: ModuleMap) -> bool:
    stacked = list(smaller.matrix.columns) + list(module.relations.columns)
    if not stacked:
        return larger.matrix.is_zero()
    basis = SubmoduleBasis.of(module.ring, module.rank, stacked)
    return all(basis.contains(c) for c in larger.matrix.columns)


@dataclass(frozen=True)
class TorsionSubmodule:
    module: FpModule
    inclusion: ModuleMap
    level: int


def torsion_submodule(module: FpModule, sequence: ElementSequence, level_cap: int = None) -> TorsionSubmodule:
    """Γ_𝔞(M) as the stable member of the chain (0 :_M 𝔞^i).

    Raises:
        LevelCapExceeded: If (0 :_M 𝔞^i) = (0 :_M 𝔞^{i+1}) does not occur for i up to the cap.
    """
    cap = level_cap or DEFAULT_LIMITS.torsion_level_cap
    torsion, previous = annihilator_submodule(module, ideal_power(sequence, 1)[1])
    for i in range(1, cap + 1):
        candidate, current = annihilator_submodule(module, ideal_power(sequence, i + 1)[1])
        if same_submodule(module, previous, current):
            logger.debug(f"Γ stabilized at level {i} with {torsion.rank} generators")
            return TorsionSubmodule(torsion, previous, i)
        torsion, previous = candidate, current
    raise LevelCapExceeded(f"(0 :_M 𝔞^i) did not stabilize within level cap {cap}")
