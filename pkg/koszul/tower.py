from functools import reduce
from typing import List, Optional

from loguru import logger

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import ElementSequence, RingPresentation
from complexes.complex import Complex, ComplexMap
from complexes.levels import DIRECT, INVERSE, LevelSystem
from complexes.operations import hom_from_free, hom_map_source, tensor, tensor_map

K_TOP = ("k", 0)
K_BOTTOM = ("k", -1)


def _weights(sequence: ElementSequence) -> Optional[List[int]]:
    return list(sequence.degrees()) if sequence.is_homogeneous() else None


def single_koszul(ring: RingPresentation, a, weight: Optional[int]) -> Complex:
    """K(A; a): A → A, multiplication by a, in degrees -1 and 0."""
    graded = weight is not None
    modules = {
        -1: FpModule.free(ring, 1, [weight] if graded else None, [(K_BOTTOM,)]),
        0: FpModule.free(ring, 1, [0] if graded else None, [(K_TOP,)]),
    }
    return Complex(ring, modules, {-1: PolyMatrix(ring, 1, [(a,)])}, check=False, name=f"K({a.as_expr()})")


def koszul_complex(sequence: ElementSequence) -> Complex:
    """K(A; 𝒂) as the tensor K(a_1) ⊗ ... ⊗ K(a_n)."""
    weights = _weights(sequence)
    factors = [
        single_koszul(sequence.ring, a, None if weights is None else weights[t])
        for t, a in enumerate(sequence.elements)
    ]
    result = reduce(tensor, factors)
    result.name = f"K{sequence}"
    return result


def _single_transition(source: Complex, target: Complex, factor) -> ComplexMap:
    ring = source.ring
    return ComplexMap(
        source,
        target,
        {0: PolyMatrix.identity(ring, 1), -1: PolyMatrix(ring, 1, [(factor,)])},
        check=False,
    )


def koszul_transition(sequence: ElementSequence, j: int, i: int) -> ComplexMap:
    """p_{j,i}: K(𝒂^j) → K(𝒂^i), the identity in degree 0 and a^{j-i} in degree -1, tensored."""
    if j < i:
        raise ValueError(f"transition needs j ≥ i, got {j} < {i}")
    ring = sequence.ring
    big, small = sequence.power(j), sequence.power(i)
    weights_big, weights_small = _weights(big), _weights(small)
    maps = []
    for t, a in enumerate(sequence.elements):
        source = single_koszul(ring, big[t], None if weights_big is None else weights_big[t])
        target = single_koszul(ring, small[t], None if weights_small is None else weights_small[t])
        maps.append(_single_transition(source, target, ring.reduce(a ** (j - i))))
    result = reduce(tensor_map, maps)
    return result.between(koszul_complex(big), koszul_complex(small))


def koszul_augmentation(sequence: ElementSequence) -> ComplexMap:
    """e: A → K(𝒂), the unit onto the degree-0 generator."""
    target = koszul_complex(sequence)
    unit = Complex.unit(sequence.ring)
    return ComplexMap(unit, target, {0: PolyMatrix.identity(sequence.ring, 1)}, check=False)


class KoszulTower:
    """The inverse system {K(𝒂^i)}_{i=1..J} with transitions p_{i+1,i}."""

    def __init__(self, sequence: ElementSequence, top: int):
        if top < 1:
            raise ValueError(f"tower needs J ≥ 1, got {top}")
        self.sequence = sequence
        self.top = top
        self.system: LevelSystem[Complex] = LevelSystem(
            INVERSE,
            1,
            top,
            lambda i: koszul_complex(sequence.power(i)),
            lambda i: self._transition(i),
            name=f"K{sequence}^•",
        )

    def _transition(self, i: int) -> ComplexMap:
        p = koszul_transition(self.sequence, i + 1, i)
        return p.between(self.system.level(i + 1), self.system.level(i))

    def level(self, i: int) -> Complex:
        return self.system.level(i)

    def transition(self, i: int) -> ComplexMap:
        return self.system.transition(i)

    def h0_comparison(self, i: int) -> ModuleMap:
        """H^0(K(𝒂^i)) → A/(𝒂^i), sending each generator to its degree-0 cycle."""
        from complexes.cohomology import cohomology_module

        h0 = cohomology_module(self.level(i), 0)
        ring = self.sequence.ring
        degree = 0 if ring.is_graded and self.sequence.is_homogeneous() else None
        quotient = FpModule.cyclic(ring, self.sequence.power(i).elements, degree)
        matrix = PolyMatrix(ring, 1, [(z[0],) for z in h0.cycles], reduce=False)
        return ModuleMap(h0.module, quotient, matrix)


def koszul_tower(sequence: ElementSequence, top: int) -> KoszulTower:
    logger.debug(f"Koszul tower of {sequence} up to level {top}")
    return KoszulTower(sequence, top)


def dual_koszul(sequence: ElementSequence) -> Complex:
    """K^∨(A; 𝒂) = Hom(K(A; 𝒂), A), in degrees 0..n."""
    result = hom_from_free(koszul_complex(sequence), Complex.unit(sequence.ring))
    result.name = f"K∨{sequence}"
    return result


class DualKoszulSystem:
    """The direct system {K^∨(𝒂^j)}_{j=1..J} with transitions Hom(p_{j+1,j}, A) and augmentations e^∨_j."""

    def __init__(self, sequence: ElementSequence, top: int):
        if top < 1:
            raise ValueError(f"system needs J ≥ 1, got {top}")
        self.sequence = sequence
        self.top = top
        self.unit = Complex.unit(sequence.ring)
        self.system: LevelSystem[Complex] = LevelSystem(
            DIRECT,
            1,
            top,
            lambda j: dual_koszul(sequence.power(j)),
            lambda j: self._transition(j),
            name=f"K∨{sequence}^•",
        )

    def _transition(self, j: int) -> ComplexMap:
        dual = hom_map_source(koszul_transition(self.sequence, j + 1, j), self.unit)
        return dual.between(self.system.level(j), self.system.level(j + 1))

    def level(self, j: int) -> Complex:
        return self.system.level(j)

    def transition(self, j: int) -> ComplexMap:
        return self.system.transition(j)

    def augmentation(self, j: int) -> ComplexMap:
        """e^∨_j: K^∨(𝒂^j) → A, Hom(e, 1)."""
        dual = hom_map_source(koszul_augmentation(self.sequence.power(j)), self.unit)
        return dual.between(self.level(j), self.unit)


def dual_koszul_system(sequence: ElementSequence, top: int) -> DualKoszulSystem:
    return DualKoszulSystem(sequence, top)
