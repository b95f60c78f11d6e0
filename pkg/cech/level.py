"""Level-wise Čech complexes of the cover {a_i ≠ 0}.

Level j replaces A[s_I^{-1}] by the free module on 1/s_I^j, one per strictly
increasing tuple I; the colimit over j recovers the normalized Čech complex.
"""

from itertools import combinations
from typing import Dict, List, Optional, Tuple, Union

from loguru import logger
from sympy.polys.rings import PolyElement

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule
from algebra.ring import ElementSequence
from complexes.complex import Complex, ComplexMap
from complexes.levels import DIRECT, INVERSE, LevelSystem, cohomology_system
from complexes.operations import hom_from_free, hom_map_source, tensor, tensor_with_identity
from derived.limits import vanishing_check
from koszul.certificates import ProZeroCertificate
from telescope.completion import as_complex

CechTuple = Tuple[int, ...]


def cech_tuples(n: int, p: int) -> List[CechTuple]:
    """Strictly increasing (p+1)-tuples of 0..n-1 in lexicographic order."""
    return list(combinations(range(n), p + 1))


def cech_label(index: CechTuple) -> Tuple:
    return (("cech", index),)


class CechLevelComplex:
    """C_j(A; 𝒂) in degrees 0..n-1; generator e_I of degree |I|-1 stands for 1/s_I^j.

    The coboundary is the alternating sum of restrictions:
    d(e_J) = Σ (-1)^r a_{i_r}^j e_I over I = J ∪ {i_r}, r the position of i_r in I.
    """

    def __init__(self, sequence: ElementSequence, level: int):
        if level < 1:
            raise ValueError(f"Čech levels start at 1, got {level}")
        self.sequence = sequence
        self.level = level
        self.ring = sequence.ring
        self.n = sequence.n
        self.graded = sequence.is_homogeneous()
        self._weights = sequence.degrees() if self.graded else None
        self._positions: Dict[int, Dict[CechTuple, int]] = {
            p: {index: i for i, index in enumerate(cech_tuples(self.n, p))} for p in range(self.n)
        }
        self.complex = self._build()

    def tuples(self, p: int) -> List[CechTuple]:
        return list(self._positions.get(p, {}))

    def position(self, index: CechTuple) -> int:
        return self._positions[len(index) - 1][index]

    def base(self, index: CechTuple) -> PolyElement:
        """s_I = a_{i_0} ··· a_{i_p}."""
        return self.sequence.product(index)

    def denominator(self, index: CechTuple) -> PolyElement:
        return self.sequence.product(index, self.level)

    def generator_degree(self, index: CechTuple) -> Optional[int]:
        if not self.graded:
            return None
        return -self.level * sum(self._weights[i] for i in index)

    def _module(self, p: int) -> FpModule:
        tuples = self.tuples(p)
        degrees = [self.generator_degree(index) for index in tuples] if self.graded else None
        return FpModule.free(self.ring, len(tuples), degrees, [cech_label(index) for index in tuples])

    def coboundary(self, p: int) -> PolyMatrix:
        """The matrix of d: C^p → C^{p+1}."""
        ring = self.ring
        entries = {}
        for index in self.tuples(p + 1):
            for r, i in enumerate(index):
                face = index[:r] + index[r + 1 :]
                coefficient = ring.reduce(self.sequence[i] ** self.level)
                if coefficient:
                    entries[(self.position(index), self.position(face))] = coefficient if r % 2 == 0 else -coefficient
        return PolyMatrix.from_entries(ring, len(self.tuples(p + 1)), len(self.tuples(p)), entries)

    def _build(self) -> Complex:
        modules = {p: self._module(p) for p in range(self.n)}
        differentials = {p: self.coboundary(p) for p in range(self.n - 1)}
        return Complex(self.ring, modules, differentials, name=f"C{self.level}{self.sequence}")

    def localization(self) -> ComplexMap:
        """f_j: A → C_j, 1 ↦ Σ a_i^j e_(i), the image of 1 in every A[a_i^{-1}]."""
        ring = self.ring
        column = [ring.reduce(a**self.level) for a in self.sequence]
        return ComplexMap(Complex.unit(ring), self.complex, {0: PolyMatrix(ring, self.n, [column])})

    def __repr__(self) -> str:
        return f"CechLevelComplex({self.sequence}, j={self.level})"


def cech_level(sequence: ElementSequence, level: int) -> CechLevelComplex:
    return CechLevelComplex(sequence, level)


def cech_transition(source: CechLevelComplex, target: CechLevelComplex) -> ComplexMap:
    """C_j → C_{j+1}: e_I = 1/s_I^j ↦ s_I/s_I^{j+1} = s_I e_I."""
    if target.level != source.level + 1 or target.sequence != source.sequence:
        raise ValueError(f"no transition from {source!r} to {target!r}")
    ring = source.ring
    maps = {}
    for p in range(source.n):
        tuples = source.tuples(p)
        entries = {(i, i): source.base(index) for i, index in enumerate(tuples)}
        maps[p] = PolyMatrix.from_entries(ring, len(tuples), len(tuples), entries)
    return ComplexMap(source.complex, target.complex, maps)


class CechSystem:
    """The direct system {C_j(A; 𝒂)} with f_j compatible along the transitions."""

    def __init__(self, sequence: ElementSequence, top: int):
        self.sequence = sequence
        self.top = top
        self._levels: Dict[int, CechLevelComplex] = {}
        self.system: LevelSystem[Complex] = LevelSystem(
            DIRECT,
            1,
            top,
            lambda j: self.cech(j).complex,
            lambda j: cech_transition(self.cech(j), self.cech(j + 1)),
            name=f"C{sequence}^•",
        )

    def cech(self, j: int) -> CechLevelComplex:
        if j not in self._levels:
            self._levels[j] = CechLevelComplex(self.sequence, j)
        return self._levels[j]

    def level(self, j: int) -> Complex:
        return self.system.level(j)

    def localization(self, j: int) -> ComplexMap:
        return self.cech(j).localization()


class DerivedLocalization:
    """Levels C_j ⊗ M with f_j ⊗ 1: M → C_j ⊗ M; C_j is free, so the tensor is derived."""

    def __init__(self, m: Union[FpModule, Complex], sequence: ElementSequence, top: int):
        self.sequence = sequence
        self.top = top
        self.module = as_complex(m)
        self.cech = CechSystem(sequence, top)
        self.system: LevelSystem[Complex] = LevelSystem(
            DIRECT,
            1,
            top,
            lambda j: tensor(self.cech.level(j), self.module),
            lambda j: tensor_with_identity(self.cech.system.transition(j), self.module).between(self.level(j), self.level(j + 1)),
            name=f"C{sequence}⊗M",
        )

    def level(self, j: int) -> Complex:
        return self.system.level(j)

    def localization(self, j: int) -> ComplexMap:
        """A ⊗ M carries the generators of M in order, so f_j ⊗ 1 reads as a map out of M."""
        return tensor_with_identity(self.cech.localization(j), self.module).between(self.module, self.level(j))

    def vanishing(self, cap: Optional[int] = None) -> ProZeroCertificate:
        """Every cohomology class of every level dies further up; holds for 𝔞-torsion M."""
        cap = self.top if cap is None else cap
        certificate = ProZeroCertificate(cap)
        degrees = set()
        for j in (1, self.top):
            degrees |= set(self.level(j).degrees)
        for k in sorted(degrees):
            certificate = certificate.merged(vanishing_check(cohomology_system(self.system, k), cap, degree=k))
        return certificate


def derived_localization(m: Union[FpModule, Complex], sequence: ElementSequence, top: int) -> DerivedLocalization:
    logger.debug(f"Derived localization along {sequence} of {as_complex(m)!r} up to level {top}")
    return DerivedLocalization(m, sequence, top)


def cech_hom_system(sequence: ElementSequence, p: Complex, top: int) -> "LevelSystem[Complex]":
    """The inverse system Hom(C_j, P) with the transitions Hom(C_{j+1} ← C_j, P)."""
    cech = CechSystem(sequence, top)
    system: LevelSystem[Complex] = LevelSystem(
        INVERSE,
        1,
        top,
        lambda j: hom_from_free(cech.level(j), p),
        lambda j: hom_map_source(cech.system.transition(j), p).between(system.level(j + 1), system.level(j)),
        name=f"Hom(C{sequence}^•,{p.name})",
    )
    return system
