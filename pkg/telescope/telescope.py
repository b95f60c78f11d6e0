"""Truncated telescope complexes Tel_j(A; 𝒂) and their inclusions."""

from dataclasses import dataclass
from functools import reduce
from typing import Dict, Optional, Sequence, Tuple

from loguru import logger

from algebra.matrix import PolyMatrix, unit_vector
from algebra.modules import FpModule
from algebra.ring import ElementSequence, RingPresentation
from complexes.complex import Complex, ComplexMap
from complexes.levels import DIRECT, LevelSystem
from complexes.operations import label_matching_map, tensor

TEL = "tel"


def tel_atom(degree: int, i: int) -> Tuple:
    return (TEL, degree, i)


def single_telescope(ring: RingPresentation, a, j: int, weight: Optional[int]) -> Complex:
    """Tel_j(A; a): bases δ_0..δ_j in degrees 0 and 1, ∂δ_0 = δ_0 and ∂δ_i = δ_{i-1} - a·δ_i.

    With a of degree e, δ_i has internal degree -(i-1)e in degree 0 (δ_0 has 0) and -ie in degree 1.
    """
    if j < 1:
        raise ValueError(f"telescope level must be at least 1, got {j}")
    degrees0 = degrees1 = None
    if weight is not None:
        degrees0 = [0] + [-(i - 1) * weight for i in range(1, j + 1)]
        degrees1 = [-i * weight for i in range(j + 1)]
    modules = {
        0: FpModule.free(ring, j + 1, degrees0, [(tel_atom(0, i),) for i in range(j + 1)]),
        1: FpModule.free(ring, j + 1, degrees1, [(tel_atom(1, i),) for i in range(j + 1)]),
    }
    columns = [unit_vector(ring, j + 1, 0)]
    for i in range(1, j + 1):
        column = [ring.zero] * (j + 1)
        column[i - 1] = ring.one
        column[i] = ring.reduce(-a)
        columns.append(column)
    return Complex(ring, modules, {0: PolyMatrix(ring, j + 1, columns)}, check=False, name=f"Tel_{j}({a.as_expr()})")


@dataclass(frozen=True)
class TelescopeComplex:
    """Tel_j(A; 𝒂) = Tel_j(a_1) ⊗ ... ⊗ Tel_j(a_n), in degrees 0..n.

    A generator of degree k is labelled by one (tel, ε_t, i_t) atom per factor,
    with ε_t ∈ {0, 1} summing to k and 0 ≤ i_t ≤ j.
    """

    sequence: ElementSequence
    level: int
    complex: Complex

    def position(self, degree: int, indices: Sequence[int], parts: Optional[Sequence[int]] = None) -> int:
        """Index of the generator δ_{i_1} ⊗ ... ⊗ δ_{i_n} in the given degree.

        parts gives the factor degrees ε_t; by default the first `degree` factors sit in degree 1.
        """
        if parts is None:
            parts = [1 if t < degree else 0 for t in range(len(indices))]
        label = tuple(tel_atom(e, i) for e, i in zip(parts, indices))
        return self.complex.module(degree).labels.index(label)

    def indices(self, degree: int, position: int) -> Tuple[Tuple[int, int], ...]:
        """(ε_t, i_t) per factor of a generator."""
        return tuple((atom[1], atom[2]) for atom in self.complex.module(degree).labels[position])


def _weights(sequence: ElementSequence):
    return list(sequence.degrees()) if sequence.is_homogeneous() else None


def telescope(sequence: ElementSequence, j: int) -> TelescopeComplex:
    weights = _weights(sequence)
    factors = [
        single_telescope(sequence.ring, a, j, None if weights is None else weights[t])
        for t, a in enumerate(sequence.elements)
    ]
    result = reduce(tensor, factors)
    result.name = f"Tel_{j}{sequence}"
    logger.trace(f"Telescope {result.name} with ranks {result.rank_profile()}")
    return TelescopeComplex(sequence, j, result)


def tel_inclusion(source: TelescopeComplex, target: TelescopeComplex) -> ComplexMap:
    """Tel_j ⊂ Tel_j', basis vectors to same-named basis vectors."""
    if source.level > target.level:
        raise ValueError(f"inclusion needs j ≤ j', got {source.level} > {target.level}")
    return label_matching_map(source.complex, target.complex)


class TelescopeSystem:
    """The direct system {Tel_j}_{j=1..J} with its inclusions; its union is Tel(A; 𝒂)."""

    def __init__(self, sequence: ElementSequence, top: int):
        self.sequence = sequence
        self.top = top
        self._telescopes: Dict[int, TelescopeComplex] = {}
        self.system: LevelSystem[Complex] = LevelSystem(
            DIRECT,
            1,
            top,
            lambda j: self.telescope(j).complex,
            lambda j: tel_inclusion(self.telescope(j), self.telescope(j + 1)),
            name=f"Tel{sequence}",
        )

    def telescope(self, j: int) -> TelescopeComplex:
        if j not in self._telescopes:
            self._telescopes[j] = telescope(self.sequence, j)
        return self._telescopes[j]
