"""The completion tower {A/(𝒂^j) ⊗ M}_j with its canonical maps τ_j: M → A/(𝒂^j) ⊗ M."""

from typing import Dict, Sequence, Union

from loguru import logger
from sympy.polys.rings import PolyElement

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule
from algebra.ring import ElementSequence
from complexes.complex import Complex, ComplexMap
from complexes.levels import INVERSE, LevelSystem


def as_complex(m: Union[FpModule, Complex]) -> Complex:
    return m if isinstance(m, Complex) else Complex.concentrated(m)


def quotient_complex(x: Complex, elements: Sequence[PolyElement]) -> Complex:
    """X / (f_1..f_r) X = A/(f) ⊗ X, degreewise quotients with the induced differentials."""
    modules = {k: x.module(k).quotient_by(elements) for k in x.degrees}
    differentials = {k: x.d(k).matrix for k in x.degrees}
    return Complex(x.ring, modules, differentials, check=False, name=f"{x.name}/{len(elements)}")


def _identity_map(source: Complex, target: Complex) -> ComplexMap:
    return ComplexMap(source, target, {k: PolyMatrix.identity(source.ring, source.rank(k)) for k in source.degrees}, check=False)


class CompletionTower:
    """Levels A/(𝒂^j) ⊗ M for j = 1..J with the canonical surjections as transitions.

    Cofinal with the 𝔞-adic tower since 𝔞^{jn} ⊂ (𝒂^j) ⊂ 𝔞^j.
    """

    def __init__(self, sequence: ElementSequence, m: Union[FpModule, Complex], top: int):
        if top < 1:
            raise ValueError(f"tower needs J ≥ 1, got {top}")
        self.sequence = sequence
        self.module = as_complex(m)
        self.top = top
        self._tau: Dict[int, ComplexMap] = {}
        self.system: LevelSystem[Complex] = LevelSystem(
            INVERSE,
            1,
            top,
            lambda j: quotient_complex(self.module, sequence.power(j).elements),
            lambda j: _identity_map(self.level(j + 1), self.level(j)),
            name=f"Λ{sequence}",
        )

    def level(self, j: int) -> Complex:
        return self.system.level(j)

    def tau(self, j: int) -> ComplexMap:
        """τ_j: M → A/(𝒂^j) ⊗ M."""
        if j not in self._tau:
            self._tau[j] = _identity_map(self.module, self.level(j))
        return self._tau[j]

    def graded_dimensions(self, j: int, k: int, window: Sequence[int]) -> Dict[int, int]:
        """dim_k (A/(𝒂^j) ⊗ M^k)_d for d in the window."""
        module = self.level(j).module(k)
        return {d: module.graded_dimension(d) for d in window}


def completion_tower(sequence: ElementSequence, m: Union[FpModule, Complex], top: int) -> CompletionTower:
    logger.debug(f"Completion tower of {as_complex(m)!r} along {sequence} up to level {top}")
    return CompletionTower(sequence, m, top)
