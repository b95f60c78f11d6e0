"""Cochains of the level Čech complexes and their Alexander–Whitney product."""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from sympy.polys.rings import PolyElement

from algebra.ring import PolyLike
from cech.level import CechLevelComplex, CechTuple, cech_level
from cech.localized import LocalizedElement
from constants import DEFAULT_LIMITS
from constants.errors import CechMismatchError


@dataclass(frozen=True)
class Cochain:
    """A degree-p element of C_j: numerators u_I with value u_I / s_I^j on each (p+1)-tuple I."""

    level: CechLevelComplex
    degree: int
    numerators: Tuple[PolyElement, ...]

    def __post_init__(self):
        expected = len(self.level.tuples(self.degree))
        if len(self.numerators) != expected:
            raise ValueError(f"degree-{self.degree} cochain needs {expected} values, got {len(self.numerators)}")

    @classmethod
    def of(cls, level: CechLevelComplex, degree: int, numerators: Sequence[PolyLike]) -> "Cochain":
        ring = level.ring
        return cls(level, degree, tuple(ring.coerce(f) for f in numerators))

    @classmethod
    def unit(cls, level: CechLevelComplex) -> "Cochain":
        """The constant degree-0 cochain 1 = a_i^j / a_i^j."""
        ring = level.ring
        return cls(level, 0, tuple(ring.reduce(a**level.level) for a in level.sequence))

    @property
    def ring(self):
        return self.level.ring

    def numerator(self, index: CechTuple) -> PolyElement:
        if len(index) != self.degree + 1:
            return self.ring.zero
        return self.numerators[self.level.position(index)]

    def value(self, index: CechTuple, cap: int = None) -> LocalizedElement:
        cap = DEFAULT_LIMITS.saturation_factor * self.level.level if cap is None else cap
        return LocalizedElement(self.ring, self.level.base(index), self.numerator(index), self.level.level, cap)

    def coboundary(self) -> "Cochain":
        level = self.level
        if self.degree + 1 >= level.n:
            return Cochain(level, self.degree + 1, ())
        image = level.coboundary(self.degree).apply(self.numerators)
        return Cochain(level, self.degree + 1, tuple(image))

    def __add__(self, other: "Cochain") -> "Cochain":
        _require_same_level(self, other)
        if self.degree != other.degree:
            raise ValueError(f"cannot add cochains of degrees {self.degree} and {other.degree}")
        ring = self.ring
        return Cochain(self.level, self.degree, tuple(ring.reduce(f + g) for f, g in zip(self.numerators, other.numerators)))

    def scale(self, c: int) -> "Cochain":
        ring = self.ring
        return Cochain(self.level, self.degree, tuple(ring.reduce(f * c) for f in self.numerators))

    def equals(self, other: "Cochain") -> bool:
        """Equality of values in every A[s_I^{-1}], across levels when needed."""
        if self.level.sequence != other.level.sequence:
            raise CechMismatchError(f"cochains over {self.level.sequence} and {other.level.sequence}")
        if self.degree != other.degree:
            return False
        cap = DEFAULT_LIMITS.saturation_factor * max(self.level.level, other.level.level)
        return all(self.value(index, cap) == other.value(index, cap) for index in self.level.tuples(self.degree))

    def is_zero(self) -> bool:
        return all(self.value(index).is_zero() for index in self.level.tuples(self.degree))


def _require_same_level(f: Cochain, g: Cochain):
    if f.level.sequence != g.level.sequence or f.level.level != g.level.level:
        raise CechMismatchError(f"cochains on {f.level!r} and {g.level!r}")


def aw_product(f: Cochain, g: Cochain) -> Cochain:
    """(f·g)(i_0..i_{p+q}) = f(i_0..i_p) · g(i_p..i_{p+q}), a cochain of level 2j.

    With u/s_L^j · v/s_R^j = u·v·(s_I/s_L)^j·(s_I/s_R)^j / s_I^{2j}.

    Raises:
        CechMismatchError: If f and g do not live on the same level complex.
    """
    _require_same_level(f, g)
    source = f.level
    p, q = f.degree, g.degree
    target = cech_level(source.sequence, 2 * source.level)
    ring = source.ring
    j = source.level
    values = []
    for index in target.tuples(p + q):
        left, right = index[: p + 1], index[p:]
        cofactor_left = source.sequence.product(index[p + 1 :], j)
        cofactor_right = source.sequence.product(index[:p], j)
        values.append(ring.reduce(f.numerator(left) * g.numerator(right) * cofactor_left * cofactor_right))
    return Cochain(target, p + q, tuple(values))


def random_cochain(level: CechLevelComplex, degree: int, rng: np.random.Generator, terms: int = 2, max_exponent: int = 2) -> Cochain:
    """Numerators with a few random monomials and small integer coefficients."""
    ring = level.ring
    numerators = []
    for _ in level.tuples(degree):
        f = ring.zero
        for _ in range(terms):
            exponents = tuple(int(e) for e in rng.integers(0, max_exponent + 1, size=len(ring.variables)))
            f += ring.monomial(exponents) * int(rng.integers(-3, 4))
        numerators.append(ring.reduce(f))
    return Cochain(level, degree, tuple(numerators))
