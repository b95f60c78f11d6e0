"""Elements of A[s^{-1}] at bounded denominator exponent."""

from typing import Optional

from sympy.polys.rings import PolyElement

from algebra.groebner import SubmoduleBasis
from algebra.ring import PolyLike, RingPresentation
from constants import DEFAULT_LIMITS


class LocalizedElement:
    """numerator / base^exponent in A[base^{-1}].

    Equality and vanishing are decided by saturating with base^m for m up to the
    cap; in a noetherian ring the annihilator chain of base stabilizes, so a cap
    past the stabilization level decides exactly.
    """

    def __init__(self, ring: RingPresentation, base: PolyLike, numerator: PolyLike, exponent: int, cap: Optional[int] = None):
        if exponent < 0:
            raise ValueError(f"negative denominator exponent {exponent}")
        self.ring = ring
        self.base: PolyElement = ring.coerce(base)
        self.numerator: PolyElement = ring.coerce(numerator)
        self.exponent = exponent
        self.cap = DEFAULT_LIMITS.saturation_factor * max(exponent, 1) if cap is None else cap

    def _saturated(self, f: PolyElement, cap: int) -> PolyElement:
        return self.ring.reduce(f * self.base**cap)

    def is_zero(self) -> bool:
        # base^m f = 0 for some m ≤ cap iff base^cap f = 0.
        return not self._saturated(self.numerator, self.cap)

    def _check_base(self, other: "LocalizedElement"):
        if self.ring != other.ring or self.base != other.base:
            raise ValueError(f"{self!r} and {other!r} live in different localizations")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalizedElement):
            return NotImplemented
        self._check_base(other)
        cross = self.numerator * self.base**other.exponent - other.numerator * self.base**self.exponent
        return not self._saturated(cross, max(self.cap, other.cap))

    def __add__(self, other: "LocalizedElement") -> "LocalizedElement":
        self._check_base(other)
        k, l = self.exponent, other.exponent
        numerator = self.numerator * self.base**l + other.numerator * self.base**k
        return LocalizedElement(self.ring, self.base, self.ring.reduce(numerator), k + l, max(self.cap, other.cap))

    def __mul__(self, other: "LocalizedElement") -> "LocalizedElement":
        self._check_base(other)
        numerator = self.ring.reduce(self.numerator * other.numerator)
        return LocalizedElement(self.ring, self.base, numerator, self.exponent + other.exponent, max(self.cap, other.cap))

    def __neg__(self) -> "LocalizedElement":
        return LocalizedElement(self.ring, self.base, -self.numerator, self.exponent, self.cap)

    def restrict(self, cofactor: PolyLike) -> "LocalizedElement":
        """The image in A[(base·cofactor)^{-1}]: u/s^k = u·c^k / (s·c)^k."""
        c = self.ring.coerce(cofactor)
        numerator = self.ring.reduce(self.numerator * c**self.exponent)
        return LocalizedElement(self.ring, self.ring.reduce(self.base * c), numerator, self.exponent, self.cap)

    def normalized(self) -> "LocalizedElement":
        """An equal element with the least exponent reachable within the saturation cap."""
        ring, s, cap = self.ring, self.base, self.cap
        saturated = self._saturated(self.numerator, cap)
        if not saturated:
            return LocalizedElement(ring, s, ring.zero, 0, cap)
        for exponent in range(self.exponent + 1):
            # s^cap·u = c·s^{k - k' + cap} gives u/s^k = c/s^{k'}.
            divisor = ring.reduce(s ** (self.exponent - exponent + cap))
            if not divisor:
                continue
            coefficients = SubmoduleBasis.of(ring, 1, [(divisor,)], track=True).lift((saturated,))
            if coefficients is not None:
                return LocalizedElement(ring, s, coefficients[0], exponent, cap)
        return self

    def __repr__(self) -> str:
        return f"({self.numerator.as_expr()})/({self.base.as_expr()})^{self.exponent}"


def localized(ring: RingPresentation, base: PolyLike, numerator: PolyLike, exponent: int, cap: Optional[int] = None) -> LocalizedElement:
    return LocalizedElement(ring, base, numerator, exponent, cap)
