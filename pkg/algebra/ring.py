from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from loguru import logger
from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.groebnertools import groebner
from sympy.polys.monomials import monomial_divides
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from algebra.parsing import parse_polynomial
from constants.errors import GradingError, ZeroRingError

_ORDERS = {"grevlex": grevlex, "lex": lex}


@dataclass(frozen=True)
class CoefficientField:
    """ℚ when characteristic is 0, otherwise the prime field 𝔽_p."""

    characteristic: int = 0

    def __post_init__(self):
        if self.characteristic != 0 and not isprime(self.characteristic):
            raise ValueError(f"{self.characteristic} is not prime")

    @property
    def domain(self):
        return QQ if self.characteristic == 0 else GF(self.characteristic)

    @classmethod
    def parse(cls, text: str) -> "CoefficientField":
        text = text.strip()
        if text in ("QQ", "Q", "0"):
            return cls(0)
        if text.startswith("GF(") and text.endswith(")"):
            return cls(int(text[3:-1]))
        raise ValueError(f"unknown coefficient field {text!r}; expected QQ or GF(p)")

    def __str__(self) -> str:
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


PolyLike = Union[PolyElement, str, int]


def poly_key(f: PolyElement) -> Tuple:
    """Order-independent hashable text form of a polynomial."""
    return tuple(sorted((m, str(c)) for m, c in f.items()))


class RingPresentation:
    """A = k[x_1..x_n]/I with I stored as a reduced Gröbner basis.

    Elements are sympy PolyElements kept in normal form modulo I. When weights are
    given A is positively graded and every quotient generator must be homogeneous.
    """

    def __init__(
        self,
        field: CoefficientField,
        variables: Sequence[str],
        quotient: Iterable[PolyLike] = (),
        weights: Optional[Sequence[int]] = None,
        order: str = "grevlex",
    ):
        variables = tuple(variables)
        if not variables:
            raise ValueError("a ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable in {variables}")
        if order not in _ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        self.field = field
        self.variables = variables
        self.order_name = order
        self.poly_ring = PolyRing(variables, field.domain, _ORDERS[order])
        self.domain = field.domain
        self.order = self.poly_ring.order

        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != len(variables) or any(w <= 0 for w in weights):
                raise GradingError(f"weights {weights} must be positive, one per variable")
        self.weights = weights

        generators = [g for g in (self.coerce(q, reduce=False) for q in quotient) if g]
        if weights is not None:
            for g in generators:
                if not self.is_homogeneous(g):
                    raise GradingError(f"quotient generator {g.as_expr()} is not homogeneous")
        self.ideal_basis: Tuple[PolyElement, ...] = (
            tuple(groebner(generators, self.poly_ring)) if generators else ()
        )
        if any(g.is_ground for g in self.ideal_basis):
            raise ZeroRingError(f"the ideal {[str(g.as_expr()) for g in generators]} contains 1")
        self._leading = tuple(g.LM for g in self.ideal_basis)
        self.key = (
            field.characteristic,
            variables,
            weights,
            order,
            tuple(sorted(poly_key(g) for g in self.ideal_basis)),
        )
        self._standard: Dict[int, Tuple[Tuple[int, ...], ...]] = {}
        logger.trace(f"Built ring {self}")

    # ---------------------------------
    # Elements.
    # ---------------------------------

    @property
    def zero(self) -> PolyElement:
        return self.poly_ring.zero

    @property
    def one(self) -> PolyElement:
        return self.poly_ring.one

    @property
    def gens(self) -> Tuple[PolyElement, ...]:
        return tuple(self.poly_ring.gens)

    @property
    def is_graded(self) -> bool:
        return self.weights is not None

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.ideal_basis

    def var(self, name: str) -> PolyElement:
        return self.poly_ring.gens[self.variables.index(name)]

    def reduce(self, f: PolyElement) -> PolyElement:
        if not f or not self.ideal_basis:
            return f
        return f.rem(list(self.ideal_basis))

    def coerce(self, f: PolyLike, reduce: bool = True) -> PolyElement:
        if isinstance(f, PolyElement) and f.ring == self.poly_ring:
            element = f
        elif isinstance(f, str):
            element = parse_polynomial(f, self.poly_ring)
        elif isinstance(f, PolyElement):
            element = self.poly_ring.from_expr(f.as_expr())
        else:
            element = self.poly_ring(f)
        return self.reduce(element) if reduce else element

    def parse(self, text: str) -> PolyElement:
        return self.coerce(text)

    def constant(self, c) -> PolyElement:
        return self.poly_ring.ground_new(self.domain.convert(c))

    def is_unit_constant(self, f: PolyElement) -> bool:
        return bool(f) and f.is_ground

    def contains_one(self, generators: Sequence[PolyElement]) -> bool:
        gens = [g for g in generators if g] + list(self.ideal_basis)
        if not gens:
            return False
        return any(g.is_ground for g in groebner(gens, self.poly_ring))

    # ---------------------------------
    # Grading.
    # ---------------------------------

    def monomial_degree(self, monom: Tuple[int, ...]) -> int:
        if self.weights is None:
            return sum(monom)
        return sum(w * e for w, e in zip(self.weights, monom))

    def is_homogeneous(self, f: PolyElement) -> bool:
        degrees = {self.monomial_degree(m) for m in f.itermonoms()}
        return len(degrees) <= 1

    def degree(self, f: PolyElement) -> Optional[int]:
        """Weighted degree of a homogeneous element, None for zero.

        Raises:
            GradingError: If the ring is ungraded or f is not homogeneous.
        """
        self.require_graded()
        if not f:
            return None
        if not self.is_homogeneous(f):
            raise GradingError(f"{f.as_expr()} is not homogeneous")
        return self.monomial_degree(next(iter(f.itermonoms())))

    def require_graded(self):
        if self.weights is None:
            raise GradingError(f"{self} carries no grading; pass weights to use graded operations")

    def standard_monomials(self, d: int) -> Tuple[Tuple[int, ...], ...]:
        """Monomials of weighted degree d outside the leading-term ideal of I, a k-basis of A_d."""
        self.require_graded()
        if d < 0:
            return ()
        if d not in self._standard:
            found = [
                m
                for m in _exponents_of_degree(self.weights, d)
                if not any(monomial_divides(lead, m) for lead in self._leading)
            ]
            found.sort(key=self.order, reverse=True)
            self._standard[d] = tuple(found)
        return self._standard[d]

    def hilbert_function(self, degrees: Iterable[int]) -> Dict[int, int]:
        return {d: len(self.standard_monomials(d)) for d in degrees}

    def monomial(self, monom: Tuple[int, ...]) -> PolyElement:
        return self.poly_ring({monom: self.domain.one})

    # ---------------------------------
    # Identity.
    # ---------------------------------

    def with_variable(self, name: str) -> "RingPresentation":
        """The polynomial ring over this ring's field with one extra variable, ungraded."""
        if name in self.variables:
            raise ValueError(f"variable {name!r} already exists")
        return RingPresentation(self.field, self.variables + (name,), order=self.order_name)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingPresentation) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        quotient = ", ".join(str(g.as_expr()) for g in self.ideal_basis)
        ring = f"{self.field}[{', '.join(self.variables)}]"
        return f"{ring}/({quotient})" if quotient else ring


@lru_cache(maxsize=None)
def _exponents_of_degree(weights: Tuple[int, ...], d: int) -> Tuple[Tuple[int, ...], ...]:
    if not weights:
        return ((),) if d == 0 else ()
    head, rest = weights[0], weights[1:]
    out = []
    for e in range(d // head + 1):
        for tail in _exponents_of_degree(rest, d - e * head):
            out.append((e,) + tail)
    return tuple(out)


class ElementSequence:
    """A finite sequence 𝒂 = (a_1..a_n) of ring elements; power(i) is 𝒂^i = (a_1^i..a_n^i).

    weights fixes the internal degree of each entry, which a zero entry cannot carry
    by itself: over ℚ[x]/(x²) the power x^2 vanishes but keeps degree 2.
    """

    def __init__(self, ring: RingPresentation, elements: Sequence[PolyLike], weights: Optional[Sequence[int]] = None):
        if not elements:
            raise ValueError("a sequence needs at least one element")
        self.ring = ring
        self.elements: Tuple[PolyElement, ...] = tuple(ring.coerce(a) for a in elements)
        if weights is not None and len(weights) != len(self.elements):
            raise ValueError(f"expected {len(self.elements)} weights, got {len(weights)}")
        self.weights: Optional[Tuple[int, ...]] = None if weights is None else tuple(weights)
        self._powers: Dict[int, "ElementSequence"] = {1: self}

    @property
    def n(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> PolyElement:
        return self.elements[i]

    def power(self, i: int) -> "ElementSequence":
        if i < 1:
            raise ValueError(f"power must be at least 1, got {i}")
        if i not in self._powers:
            weights = [i * w for w in self.degrees()] if self.is_homogeneous() else None
            self._powers[i] = ElementSequence(self.ring, [self.ring.reduce(a**i) for a in self.elements], weights)
        return self._powers[i]

    def degrees(self) -> Tuple[int, ...]:
        """Weighted degrees of the entries; zero entries without a fixed weight get degree 0."""
        if self.weights is not None:
            return self.weights
        out = []
        for a in self.elements:
            d = self.ring.degree(a)
            out.append(0 if d is None else d)
        return tuple(out)

    def is_homogeneous(self) -> bool:
        return self.ring.is_graded and all(self.ring.is_homogeneous(a) for a in self.elements)

    def product(self, indices: Iterable[int], exponent: int = 1) -> PolyElement:
        out = self.ring.one
        for i in indices:
            out = self.ring.reduce(out * self.elements[i] ** exponent)
        return out

    @property
    def key(self) -> Tuple:
        return (self.ring.key, tuple(poly_key(a) for a in self.elements))

    def __eq__(self, other) -> bool:
        return isinstance(other, ElementSequence) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"({', '.join(str(a.as_expr()) for a in self.elements)})"


class RingMap:
    """A k-algebra map f: A → B given by the images of A's variables.

    Raises:
        ValueError: If the fields differ, the arity is wrong, or a generator of A's ideal is not killed.
    """

    def __init__(self, source: RingPresentation, target: RingPresentation, images: Sequence[PolyLike]):
        if source.field != target.field:
            raise ValueError(f"ring map between {source.field} and {target.field}")
        if len(images) != len(source.variables):
            raise ValueError(f"expected {len(source.variables)} images, got {len(images)}")
        self.source = source
        self.target = target
        self.images: Tuple[PolyElement, ...] = tuple(target.coerce(f) for f in images)
        for g in source.ideal_basis:
            if self(g):
                raise ValueError(f"{g.as_expr()} does not map to zero in {target}")

    def __call__(self, f: PolyElement) -> PolyElement:
        out = self.target.zero
        for monom, coeff in f.terms():
            term = self.target.poly_ring.ground_new(self.target.domain.convert(coeff, self.source.domain))
            for image, e in zip(self.images, monom):
                if e:
                    term = term * image**e
            out += term
        return self.target.reduce(out)

    def apply_sequence(self, sequence: ElementSequence) -> ElementSequence:
        weights = sequence.degrees() if self.is_graded() and sequence.is_homogeneous() else None
        return ElementSequence(self.target, [self(a) for a in sequence], weights)

    def is_graded(self) -> bool:
        if not (self.source.is_graded and self.target.is_graded):
            return False
        for w, image in zip(self.source.weights, self.images):
            if image and (not self.target.is_homogeneous(image) or self.target.degree(image) != w):
                return False
        return True

    @classmethod
    def identity(cls, ring: RingPresentation) -> "RingMap":
        return cls(ring, ring, list(ring.gens))


def polynomial_ring(variables: Sequence[str], field: CoefficientField = CoefficientField(), **kwargs) -> RingPresentation:
    return RingPresentation(field, variables, **kwargs)


def standard_grading(variables: Sequence[str]) -> List[int]:
    return [1] * len(variables)
