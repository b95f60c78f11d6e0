from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import RingPresentation
from constants.errors import ComplexError


class Complex:
    """A bounded cochain complex of finitely presented modules.

    Components outside the stored range are zero. d(k) is the differential
    X^k → X^{k+1}; d(k+1) ∘ d(k) = 0 is verified at construction unless check=False.
    """

    def __init__(
        self,
        ring: RingPresentation,
        modules: Mapping[int, FpModule],
        differentials: Mapping[int, Union[PolyMatrix, ModuleMap]] = None,
        check: bool = True,
        name: str = "",
    ):
        self.ring = ring
        self.name = name
        self._modules: Dict[int, FpModule] = {k: m for k, m in modules.items() if m.rank}
        self._zero = FpModule.zero(ring)
        self._differentials: Dict[int, ModuleMap] = {}
        for k, d in (differentials or {}).items():
            source, target = self.module(k), self.module(k + 1)
            if isinstance(d, PolyMatrix):
                if d.shape != (target.rank, source.rank):
                    raise ComplexError(f"d^{k} has shape {d.shape}, expected {(target.rank, source.rank)}")
                d = ModuleMap(source, target, d, check=check and not source.is_free)
            if source.rank and target.rank and not d.matrix.is_zero():
                self._differentials[k] = d
        # Cohomology and graded slices computed on demand; the complex itself never changes.
        self.cache: Dict = {}
        if check:
            self.verify()

    # ---------------------------------
    # Access.
    # ---------------------------------

    def module(self, k: int) -> FpModule:
        return self._modules.get(k, self._zero)

    def rank(self, k: int) -> int:
        return self.module(k).rank

    def d(self, k: int) -> ModuleMap:
        if k in self._differentials:
            return self._differentials[k]
        return ModuleMap.zero(self.module(k), self.module(k + 1))

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(self._modules))

    @property
    def support(self) -> Optional[Tuple[int, int]]:
        if not self._modules:
            return None
        return min(self._modules), max(self._modules)

    @property
    def is_free(self) -> bool:
        return all(m.is_free for m in self._modules.values())

    @property
    def is_graded(self) -> bool:
        return all(m.is_graded for m in self._modules.values())

    def rank_profile(self) -> Dict[int, int]:
        return {k: m.rank for k, m in sorted(self._modules.items())}

    def inf(self) -> Optional[int]:
        """Lowest degree with a nonzero component, None for the zero complex."""
        nonzero = [k for k, m in self._modules.items() if not m.is_zero()]
        return min(nonzero) if nonzero else None

    def sup(self) -> Optional[int]:
        nonzero = [k for k, m in self._modules.items() if not m.is_zero()]
        return max(nonzero) if nonzero else None

    def amp(self) -> Optional[int]:
        low, high = self.inf(), self.sup()
        return None if low is None else high - low

    def verify(self):
        """Raises ComplexError unless every composite d(k+1)∘d(k) is zero."""
        for k in self.degrees:
            if k in self._differentials and k + 1 in self._differentials:
                composite = self.d(k + 1).compose(self.d(k))
                if not composite.is_zero():
                    raise ComplexError(f"d^{k + 1} ∘ d^{k} is not zero in {self!r}")

    # ---------------------------------
    # Construction.
    # ---------------------------------

    @classmethod
    def zero(cls, ring: RingPresentation) -> "Complex":
        return cls(ring, {}, {}, check=False)

    @classmethod
    def concentrated(cls, module: FpModule, degree: int = 0) -> "Complex":
        return cls(module.ring, {degree: module}, {}, check=False)

    @classmethod
    def unit(cls, ring: RingPresentation) -> "Complex":
        """A in degree 0, with the empty label and internal degree 0."""
        degrees = (0,) if ring.is_graded else None
        return cls.concentrated(FpModule.free(ring, 1, degrees, [()]))

    def __repr__(self) -> str:
        profile = ", ".join(f"{k}: {r}" for k, r in self.rank_profile().items())
        return f"Complex({self.name or 'X'}; {{{profile}}})"


class ComplexMap:
    """A degree-preserving map of complexes, one ModuleMap per degree.

    Raises:
        ComplexError: If check is set and some square fails to commute.
    """

    def __init__(self, source: Complex, target: Complex, maps: Mapping[int, Union[PolyMatrix, ModuleMap]], check: bool = True):
        self.source = source
        self.target = target
        self.ring = source.ring
        self._maps: Dict[int, ModuleMap] = {}
        for k, f in maps.items():
            if isinstance(f, PolyMatrix):
                f = ModuleMap(source.module(k), target.module(k), f, check=check and not source.module(k).is_free)
            if f.source.rank and f.target.rank:
                self._maps[k] = f
        if check:
            self.verify()

    def at(self, k: int) -> ModuleMap:
        if k in self._maps:
            return self._maps[k]
        return ModuleMap.zero(self.source.module(k), self.target.module(k))

    def degrees(self) -> Tuple[int, ...]:
        ks = set(self.source.degrees) | set(self.target.degrees)
        return tuple(sorted(ks))

    def verify(self):
        for k in self.degrees():
            left = self.target.d(k).compose(self.at(k))
            right = self.at(k + 1).compose(self.source.d(k))
            if not left.equals(right):
                raise ComplexError(f"map of complexes does not commute with the differentials in degree {k}")

    def compose(self, other: "ComplexMap") -> "ComplexMap":
        """self ∘ other."""
        degrees = set(other.source.degrees)
        return ComplexMap(
            other.source, self.target, {k: self.at(k).compose(other.at(k)) for k in degrees}, check=False
        )

    def __add__(self, other: "ComplexMap") -> "ComplexMap":
        return ComplexMap(self.source, self.target, {k: self.at(k) + other.at(k) for k in self.degrees()}, check=False)

    def __neg__(self) -> "ComplexMap":
        return ComplexMap(self.source, self.target, {k: -self.at(k) for k in self.degrees()}, check=False)

    def __sub__(self, other: "ComplexMap") -> "ComplexMap":
        return self + (-other)

    def between(self, source: Complex, target: Complex) -> "ComplexMap":
        """The same matrices, re-attached to equal copies of the source and target."""
        return ComplexMap(source, target, {k: self.at(k).matrix for k in self.degrees()}, check=False)

    def is_zero(self) -> bool:
        return all(self.at(k).is_zero() for k in self.degrees())

    def equals(self, other: "ComplexMap") -> bool:
        return (self - other).is_zero()

    @classmethod
    def identity(cls, complex_: Complex) -> "ComplexMap":
        return cls(complex_, complex_, {k: ModuleMap.identity(complex_.module(k)) for k in complex_.degrees}, check=False)

    @classmethod
    def zero(cls, source: Complex, target: Complex) -> "ComplexMap":
        return cls(source, target, {}, check=False)

    def __repr__(self) -> str:
        return f"ComplexMap({self.source!r} → {self.target!r})"


def complex_from_matrices(
    ring: RingPresentation,
    ranks: Mapping[int, int],
    matrices: Mapping[int, Sequence] = None,
    degrees: Mapping[int, Sequence[int]] = None,
    name: str = "",
) -> Complex:
    """A complex of free modules from ranks and differential matrices given as rows."""
    modules = {}
    for k, r in ranks.items():
        gens_degrees = None if degrees is None else degrees.get(k)
        if gens_degrees is None and ring.is_graded:
            gens_degrees = [0] * r
        labels = [(("b", k, i),) for i in range(r)]
        modules[k] = FpModule.free(ring, r, gens_degrees, labels)
    differentials = {}
    for k, rows in (matrices or {}).items():
        differentials[k] = PolyMatrix.from_rows(ring, rows, ncols=ranks.get(k, 0)) if rows else PolyMatrix.zero(
            ring, ranks.get(k + 1, 0), ranks.get(k, 0)
        )
    logger.trace(f"Built free complex {name or ''} with ranks {dict(ranks)}")
    return Complex(ring, modules, differentials, name=name)
