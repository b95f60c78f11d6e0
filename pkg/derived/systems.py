"""Level realizations of RΓ_𝔞 and LΛ_𝔞 with their canonical morphisms."""

from typing import Dict, Optional, Tuple, Union

from loguru import logger

from algebra.ideals import TorsionSubmodule, torsion_submodule
from algebra.modules import FpModule
from algebra.ring import ElementSequence
from complexes.cohomology import cohomology, cohomology_range, is_quasi_iso
from complexes.complex import Complex, ComplexMap
from complexes.levels import DIRECT, LevelSystem
from complexes.operations import hom_map_source, shift, tensor, tensor_unitor, tensor_with_identity
from complexes.resolution import FreeResolution, default_resolution_length, free_resolution
from constants.errors import ComplexError
from koszul.tower import DualKoszulSystem
from telescope.completion import CompletionTower, as_complex
from telescope.maps import TelTowerMap, u_map


def cohomology_bounds(x: Complex) -> Optional[Tuple[int, int]]:
    """(inf H(X), sup H(X)), None when X is acyclic."""
    nonzero = [k for k in cohomology_range(x) if not cohomology(x, k).is_zero()]
    if not nonzero:
        return None
    return min(nonzero), max(nonzero)


def _vanishes_outside(x: Complex, low: int, high: int, floor: Optional[int] = None) -> bool:
    for k in cohomology_range(x):
        if floor is not None and k < floor:
            continue
        if not low <= k <= high and not cohomology(x, k).is_zero():
            return False
    return True


class RGammaSystem:
    """The direct system K^∨(𝒂^j) ⊗ M with σ_j = e^∨_j ⊗ 1: K^∨(𝒂^j) ⊗ M → M.

    K^∨(𝒂^j) is free, so the tensor computes the derived tensor for any M.
    """

    def __init__(self, m: Union[FpModule, Complex], sequence: ElementSequence, top: int):
        self.sequence = sequence
        self.top = top
        self.module = as_complex(m)
        self.duals = DualKoszulSystem(sequence, top)
        self._torsion: Optional[TorsionSubmodule] = None
        self._sigma: Dict[int, ComplexMap] = {}
        self.system: LevelSystem[Complex] = LevelSystem(
            DIRECT,
            1,
            top,
            lambda j: tensor(self.duals.level(j), self.module),
            lambda j: tensor_with_identity(self.duals.transition(j), self.module).between(self.level(j), self.level(j + 1)),
            name=f"RΓ{sequence}",
        )

    def level(self, j: int) -> Complex:
        return self.system.level(j)

    def transition(self, j: int) -> ComplexMap:
        return self.system.transition(j)

    def sigma(self, j: int) -> ComplexMap:
        """σ_j: K^∨(𝒂^j) ⊗ M → A ⊗ M ≅ M."""
        if j not in self._sigma:
            augmentation = tensor_with_identity(self.duals.augmentation(j), self.module)
            self._sigma[j] = tensor_unitor(self.module).compose(augmentation).between(self.level(j), self.module)
        return self._sigma[j]

    # ---------------------------------
    # v and the triangle with σ.
    # ---------------------------------

    def torsion(self) -> TorsionSubmodule:
        if self._torsion is None:
            if self.module.degrees != (0,):
                raise ComplexError("the v-map is defined for a module in degree 0")
            self._torsion = torsion_submodule(self.module.module(0), self.sequence)
        return self._torsion

    def torsion_inclusion(self) -> ComplexMap:
        torsion = self.torsion()
        return ComplexMap(Complex.concentrated(torsion.module), self.module, {0: torsion.inclusion.matrix}, check=False)

    def v_map(self, j: int) -> ComplexMap:
        """v_j: Γ_𝔞(M) → K^∨(𝒂^j) ⊗ M, m ↦ 1^∨ ⊗ m; a chain map once 𝒂^j kills Γ_𝔞(M).

        Raises:
            ValueError: If j lies below the level at which the torsion submodule stabilized.
        """
        torsion = self.torsion()
        if j < torsion.level:
            raise ValueError(f"v_{j} needs j ≥ {torsion.level}, where 𝔞^j kills the torsion submodule")
        # In degree 0 the level is K^∨(𝒂^j)^0 ⊗ M with K^∨(𝒂^j)^0 of rank one.
        return ComplexMap(Complex.concentrated(torsion.module), self.level(j), {0: torsion.inclusion.matrix})

    def triangle_holds(self, j: int) -> bool:
        """σ_j ∘ v_j equals the inclusion Γ_𝔞(M) ⊂ M."""
        return self.sigma(j).compose(self.v_map(j)).equals(self.torsion_inclusion())

    def bounds_hold(self, j: int) -> bool:
        """H^k(level j) = 0 outside [inf H(M), sup H(M) + n]."""
        bounds = cohomology_bounds(self.module)
        if bounds is None:
            return _vanishes_outside(self.level(j), 0, -1)
        return _vanishes_outside(self.level(j), bounds[0], bounds[1] + self.sequence.n)


def rgamma(m: Union[FpModule, Complex], sequence: ElementSequence, top: int) -> RGammaSystem:
    system = RGammaSystem(m, sequence, top)
    logger.debug(f"RΓ along {sequence} of {system.module!r} up to level {top}")
    return system


def free_model(m: Union[FpModule, Complex], length: Optional[int], n: int) -> Tuple[Complex, Optional[FreeResolution], int]:
    """A complex of free modules standing in for M, its resolution when one was needed, and its degree.

    Raises:
        ComplexError: If M has non-free components in more than one degree.
    """
    x = as_complex(m)
    if x.is_free:
        return x, None, 0
    if len(x.degrees) != 1:
        raise ComplexError("only single modules are resolved; pass a complex of free modules otherwise")
    (degree,) = x.degrees
    length = default_resolution_length(n) if length is None else length
    resolution = free_resolution(x.module(degree), length)
    p = resolution.complex if degree == 0 else shift(resolution.complex, -degree)
    return p, resolution, degree


class LLambdaTower:
    """The inverse system Hom(Tel_j, P) ≅ Tel_j^∨ ⊗ P for a free model P of M.

    Attributes:
        free: the free model P (M itself when M is a complex of free modules).
        resolution: the resolution used, None when M was free.
        tel: the comparison tel_j: Hom(Tel_j, P) → A/(𝒂^j) ⊗ P and the completion tower of P.
    """

    def __init__(self, m: Union[FpModule, Complex], sequence: ElementSequence, top: int, length: Optional[int] = None):
        self.sequence = sequence
        self.top = top
        self.module = as_complex(m)
        self.free, self.resolution, self._degree = free_model(m, length, sequence.n)
        self.tel = TelTowerMap(sequence, self.free, top)
        self.system: LevelSystem[Complex] = self.tel.source

    @property
    def completion(self) -> CompletionTower:
        return self.tel.tower

    @property
    def graded_system(self) -> "LevelSystem[Complex]":
        """Levels A/(𝒂^j) ⊗ P, isomorphic in cohomology to the tower levels."""
        return self.completion.system

    def level(self, j: int) -> Complex:
        return self.system.level(j)

    def tau(self, j: int) -> ComplexMap:
        """τ_j = Hom(u_j, 1_P): P = Hom(A, P) → Hom(Tel_j, P)."""
        u = u_map(self.sequence, j, self.tel.telescopes.telescope(j))
        return hom_map_source(u, self.free).between(self.free, self.level(j))

    def xi(self, j: int) -> ComplexMap:
        return self.tel.at(j)

    def xi_holds(self, j: int) -> bool:
        return is_quasi_iso(self.xi(j)).holds

    def u_compatible(self, j: int) -> bool:
        """tel_j ∘ τ_j equals the canonical map P → A/(𝒂^j) ⊗ P."""
        return self.xi(j).compose(self.tau(j)).equals(self.completion.tau(j))

    @property
    def floor(self) -> Optional[int]:
        """Lowest cohomological degree whose cohomology the truncated resolution still computes."""
        if self.resolution is None:
            return None
        floor = self.resolution.floor(0)
        return None if floor is None else floor + self._degree

    def check(self, k: int):
        """Raises ValidityWindowError below the validity floor."""
        if self.resolution is not None:
            self.resolution.check(k - self._degree, 0)

    def cohomology(self, j: int, k: int) -> FpModule:
        self.check(k)
        return cohomology(self.level(j), k)

    def bounds_hold(self, j: int) -> bool:
        """H^k(level j) = 0 outside [inf H(M) - n, sup H(M)] above the validity floor."""
        bounds = cohomology_bounds(self.module)
        if bounds is None:
            return _vanishes_outside(self.level(j), 0, -1, self.floor)
        return _vanishes_outside(self.level(j), bounds[0] - self.sequence.n, bounds[1], self.floor)


def llambda(m: Union[FpModule, Complex], sequence: ElementSequence, top: int, length: Optional[int] = None) -> LLambdaTower:
    tower = LLambdaTower(m, sequence, top, length)
    if tower.resolution is not None:
        logger.debug(
            f"LΛ along {sequence}: resolution of length {tower.resolution.length}, "
            f"truncated={tower.resolution.truncated}, validity floor {tower.floor}"
        )
    return tower
