"""Comparison maps out of the telescope: w, u and the completion map tel."""

from functools import reduce
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from loguru import logger
from sympy.polys.rings import PolyElement

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule
from algebra.ring import ElementSequence, RingPresentation
from complexes.complex import Complex, ComplexMap
from complexes.levels import INVERSE, LevelSystem
from complexes.operations import hom_from_free, hom_map_source, label_matching_map, tensor_map
from constants.errors import ArityError
from koszul.tower import dual_koszul, koszul_augmentation, single_koszul
from telescope.completion import CompletionTower, as_complex, completion_tower
from telescope.telescope import TelescopeComplex, TelescopeSystem, single_telescope, telescope


def modified_power(ring: RingPresentation, a: PolyElement, i: int) -> PolyElement:
    """p(a, 0) = 1, p(a, 1) = -1 and p(a, i) = -a^{i-1} for i ≥ 2."""
    if i < 0:
        raise ValueError(f"modified power needs i ≥ 0, got {i}")
    if i == 0:
        return ring.one
    if i == 1:
        return -ring.one
    return ring.reduce(-(a ** (i - 1)))


def modified_product(sequence: ElementSequence, indices: Sequence[int]) -> PolyElement:
    """p(a_1, i_1)···p(a_n, i_n).

    Raises:
        ArityError: If the index tuple does not have one entry per element of the sequence.
    """
    if len(indices) != sequence.n:
        raise ArityError(f"index {tuple(indices)} has arity {len(indices)}, the sequence has {sequence.n} elements")
    ring = sequence.ring
    out = ring.one
    for a, i in zip(sequence.elements, indices):
        out = ring.reduce(out * modified_power(ring, a, i))
    return out


# ---------------------------------
# w and u.
# ---------------------------------


def _single_w(ring: RingPresentation, a, j: int, weight: Optional[int]) -> ComplexMap:
    source = single_telescope(ring, a, j, weight)
    target = hom_from_free(single_koszul(ring, ring.reduce(a**j), None if weight is None else j * weight), Complex.unit(ring))
    degree0 = PolyMatrix(ring, 1, [(ring.one,)] + [(ring.zero,)] * j)
    degree1 = PolyMatrix(ring, 1, [(ring.reduce(a ** (j - i)),) for i in range(j + 1)])
    return ComplexMap(source, target, {0: degree0, 1: degree1}, check=False)


def w_map(sequence: ElementSequence, j: int, tel: Optional[TelescopeComplex] = None) -> ComplexMap:
    """w_j: Tel_j(A; 𝒂) → K^∨(A; 𝒂^j), with w^0(δ_i) = [i = 0] and w^1(δ_i) = a^{j-i} per factor."""
    tel = tel or telescope(sequence, j)
    weights = list(sequence.degrees()) if sequence.is_homogeneous() else None
    ring = sequence.ring
    singles = [_single_w(ring, a, j, None if weights is None else weights[t]) for t, a in enumerate(sequence.elements)]
    product = reduce(tensor_map, singles)
    target = dual_koszul(sequence.power(j))
    matching = label_matching_map(product.target, target)
    return matching.compose(product).between(tel.complex, target)


def dual_augmentation(sequence: ElementSequence, j: int, dual: Optional[Complex] = None) -> ComplexMap:
    """e^∨_j: K^∨(A; 𝒂^j) → A."""
    unit = Complex.unit(sequence.ring)
    dual = dual or dual_koszul(sequence.power(j))
    return hom_map_source(koszul_augmentation(sequence.power(j)), unit).between(dual, unit)


def u_map(sequence: ElementSequence, j: int, tel: Optional[TelescopeComplex] = None) -> ComplexMap:
    """u_j = e^∨_j ∘ w_j: Tel_j → A; δ_0⊗...⊗δ_0 ↦ 1, every other generator to 0."""
    w = w_map(sequence, j, tel)
    return dual_augmentation(sequence, j, w.target).compose(w)


# ---------------------------------
# tel.
# ---------------------------------


def _degree_zero_values(tel: TelescopeComplex) -> list:
    return [
        modified_product(tel.sequence, [i for _, i in tel.indices(0, position)])
        for position in range(tel.complex.rank(0))
    ]


def tel_level_map(sequence: ElementSequence, j: int, tel: Optional[TelescopeComplex] = None) -> ComplexMap:
    """tel_j: Tel_j^∨ → A/(𝒂^j), sending the dual of δ_{i_1}⊗...⊗δ_{i_n} to p(a_1, i_1)···p(a_n, i_n).

    Raises:
        ComplexError: If the result does not commute with the differentials.
    """
    tel = tel or telescope(sequence, j)
    ring = sequence.ring
    source = hom_from_free(tel.complex, Complex.unit(ring))
    target = Complex.concentrated(FpModule.cyclic(ring, sequence.power(j).elements))
    matrix = PolyMatrix(ring, 1, [(v,) for v in _degree_zero_values(tel)])
    return ComplexMap(source, target, {0: matrix})


def _tel_with_module(tel: TelescopeComplex, m: Complex, target: Complex) -> ComplexMap:
    """tel_j ⊗ 1_M on Hom(Tel_j, M) ≅ Tel_j^∨ ⊗ M; only the Tel-degree-0 block contributes."""
    ring = tel.sequence.ring
    source = hom_from_free(tel.complex, m)
    values = _degree_zero_values(tel)
    maps = {}
    for k in m.degrees:
        nn = m.rank(k)
        # Tel degrees are 0..n, so the Tel-degree-0 block comes first in every Hom degree.
        entries = {(g, t * nn + g): v for t, v in enumerate(values) if v for g in range(nn)}
        maps[k] = PolyMatrix.from_entries(ring, target.rank(k), source.rank(k), entries)
    return ComplexMap(source, target, maps)


class TelTowerMap:
    """The family tel_{𝒂,M,j}: Hom(Tel_j, M) → A/(𝒂^j) ⊗ M over j = 1..J.

    The sources form the inverse system with transitions Hom(Tel_j ⊂ Tel_{j+1}, 1_M)
    and the targets form the completion tower of M.
    """

    def __init__(self, sequence: ElementSequence, m: Union[FpModule, Complex], top: int):
        self.sequence = sequence
        self.module = as_complex(m)
        self.top = top
        self.telescopes = TelescopeSystem(sequence, top)
        self.tower: CompletionTower = completion_tower(sequence, self.module, top)
        self._maps: Dict[int, ComplexMap] = {}
        self.source: LevelSystem[Complex] = LevelSystem(
            INVERSE,
            1,
            top,
            lambda j: self.at(j).source,
            lambda j: hom_map_source(self.telescopes.system.transition(j), self.module).between(
                self.source.level(j + 1), self.source.level(j)
            ),
            name=f"Hom(Tel{sequence}, M)",
        )

    def at(self, j: int) -> ComplexMap:
        if j not in self._maps:
            self._maps[j] = _tel_with_module(self.telescopes.telescope(j), self.module, self.tower.level(j))
        return self._maps[j]

    def commutes(self, j: int) -> bool:
        """tel_j ∘ Hom(inclusion, 1) = (transition of the tower) ∘ tel_{j+1}."""
        left = self.at(j).compose(self.source.transition(j))
        right = self.tower.system.transition(j).compose(self.at(j + 1))
        return left.equals(right)

    def hom_element(self, j: int, f: Mapping[Tuple[int, ...], Sequence]) -> Tuple[PolyElement, ...]:
        """The degree-0 element of Hom(Tel_j, M) given by a finitely supported f: ℕ^n → M^0."""
        tel = self.telescopes.telescope(j)
        ring = self.sequence.ring
        nn = self.module.rank(0)
        vector = [ring.zero] * self.at(j).source.rank(0)
        for indices, value in f.items():
            if len(indices) != self.sequence.n:
                raise ArityError(f"index {tuple(indices)} has arity {len(indices)}, the sequence has {self.sequence.n} elements")
            if max(indices) > j:
                raise ValueError(f"index {tuple(indices)} lies outside Tel_{j}")
            t = tel.position(0, indices)
            for g, c in enumerate(_as_vector(ring, value, nn)):
                vector[t * nn + g] = ring.reduce(vector[t * nn + g] + c)
        return tuple(vector)


def _as_vector(ring: RingPresentation, value, rank: int) -> Tuple[PolyElement, ...]:
    if isinstance(value, (list, tuple)):
        if len(value) != rank:
            raise ValueError(f"value of length {len(value)} for a module on {rank} generators")
        return tuple(ring.coerce(c) for c in value)
    if rank != 1:
        raise ValueError(f"scalar value for a module on {rank} generators")
    return (ring.coerce(value),)


def tel_on_module(sequence: ElementSequence, m: Union[FpModule, Complex], top: int) -> TelTowerMap:
    logger.debug(f"tel tower map for {sequence} up to level {top}")
    return TelTowerMap(sequence, m, top)


def tel_eval(sequence: ElementSequence, f: Mapping[Tuple[int, ...], Sequence], m: FpModule, top: int) -> Dict[int, Tuple[PolyElement, ...]]:
    """Σ p(a_1, i_1)···p(a_n, i_n) f(i_1..i_n), reduced in M/(𝒂^j)M for j = 1..J.

    Raises:
        ArityError: If some index of f does not have one entry per element of the sequence.
    """
    ring = sequence.ring
    total = [ring.zero] * m.rank
    for indices, value in f.items():
        coefficient = modified_product(sequence, indices)
        for g, c in enumerate(_as_vector(ring, value, m.rank)):
            total[g] = ring.reduce(total[g] + coefficient * c)
    tower = completion_tower(sequence, m, top)
    return {j: tower.level(j).module(0).normal_form(total) for j in range(1, top + 1)}
