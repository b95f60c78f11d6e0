"""Per-internal-degree cohomology of graded complexes as finite-dimensional linear algebra.

Every computation runs on the minimal model of the complex, which has the same
graded cohomology and far smaller slices.
"""

from dataclasses import dataclass
from typing import List

from algebra import linalg
from algebra.graded import ModuleSlice
from algebra.linalg import SparseVector
from complexes.complex import Complex, ComplexMap
from complexes.reduction import minimize
from constants.errors import GradingError


def _model(x: Complex) -> Complex:
    if not x.is_graded:
        raise GradingError(f"graded cohomology of {x!r}, which carries no internal degrees")
    return minimize(x).reduced


def _slice(x: Complex, k: int, d: int) -> ModuleSlice:
    key = ("slice", k, d)
    if key not in x.cache:
        x.cache[key] = ModuleSlice(x.module(k), d)
    return x.cache[key]


def _cycles(x: Complex, k: int, d: int) -> List[SparseVector]:
    key = ("cycles", k, d)
    if key in x.cache:
        return x.cache[key]
    here, there = _slice(x, k, d), _slice(x, k + 1, d)
    images = here.image_vectors(x.d(k).matrix, there) if there.ambient_dimension else []
    if not there.ambient_dimension:
        cycles = [{i: here.domain.one} for i in range(here.ambient_dimension)]
    else:
        columns = images + there.relation_vectors()
        kernel = linalg.solve_kernel(columns, there.ambient_dimension, here.domain)
        cycles = []
        for vector in kernel:
            part = {i: c for i, c in vector.items() if i < len(images)}
            if part:
                cycles.append(part)
    x.cache[key] = cycles
    return cycles


def _boundaries(x: Complex, k: int, d: int) -> List[SparseVector]:
    key = ("boundaries", k, d)
    if key in x.cache:
        return x.cache[key]
    here, before = _slice(x, k, d), _slice(x, k - 1, d)
    vectors = list(here.relation_vectors())
    if before.ambient_dimension and here.ambient_dimension:
        vectors.extend(before.image_vectors(x.d(k - 1).matrix, here))
    basis = linalg.row_basis(vectors, here.ambient_dimension, here.domain)
    x.cache[key] = basis
    return basis


def graded_cohomology_dimension(x: Complex, k: int, d: int) -> int:
    """dim_k H^k(X)_d."""
    model = _model(x)
    here = _slice(model, k, d)
    if not here.ambient_dimension:
        return 0
    cycles = _cycles(model, k, d)
    boundaries = _boundaries(model, k, d)
    return linalg.rank(cycles + boundaries, here.ambient_dimension, here.domain) - len(boundaries)


@dataclass(frozen=True)
class GradedMapCell:
    """H^k(φ)_d: source and target dimensions and the rank of the induced map."""

    k: int
    d: int
    source_dimension: int
    target_dimension: int
    rank: int

    @property
    def is_isomorphism(self) -> bool:
        return self.source_dimension == self.rank == self.target_dimension

    @property
    def is_injective(self) -> bool:
        return self.rank == self.source_dimension

    @property
    def is_surjective(self) -> bool:
        return self.rank == self.target_dimension

    @property
    def is_zero(self) -> bool:
        return self.rank == 0


def graded_map_cell(phi: ComplexMap, k: int, d: int) -> GradedMapCell:
    """Rank of H^k(φ)_d, computed on the minimal models of source and target."""
    source_model = _model(phi.source)
    target_model = _model(phi.target)
    source_dim = graded_cohomology_dimension(phi.source, k, d)
    target_dim = graded_cohomology_dimension(phi.target, k, d)
    if not source_dim or not target_dim:
        return GradedMapCell(k, d, source_dim, target_dim, 0)
    into = minimize(phi.source).inclusion.at(k).matrix
    out = minimize(phi.target).projection.at(k).matrix
    matrix = out @ phi.at(k).matrix @ into
    here = _slice(source_model, k, d)
    there = _slice(target_model, k, d)
    images = here.image_vectors(matrix, there)
    mapped = [linalg.combine(images, z, there.domain) for z in _cycles(source_model, k, d)]
    boundaries = _boundaries(target_model, k, d)
    rank = linalg.rank(boundaries + mapped, there.ambient_dimension, there.domain) - len(boundaries)
    return GradedMapCell(k, d, source_dim, target_dim, rank)
