from typing import Dict, List, Sequence, Tuple

from sympy.polys.monomials import monomial_mul
from sympy.polys.rings import PolyElement

from algebra import linalg
from algebra.linalg import SparseVector
from algebra.matrix import PolyMatrix
from algebra.modules import FpModule
from algebra.ring import RingMap
from constants.errors import GradingError


class ModuleSlice:
    """The degree-d piece of a graded finitely presented module as k-vector spaces.

    The ambient space is (A^g)_d with basis pairs (generator r, standard monomial of
    degree d - deg e_r). Relations contribute every standard-monomial multiple of
    every relation column that lands in degree d.
    """

    def __init__(self, module: FpModule, d: int):
        if module.degrees is None:
            raise GradingError("graded slice of an ungraded module")
        self.module = module
        self.d = d
        ring = module.ring
        self.domain = ring.domain
        self.basis: List[Tuple[int, Tuple[int, ...]]] = [
            (r, m) for r, e in enumerate(module.degrees) for m in ring.standard_monomials(d - e)
        ]
        self.index: Dict[Tuple[int, Tuple[int, ...]], int] = {b: i for i, b in enumerate(self.basis)}
        self._relations = None

    @property
    def ambient_dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, vector: Sequence[PolyElement]) -> SparseVector:
        """Coordinates of a homogeneous degree-d vector of A^g in normal form."""
        out: SparseVector = {}
        for r, f in enumerate(vector):
            for m, c in f.items():
                try:
                    out[self.index[(r, m)]] = c
                except KeyError:
                    raise GradingError(f"vector component {f.as_expr()} is not of degree {self.d}")
        return out

    def element(self, coordinates: SparseVector) -> Tuple[PolyElement, ...]:
        ring = self.module.ring
        parts: List[Dict] = [{} for _ in range(self.module.rank)]
        for i, c in coordinates.items():
            r, m = self.basis[i]
            parts[r][m] = c
        return tuple(ring.poly_ring.from_dict(p) if p else ring.zero for p in parts)

    def multiples(self, columns: Sequence[Sequence[PolyElement]]) -> List[SparseVector]:
        """Coordinates of every standard-monomial multiple of the columns landing in degree d."""
        ring = self.module.ring
        out = []
        for column in columns:
            degree = self.module.column_degree(column)
            if degree is None:
                continue
            for m in ring.standard_monomials(self.d - degree):
                shifted = tuple(ring.reduce(_times_monomial(f, m)) for f in column)
                coordinates = self.coordinates(shifted)
                if coordinates:
                    out.append(coordinates)
        return out

    def relation_vectors(self) -> List[SparseVector]:
        if self._relations is None:
            self._relations = linalg.row_basis(
                self.multiples(self.module.relations.columns), self.ambient_dimension, self.domain
            )
        return self._relations

    @property
    def dimension(self) -> int:
        return self.ambient_dimension - len(self.relation_vectors())

    def quotient_basis(self) -> List[int]:
        """Ambient positions whose classes form a k-basis of M_d: the non-pivots of the echelon relations."""
        pivots = {min(row) for row in self.relation_vectors()}
        return [i for i in range(self.ambient_dimension) if i not in pivots]

    def reduce(self, coordinates: SparseVector) -> SparseVector:
        """Normal form modulo the relations; the result is supported on quotient_basis()."""
        out = dict(coordinates)
        for row in self.relation_vectors():
            pivot = min(row)
            c = out.get(pivot)
            if c:
                out = linalg.combine([out, row], {0: self.domain.one, 1: -self.domain.quo(c, row[pivot])}, self.domain)
        return out

    def image_vectors(self, matrix: PolyMatrix, target: "ModuleSlice") -> List[SparseVector]:
        """Coordinates in target of the image of each ambient basis vector under matrix."""
        ring = self.module.ring
        out = []
        for r, m in self.basis:
            column = matrix.columns[r]
            image = tuple(ring.reduce(_times_monomial(f, m)) for f in column)
            out.append(target.coordinates(image))
        return out


def _times_monomial(f: PolyElement, monom: Tuple[int, ...]) -> PolyElement:
    if not f:
        return f
    return f.ring.from_dict({monomial_mul(m, monom): c for m, c in f.items()})


def map_rank(matrix: PolyMatrix, source: ModuleSlice, target: ModuleSlice) -> int:
    """Rank of the induced k-linear map source_d → target_d."""
    images = source.image_vectors(matrix, target)
    relations = target.relation_vectors()
    dim = target.ambient_dimension
    return linalg.rank(relations + images, dim, target.domain) - len(relations)


def restrict_truncated(f: RingMap, m: FpModule, ceiling: int) -> FpModule:
    """M / M_{>ceiling} as a module over the source of f.

    Generators are a k-basis of each M_d for d ≤ ceiling, in degree d; each relation
    reads x_t·e = f(x_t)·e written in that basis. The result agrees with the
    restriction of M in every internal degree up to the ceiling.

    Raises:
        GradingError: If f or M is not graded.
    """
    if not f.is_graded():
        raise GradingError(f"restriction along an ungraded ring map {f.source} → {f.target}")
    if m.degrees is None:
        raise GradingError("restriction of an ungraded module")
    source, target = f.source, f.target
    if not m.rank or min(m.degrees) > ceiling:
        return FpModule.zero(source)
    slices: Dict[int, ModuleSlice] = {}
    # (d, ambient position) -> generator number over the source ring.
    numbering: Dict[Tuple[int, int], int] = {}
    degrees: List[int] = []
    for d in range(min(m.degrees), ceiling + 1):
        slices[d] = ModuleSlice(m, d)
        for i in slices[d].quotient_basis():
            numbering[(d, i)] = len(degrees)
            degrees.append(d)
    columns = []
    for (d, i), g in numbering.items():
        r, monom = slices[d].basis[i]
        for t, image in enumerate(f.images):
            column = [source.zero] * len(degrees)
            column[g] = source.gens[t]
            e = d + source.weights[t]
            if image and e <= ceiling:
                vector = [target.zero] * m.rank
                vector[r] = target.reduce(image * target.monomial(monom))
                for j, c in slices[e].reduce(slices[e].coordinates(vector)).items():
                    column[numbering[(e, j)]] = source.constant(-c)
            columns.append(column)
    relations = PolyMatrix(source, len(degrees), columns)
    return FpModule(source, len(degrees), relations, tuple(degrees))
