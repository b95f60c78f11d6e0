from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from loguru import logger

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule
from complexes.complex import Complex, ComplexMap


class _SparseMatrix:
    """Mutable sparse matrix over the ring, indexed by stable generator ids."""

    def __init__(self, ring, rows, cols):
        self.ring = ring
        self.rows: Dict[int, Dict[int, object]] = {r: {} for r in rows}
        self.cols: Dict[int, Dict[int, object]] = {c: {} for c in cols}

    @classmethod
    def of(cls, matrix: PolyMatrix) -> "_SparseMatrix":
        sparse = cls(matrix.ring, range(matrix.nrows), range(matrix.ncols))
        for j, column in enumerate(matrix.columns):
            for i, f in enumerate(column):
                if f:
                    sparse.set(i, j, f)
        return sparse

    @classmethod
    def identity(cls, ring, n: int) -> "_SparseMatrix":
        sparse = cls(ring, range(n), range(n))
        for i in range(n):
            sparse.set(i, i, ring.one)
        return sparse

    def get(self, i, j):
        return self.rows[i].get(j)

    def set(self, i, j, f):
        f = self.ring.reduce(f)
        if f:
            self.rows[i][j] = f
            self.cols[j][i] = f
        else:
            self.rows[i].pop(j, None)
            self.cols[j].pop(i, None)

    def drop_row(self, i):
        for j in self.rows.pop(i):
            del self.cols[j][i]

    def drop_col(self, j):
        for i in self.cols.pop(j):
            del self.rows[i][j]

    def add_row_multiple(self, target, source, factor):
        """row[target] += factor · row[source]."""
        for j, f in list(self.rows[source].items()):
            self.set(target, j, self.rows[target].get(j, self.ring.zero) + factor * f)

    def add_col_multiple(self, target, source, factor):
        """col[target] += factor · col[source]."""
        for i, f in list(self.cols[source].items()):
            self.set(i, target, self.cols[target].get(i, self.ring.zero) + factor * f)

    def to_matrix(self, row_order, col_order) -> PolyMatrix:
        row_index = {r: n for n, r in enumerate(row_order)}
        columns = []
        for c in col_order:
            column = [self.ring.zero] * len(row_order)
            for r, f in self.cols[c].items():
                column[row_index[r]] = f
            columns.append(column)
        return PolyMatrix(self.ring, len(row_order), columns, reduce=False)


@dataclass(frozen=True)
class Reduction:
    """A homotopy equivalence X ≃ X' onto a smaller free complex.

    projection: X → X' and inclusion: X' → X are chain maps with
    projection ∘ inclusion = 1 on X'.
    """

    original: Complex
    reduced: Complex
    projection: ComplexMap
    inclusion: ComplexMap


def minimize(x: Complex) -> Reduction:
    """Gaussian elimination of constant unit entries of the differentials.

    An entry α = d^k[r, c] cancels the generators e_c of X^k and e_r of X^{k+1}:
    d'^k = δ - γα⁻¹β on the remaining generators, and the neighbouring
    differentials are restricted. Complexes with non-free components are returned unchanged.
    """
    if "reduction" in x.cache:
        return x.cache["reduction"]
    if not x.is_free:
        identity = ComplexMap.identity(x)
        result = Reduction(x, x, identity, identity)
        x.cache["reduction"] = result
        return result
    ring = x.ring
    degrees = list(x.degrees)
    alive: Dict[int, List[int]] = {k: list(range(x.rank(k))) for k in degrees}
    d = {k: _SparseMatrix.of(x.d(k).matrix) for k in degrees if k + 1 in alive}
    # projection^k: rows = surviving generators of X'^k, cols = generators of X^k.
    pi = {k: _SparseMatrix.identity(ring, x.rank(k)) for k in degrees}
    # inclusion^k: rows = generators of X^k, cols = surviving generators.
    iota = {k: _SparseMatrix.identity(ring, x.rank(k)) for k in degrees}

    eliminated = 0
    while True:
        pivot = _find_pivot(d)
        if pivot is None:
            break
        k, r, c = pivot
        dk = d[k]
        alpha = dk.get(r, c)
        inverse = ring.constant(ring.domain.one / alpha.LC)
        gamma = {i: f for i, f in dk.cols[c].items() if i != r}
        beta = {j: f for j, f in dk.rows[r].items() if j != c}
        for i, g in gamma.items():
            factor = -g * inverse
            for j, b in beta.items():
                dk.set(i, j, (dk.get(i, j) or ring.zero) + factor * b)
        dk.drop_row(r)
        dk.drop_col(c)
        if k - 1 in d:
            d[k - 1].drop_row(c)
        if k + 1 in d:
            d[k + 1].drop_col(r)
        # projection^{k+1}: row_i -= γ_i α⁻¹ row_r.
        for i, g in gamma.items():
            pi[k + 1].add_row_multiple(i, r, -g * inverse)
        pi[k + 1].drop_row(r)
        pi[k].drop_row(c)
        # inclusion^k: col_j -= α⁻¹ β_j col_c.
        for j, b in beta.items():
            iota[k].add_col_multiple(j, c, -b * inverse)
        iota[k].drop_col(c)
        iota[k + 1].drop_col(r)
        alive[k].remove(c)
        alive[k + 1].remove(r)
        eliminated += 1

    modules = {}
    for k in degrees:
        source = x.module(k)
        keep = alive[k]
        degrees_k = None if source.degrees is None else [source.degrees[i] for i in keep]
        modules[k] = FpModule.free(ring, len(keep), degrees_k, [source.labels[i] for i in keep])
    differentials = {k: d[k].to_matrix(alive[k + 1], alive[k]) for k in d}
    reduced = Complex(ring, modules, differentials, check=False, name=f"min({x.name})")
    projection = ComplexMap(
        x, reduced, {k: pi[k].to_matrix(alive[k], range(x.rank(k))) for k in degrees}, check=False
    )
    inclusion = ComplexMap(
        reduced, x, {k: iota[k].to_matrix(range(x.rank(k)), alive[k]) for k in degrees}, check=False
    )
    if eliminated:
        logger.trace(f"Minimized {x!r} to {reduced!r} ({eliminated} cancellations)")
    result = Reduction(x, reduced, projection, inclusion)
    x.cache["reduction"] = result
    return result


def _find_pivot(d: Dict[int, _SparseMatrix]) -> Optional[Tuple[int, int, int]]:
    """A unit entry with the fewest neighbours in its row and column, to limit fill-in."""
    best = None
    best_cost = None
    for k, matrix in d.items():
        for r, row in matrix.rows.items():
            for c, f in row.items():
                if f.is_ground:
                    cost = (len(row) - 1) * (len(matrix.cols[c]) - 1)
                    if best is None or cost < best_cost:
                        best, best_cost = (k, r, c), cost
                        if cost == 0:
                            return best
    return best
