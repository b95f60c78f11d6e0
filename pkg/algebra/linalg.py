"""Sparse linear algebra over the coefficient field, on top of sympy's SDM.

Vectors are dicts {index: coefficient} with no zero entries.
"""

from typing import Dict, List, Sequence

from sympy.polys.matrices.sdm import SDM

SparseVector = Dict[int, object]


def _rows_matrix(rows: Sequence[SparseVector], ncols: int, domain) -> SDM:
    return SDM({i: dict(r) for i, r in enumerate(rows) if r}, (len(rows), ncols), domain)


def rank(vectors: Sequence[SparseVector], dimension: int, domain) -> int:
    """Rank of the span of the vectors inside k^dimension."""
    vectors = [v for v in vectors if v]
    if not vectors or dimension == 0:
        return 0
    _, pivots = _rows_matrix(vectors, dimension, domain).rref()
    return len(pivots)


def row_basis(vectors: Sequence[SparseVector], dimension: int, domain) -> List[SparseVector]:
    """A reduced echelon basis of the span."""
    vectors = [v for v in vectors if v]
    if not vectors or dimension == 0:
        return []
    reduced, pivots = _rows_matrix(vectors, dimension, domain).rref()
    return [dict(reduced[i]) for i in range(len(pivots)) if i in reduced]


def solve_kernel(columns: Sequence[SparseVector], dimension: int, domain) -> List[SparseVector]:
    """Basis of {x : Σ x_j columns[j] = 0}, as sparse vectors indexed by column number."""
    n = len(columns)
    if n == 0:
        return []
    if dimension == 0 or not any(columns):
        return [{j: domain.one} for j in range(n)]
    rows: Dict[int, Dict[int, object]] = {}
    for j, column in enumerate(columns):
        for i, c in column.items():
            rows.setdefault(i, {})[j] = c
    matrix = SDM(rows, (dimension, n), domain)
    kernel, _ = matrix.nullspace()
    return [dict(kernel[i]) for i in sorted(kernel) if kernel[i]]


def combine(vectors: Sequence[SparseVector], coefficients: SparseVector, domain) -> SparseVector:
    out: SparseVector = {}
    for j, c in coefficients.items():
        for i, v in vectors[j].items():
            value = out.get(i, domain.zero) + c * v
            if value:
                out[i] = value
            else:
                out.pop(i, None)
    return out


def in_span(vectors: Sequence[SparseVector], vector: SparseVector, dimension: int, domain) -> bool:
    if not vector:
        return True
    return rank(list(vectors) + [vector], dimension, domain) == rank(vectors, dimension, domain)
