from typing import Iterable, List, Sequence, Tuple

from sympy.polys.rings import PolyElement

from algebra.ring import RingPresentation, poly_key


class PolyMatrix:
    """An nrows × ncols matrix over a RingPresentation, stored as columns in normal form."""

    __slots__ = ("ring", "nrows", "columns")

    def __init__(self, ring: RingPresentation, nrows: int, columns: Iterable[Sequence[PolyElement]], reduce: bool = True):
        self.ring = ring
        self.nrows = nrows
        cols = []
        for column in columns:
            column = tuple(ring.reduce(f) if reduce else f for f in column)
            if len(column) != nrows:
                raise ValueError(f"column of length {len(column)} in a matrix with {nrows} rows")
            cols.append(column)
        self.columns: Tuple[Tuple[PolyElement, ...], ...] = tuple(cols)

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    @classmethod
    def zero(cls, ring: RingPresentation, nrows: int, ncols: int) -> "PolyMatrix":
        return cls(ring, nrows, [(ring.zero,) * nrows for _ in range(ncols)], reduce=False)

    @classmethod
    def identity(cls, ring: RingPresentation, n: int) -> "PolyMatrix":
        return cls.diagonal(ring, [ring.one] * n)

    @classmethod
    def diagonal(cls, ring: RingPresentation, entries: Sequence[PolyElement]) -> "PolyMatrix":
        n = len(entries)
        return cls(ring, n, [tuple(entries[j] if i == j else ring.zero for i in range(n)) for j in range(n)])

    @classmethod
    def from_rows(cls, ring: RingPresentation, rows: Sequence[Sequence], ncols: int = None) -> "PolyMatrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        rows = [[ring.coerce(f) for f in row] for row in rows]
        return cls(ring, len(rows), [tuple(row[j] for row in rows) for j in range(ncols)], reduce=False)

    @classmethod
    def from_entries(cls, ring: RingPresentation, nrows: int, ncols: int, entries: dict) -> "PolyMatrix":
        """Builds a matrix from a sparse {(row, col): element} dict."""
        cols = [[ring.zero] * nrows for _ in range(ncols)]
        for (i, j), f in entries.items():
            cols[j][i] = cols[j][i] + f
        return cls(ring, nrows, cols)

    def entry(self, i: int, j: int) -> PolyElement:
        return self.columns[j][i]

    def rows(self) -> List[Tuple[PolyElement, ...]]:
        return [tuple(col[i] for col in self.columns) for i in range(self.nrows)]

    def apply(self, vector: Sequence[PolyElement]) -> Tuple[PolyElement, ...]:
        if len(vector) != self.ncols:
            raise ValueError(f"vector of length {len(vector)} for a matrix with {self.ncols} columns")
        acc = [self.ring.zero] * self.nrows
        for c, column in zip(vector, self.columns):
            if not c:
                continue
            for i, f in enumerate(column):
                if f:
                    acc[i] = acc[i] + c * f
        return tuple(self.ring.reduce(f) for f in acc)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        return PolyMatrix(self.ring, self.nrows, [self.apply(col) for col in other.columns], reduce=False)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_shape(other)
        return PolyMatrix(
            self.ring, self.nrows, [tuple(f + g for f, g in zip(a, b)) for a, b in zip(self.columns, other.columns)]
        )

    def __neg__(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.nrows, [tuple(-f for f in col) for col in self.columns], reduce=False)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + (-other)

    def scale(self, c) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.nrows, [tuple(c * f for f in col) for col in self.columns])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.ncols, self.rows(), reduce=False)

    def select_rows(self, rows: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, len(rows), [tuple(col[i] for i in rows) for col in self.columns], reduce=False)

    def select_columns(self, cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(self.ring, self.nrows, [self.columns[j] for j in cols], reduce=False)

    def hstack(self, *others: "PolyMatrix") -> "PolyMatrix":
        columns = list(self.columns)
        for other in others:
            if other.nrows != self.nrows:
                raise ValueError(f"cannot place {other.shape} beside {self.shape}")
            columns.extend(other.columns)
        return PolyMatrix(self.ring, self.nrows, columns, reduce=False)

    def vstack(self, *others: "PolyMatrix") -> "PolyMatrix":
        for other in others:
            if other.ncols != self.ncols:
                raise ValueError(f"cannot place {other.shape} below {self.shape}")
        columns = []
        for j, col in enumerate(self.columns):
            for other in others:
                col = col + other.columns[j]
            columns.append(col)
        return PolyMatrix(self.ring, self.nrows + sum(o.nrows for o in others), columns, reduce=False)

    @classmethod
    def block_diagonal(cls, ring: RingPresentation, blocks: Sequence["PolyMatrix"]) -> "PolyMatrix":
        nrows = sum(b.nrows for b in blocks)
        columns = []
        offset = 0
        for b in blocks:
            for col in b.columns:
                columns.append((ring.zero,) * offset + col + (ring.zero,) * (nrows - offset - b.nrows))
            offset += b.nrows
        return cls(ring, nrows, columns, reduce=False)

    def is_zero(self) -> bool:
        return not any(f for col in self.columns for f in col)

    def nonzero_columns(self) -> List[Tuple[PolyElement, ...]]:
        return [col for col in self.columns if any(col)]

    def key(self) -> Tuple:
        return (self.nrows, tuple(tuple(poly_key(f) for f in col) for col in self.columns))

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.ring == other.ring and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def _check_shape(self, other: "PolyMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(str(f.as_expr()) for f in row) + "]" for row in self.rows()]
        return f"PolyMatrix({self.nrows}x{self.ncols}: {', '.join(rows)})"


def unit_vector(ring: RingPresentation, n: int, i: int) -> Tuple[PolyElement, ...]:
    return tuple(ring.one if k == i else ring.zero for k in range(n))
