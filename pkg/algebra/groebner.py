"""Gröbner bases of submodules of free modules over a RingPresentation.

Vectors are dicts {(position, monomial): coefficient}. Terms are compared position
first with the lower position leading, then by the ring's monomial order. The
quotient ideal enters as the extra generators q·e_i, so every result is a
statement about modules over A = k[x]/I rather than over k[x].
"""

import heapq
import itertools
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.monomials import monomial_div, monomial_divides, monomial_lcm, monomial_mul
from sympy.polys.rings import PolyElement

from algebra.cache import GROEBNER_CACHE
from algebra.ring import RingPresentation, poly_key

Term = Tuple[int, Tuple[int, ...]]
Vector = Dict[Term, object]
Column = Sequence[PolyElement]


def column_key(column: Column) -> Tuple:
    return tuple(poly_key(f) for f in column)


class SubmoduleBasis:
    """Reduced Gröbner basis of the submodule of A^rank spanned by columns.

    With track=True each column c_j is extended to [c_j; e_j]. Basis elements
    whose lead position is at least rank then have a zero top part and their
    bottom part is a syzygy of the columns; every syzygy modulo I arises this
    way. Basis elements leading below rank form a basis of the span itself.
    """

    def __init__(self, ring: RingPresentation, rank: int, columns: Sequence[Column], track: bool = False):
        self.ring = ring
        self.rank = rank
        self.columns = [tuple(c) for c in columns]
        for c in self.columns:
            if len(c) != rank:
                raise ValueError(f"column of length {len(c)} in a module of rank {rank}")
        self.track = track
        self.width = rank + (len(self.columns) if track else 0)
        self._order = ring.order
        self._zero_monom = (0,) * len(ring.variables)
        self._one = ring.domain.one

        inputs: List[Vector] = []
        for j, column in enumerate(self.columns):
            v = self._to_terms(column)
            if track:
                v[(rank + j, self._zero_monom)] = self._one
            if v:
                inputs.append(v)
        for q in ring.ideal_basis:
            for pos in range(self.width):
                inputs.append({(pos, m): c for m, c in q.items()})

        self.elements: List[Vector] = self._buchberger(inputs)
        self._leads: List[Term] = [self._lead(g) for g in self.elements]
        self._by_position: Dict[int, List[int]] = {}
        for i, lead in enumerate(self._leads):
            self._by_position.setdefault(lead[0], []).append(i)
        logger.trace(f"Gröbner basis of {len(self.columns)} columns in rank {rank}: {len(self.elements)} elements")

    @classmethod
    def of(cls, ring: RingPresentation, rank: int, columns: Sequence[Column], track: bool = False) -> "SubmoduleBasis":
        """Cached constructor."""
        key = ("submodule", ring.key, rank, tuple(column_key(c) for c in columns), track)
        return GROEBNER_CACHE.get_or_compute(key, lambda: cls(ring, rank, columns, track))

    # ---------------------------------
    # Vector arithmetic.
    # ---------------------------------

    def _to_terms(self, column: Column) -> Vector:
        v: Vector = {}
        for pos, f in enumerate(column):
            for m, c in f.items():
                v[(pos, m)] = c
        return v

    def _from_terms(self, v: Vector, start: int, stop: int) -> List[PolyElement]:
        parts: List[Dict] = [{} for _ in range(stop - start)]
        for (pos, m), c in v.items():
            if start <= pos < stop:
                parts[pos - start][m] = c
        return [self.ring.poly_ring.from_dict(p) if p else self.ring.zero for p in parts]

    def _term_key(self, term: Term):
        return (-term[0], self._order(term[1]))

    def _lead(self, v: Vector) -> Term:
        return max(v, key=self._term_key)

    def _monic(self, v: Vector) -> Vector:
        lc = v[self._lead(v)]
        if lc == self._one:
            return v
        inverse = self._one / lc
        return {t: c * inverse for t, c in v.items()}

    @staticmethod
    def _subtract_multiple(v: Vector, g: Vector, monom: Tuple[int, ...], coeff) -> None:
        for (pos, m), c in g.items():
            key = (pos, monomial_mul(m, monom))
            value = v[key] - coeff * c if key in v else -coeff * c
            if value:
                v[key] = value
            else:
                v.pop(key, None)

    def _reduce_with(self, v: Vector, basis: List[Vector], by_position: Dict[int, List[int]], leads: List[Term]) -> Vector:
        """Full reduction of v; returns a new vector in normal form."""
        v = dict(v)
        remainder: Vector = {}
        while v:
            term = self._lead(v)
            coeff = v[term]
            pos, monom = term
            for i in by_position.get(pos, ()):
                quotient = monomial_div(monom, leads[i][1])
                if quotient is not None:
                    self._subtract_multiple(v, basis[i], quotient, coeff)
                    break
            else:
                remainder[term] = coeff
                del v[term]
        return remainder

    # ---------------------------------
    # Buchberger.
    # ---------------------------------

    def _buchberger(self, inputs: List[Vector]) -> List[Vector]:
        basis: List[Vector] = []
        leads: List[Term] = []
        by_position: Dict[int, List[int]] = {}
        pairs: List[Tuple[int, int, int, int]] = []
        processed = set()
        counter = itertools.count()

        def add(v: Vector):
            v = self._monic(v)
            lead = self._lead(v)
            k = len(basis)
            for i in by_position.get(lead[0], ()):
                lcm = monomial_lcm(leads[i][1], lead[1])
                heapq.heappush(pairs, (sum(lcm), next(counter), i, k))
            basis.append(v)
            leads.append(lead)
            by_position.setdefault(lead[0], []).append(k)

        for v in inputs:
            r = self._reduce_with(v, basis, by_position, leads)
            if r:
                add(r)

        while pairs:
            _, _, i, j = heapq.heappop(pairs)
            processed.add((i, j))
            pos = leads[i][0]
            lcm = monomial_lcm(leads[i][1], leads[j][1])
            if self._chain_criterion(i, j, pos, lcm, leads, by_position, processed):
                continue
            s = dict()
            self._subtract_multiple(s, basis[i], monomial_div(lcm, leads[i][1]), -self._one)
            self._subtract_multiple(s, basis[j], monomial_div(lcm, leads[j][1]), self._one)
            r = self._reduce_with(s, basis, by_position, leads)
            if r:
                add(r)

        return self._interreduce(basis, leads)

    @staticmethod
    def _chain_criterion(i, j, pos, lcm, leads, by_position, processed) -> bool:
        for k in by_position.get(pos, ()):
            if k in (i, j) or not monomial_divides(leads[k][1], lcm):
                continue
            if (min(i, k), max(i, k)) in processed and (min(j, k), max(j, k)) in processed:
                return True
        return False

    def _interreduce(self, basis: List[Vector], leads: List[Term]) -> List[Vector]:
        keep = []
        for i, lead in enumerate(leads):
            redundant = False
            for k, other in enumerate(leads):
                if k == i or other[0] != lead[0] or not monomial_divides(other[1], lead[1]):
                    continue
                if other != lead or k < i:
                    redundant = True
                    break
            if not redundant:
                keep.append(i)
        minimal = [basis[i] for i in keep]
        minimal_leads = [leads[i] for i in keep]
        reduced = []
        for idx, g in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1 :]
            other_leads = minimal_leads[:idx] + minimal_leads[idx + 1 :]
            by_position: Dict[int, List[int]] = {}
            for k, lead in enumerate(other_leads):
                by_position.setdefault(lead[0], []).append(k)
            reduced.append(self._monic(self._reduce_with(g, others, by_position, other_leads)))
        reduced.sort(key=lambda v: self._term_key(self._lead(v)), reverse=True)
        return reduced

    # ---------------------------------
    # Queries.
    # ---------------------------------

    def normal_form(self, column: Column) -> List[PolyElement]:
        """Normal form of a vector of A^rank modulo the span."""
        v = self._reduce_with(self._to_terms(column), self.elements, self._by_position, self._leads)
        return self._from_terms(v, 0, self.rank)

    def contains(self, column: Column) -> bool:
        v = self._reduce_with(self._to_terms(column), self.elements, self._by_position, self._leads)
        return not any(pos < self.rank for pos, _ in v)

    def lift(self, column: Column) -> Optional[List[PolyElement]]:
        """Coefficients λ with Σ λ_j c_j = column, or None when column is outside the span."""
        if not self.track:
            raise ValueError("lift needs a basis built with track=True")
        v = self._reduce_with(self._to_terms(column), self.elements, self._by_position, self._leads)
        if any(pos < self.rank for pos, _ in v):
            return None
        return [self.ring.reduce(-f) for f in self._from_terms(v, self.rank, self.width)]

    def syzygies(self) -> List[List[PolyElement]]:
        """Generators of the syzygy module of the columns over A, zero syzygies dropped."""
        if not self.track:
            raise ValueError("syzygies need a basis built with track=True")
        out = []
        for g, lead in zip(self.elements, self._leads):
            if lead[0] < self.rank:
                continue
            syzygy = [self.ring.reduce(f) for f in self._from_terms(g, self.rank, self.width)]
            if any(syzygy):
                out.append(syzygy)
        return out

    def basis_columns(self) -> List[List[PolyElement]]:
        return [
            self._from_terms(g, 0, self.rank) for g, lead in zip(self.elements, self._leads) if lead[0] < self.rank
        ]

    def leading_terms(self) -> List[Term]:
        return [lead for lead in self._leads if lead[0] < self.rank]


def syzygies(ring: RingPresentation, rank: int, columns: Sequence[Column]) -> List[List[PolyElement]]:
    return SubmoduleBasis.of(ring, rank, columns, track=True).syzygies()


def span_contains(ring: RingPresentation, rank: int, columns: Sequence[Column], column: Column) -> bool:
    return SubmoduleBasis.of(ring, rank, columns).contains(column)
