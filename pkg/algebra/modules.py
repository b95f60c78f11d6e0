from typing import Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from algebra.groebner import SubmoduleBasis
from algebra.matrix import PolyMatrix, unit_vector
from algebra.ring import RingPresentation
from constants.errors import GradingError, WellDefinednessError

Label = Tuple


class FpModule:
    """A finitely presented module coker(A^s → A^g) given by its relation columns.

    Generators may carry internal degrees (graded rings only) and labels. Labels are
    tuples of atoms used to match generators across tensor and Hom constructions.
    """

    def __init__(
        self,
        ring: RingPresentation,
        rank: int,
        relations: Optional[PolyMatrix] = None,
        degrees: Optional[Sequence[int]] = None,
        labels: Optional[Sequence[Label]] = None,
    ):
        if relations is None:
            relations = PolyMatrix.zero(ring, rank, 0)
        if relations.nrows != rank:
            raise ValueError(f"relations have {relations.nrows} rows for {rank} generators")
        self.ring = ring
        self.rank = rank
        self.relations = PolyMatrix(ring, rank, relations.nonzero_columns(), reduce=False)
        if degrees is not None:
            ring.require_graded()
            degrees = tuple(int(d) for d in degrees)
            if len(degrees) != rank:
                raise GradingError(f"{len(degrees)} degrees for {rank} generators")
        self.degrees: Optional[Tuple[int, ...]] = degrees
        if labels is None:
            labels = tuple((("gen", i),) for i in range(rank))
        self.labels: Tuple[Label, ...] = tuple(labels)
        if len(self.labels) != rank:
            raise ValueError(f"{len(self.labels)} labels for {rank} generators")
        if degrees is not None:
            for column in self.relations.columns:
                self.column_degree(column)

    # ---------------------------------
    # Construction.
    # ---------------------------------

    @classmethod
    def free(cls, ring: RingPresentation, rank: int, degrees=None, labels=None) -> "FpModule":
        return cls(ring, rank, None, degrees, labels)

    @classmethod
    def zero(cls, ring: RingPresentation) -> "FpModule":
        return cls(ring, 0, None, () if ring.is_graded else None, ())

    @classmethod
    def cyclic(cls, ring: RingPresentation, annihilators: Sequence, degree: Optional[int] = None) -> "FpModule":
        """A/(f_1..f_r) as a module on one generator."""
        elements = [ring.coerce(f) for f in annihilators]
        relations = PolyMatrix(ring, 1, [(f,) for f in elements])
        if degree is not None:
            degrees = (degree,)
        elif ring.is_graded and all(ring.is_homogeneous(f) for f in elements):
            degrees = (0,)
        else:
            degrees = None
        return cls(ring, 1, relations, degrees)

    def quotient_by(self, elements: Sequence[PolyElement]) -> "FpModule":
        """M / (f_1..f_r) M; the grading is dropped when some f_i is not homogeneous."""
        extra = [tuple(self.ring.reduce(f * e) for e in unit_vector(self.ring, self.rank, i)) for f in elements for i in range(self.rank)]
        relations = self.relations.hstack(PolyMatrix(self.ring, self.rank, extra))
        degrees = self.degrees
        if degrees is not None and not all(self.ring.is_homogeneous(f) for f in elements):
            degrees = None
        return FpModule(self.ring, self.rank, relations, degrees, self.labels)

    def with_labels(self, labels: Sequence[Label]) -> "FpModule":
        return FpModule(self.ring, self.rank, self.relations, self.degrees, labels)

    def with_degrees(self, degrees: Optional[Sequence[int]]) -> "FpModule":
        return FpModule(self.ring, self.rank, self.relations, degrees, self.labels)

    def shifted(self, d: int) -> "FpModule":
        """M(d): the same module with every generator degree lowered by d."""
        if self.degrees is None:
            return self
        return self.with_degrees([e - d for e in self.degrees])

    # ---------------------------------
    # Queries.
    # ---------------------------------

    @property
    def is_graded(self) -> bool:
        return self.degrees is not None

    @property
    def is_free(self) -> bool:
        return self.relations.ncols == 0

    def relation_basis(self) -> SubmoduleBasis:
        return SubmoduleBasis.of(self.ring, self.rank, self.relations.columns)

    def contains(self, vector: Sequence[PolyElement]) -> bool:
        """True when the vector of A^g lies in the relation span, i.e. is zero in M."""
        if not any(vector):
            return True
        return self.relation_basis().contains(vector)

    def normal_form(self, vector: Sequence[PolyElement]) -> Tuple[PolyElement, ...]:
        if self.is_free:
            return tuple(self.ring.reduce(f) for f in vector)
        return tuple(self.relation_basis().normal_form(vector))

    def is_zero(self) -> bool:
        return all(self.contains(unit_vector(self.ring, self.rank, i)) for i in range(self.rank))

    def column_degree(self, column: Sequence[PolyElement]) -> Optional[int]:
        """Internal degree of a homogeneous vector, None for zero.

        Raises:
            GradingError: If the module is ungraded or the vector is not homogeneous.
        """
        if self.degrees is None:
            raise GradingError("degree of a vector in an ungraded module")
        found = None
        for f, d in zip(column, self.degrees):
            if not f:
                continue
            for monom in f.itermonoms():
                degree = self.ring.monomial_degree(monom) + d
                if found is None:
                    found = degree
                elif degree != found:
                    raise GradingError(f"vector {[str(g.as_expr()) for g in column]} is not homogeneous")
        return found

    def graded_dimension(self, d: int) -> int:
        """dim_k M_d."""
        from algebra.graded import ModuleSlice

        return ModuleSlice(self, d).dimension

    def key(self) -> Tuple:
        return (self.ring.key, self.rank, self.relations.key(), self.degrees)

    def __repr__(self) -> str:
        if self.is_free:
            return f"FpModule(free rank {self.rank})"
        return f"FpModule(rank {self.rank}, {self.relations.ncols} relations)"


class ModuleMap:
    """A homomorphism M → N given by the images of M's generators as columns.

    Raises:
        WellDefinednessError: If a relation of M does not map into the relation span of N.
    """

    def __init__(self, source: FpModule, target: FpModule, matrix: PolyMatrix, check: bool = True):
        if matrix.shape != (target.rank, source.rank):
            raise ValueError(f"matrix of shape {matrix.shape} for a map of ranks {source.rank} → {target.rank}")
        self.source = source
        self.target = target
        self.matrix = matrix
        self.ring = source.ring
        if check:
            for column in source.relations.columns:
                if not target.contains(matrix.apply(column)):
                    raise WellDefinednessError(
                        f"relation {[str(f.as_expr()) for f in column]} does not map to zero in the target"
                    )

    @classmethod
    def identity(cls, module: FpModule) -> "ModuleMap":
        return cls(module, module, PolyMatrix.identity(module.ring, module.rank), check=False)

    @classmethod
    def zero(cls, source: FpModule, target: FpModule) -> "ModuleMap":
        return cls(source, target, PolyMatrix.zero(source.ring, target.rank, source.rank), check=False)

    def __call__(self, vector: Sequence[PolyElement]) -> Tuple[PolyElement, ...]:
        return self.matrix.apply(vector)

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other."""
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix, check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.source, self.target, -self.matrix, check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return self + (-other)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix.scale(c), check=False)

    def is_zero(self) -> bool:
        return all(self.target.contains(column) for column in self.matrix.columns)

    def equals(self, other: "ModuleMap") -> bool:
        return (self - other).is_zero()

    def degree(self) -> Optional[int]:
        """The internal degree shift of a graded map, None when every generator maps to zero.

        Raises:
            GradingError: If the map is not homogeneous.
        """
        found = None
        for j, column in enumerate(self.matrix.columns):
            d = self.target.column_degree(column)
            if d is None:
                continue
            shift = d - self.source.degrees[j]
            if found is None:
                found = shift
            elif shift != found:
                raise GradingError("module map is not homogeneous")
        return found
