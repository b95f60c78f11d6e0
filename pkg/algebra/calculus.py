from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger
from sympy.polys.rings import PolyElement

from algebra.groebner import SubmoduleBasis
from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap


@dataclass(frozen=True)
class PrunedModule:
    """A smaller presentation of the same module together with inverse isomorphisms."""

    module: FpModule
    to_pruned: ModuleMap
    from_pruned: ModuleMap


def prune(module: FpModule) -> PrunedModule:
    """Removes generators killed by a relation with a constant unit entry.

    The surviving generators are a subset of the original ones, keeping their labels and degrees.
    """
    ring = module.ring
    alive = list(range(module.rank))
    # Rows indexed by position in alive.
    columns: List[List[PolyElement]] = [list(c) for c in module.relations.columns]
    # Original generator -> {original alive generator: coefficient}.
    express: Dict[int, Dict[int, PolyElement]] = {i: {i: ring.one} for i in range(module.rank)}

    while True:
        pivot = _find_unit(ring, columns)
        if pivot is None:
            break
        c, r = pivot
        unit = columns[c][r]
        inverse = ring.constant(ring.domain.one / unit.LC)
        pivot_column = columns[c]
        gone = alive[r]
        replacement = {
            alive[i]: ring.reduce(-inverse * f) for i, f in enumerate(pivot_column) if i != r and f
        }
        for target in express.values():
            coeff = target.pop(gone, None)
            if coeff is None:
                continue
            for k, f in replacement.items():
                value = ring.reduce(target.get(k, ring.zero) + coeff * f)
                if value:
                    target[k] = value
                else:
                    target.pop(k, None)
        updated = []
        for k, column in enumerate(columns):
            if k == c:
                continue
            factor = column[r]
            if factor:
                scale = ring.reduce(factor * inverse)
                column = [ring.reduce(f - scale * g) for f, g in zip(column, pivot_column)]
            del column[r]
            if any(column):
                updated.append(column)
        columns = updated
        del alive[r]

    degrees = None if module.degrees is None else [module.degrees[i] for i in alive]
    labels = [module.labels[i] for i in alive]
    pruned = FpModule(ring, len(alive), PolyMatrix(ring, len(alive), columns, reduce=False), degrees, labels)
    position = {g: i for i, g in enumerate(alive)}
    to_columns = []
    for i in range(module.rank):
        column = [ring.zero] * len(alive)
        for g, f in express[i].items():
            column[position[g]] = f
        to_columns.append(column)
    to_pruned = ModuleMap(module, pruned, PolyMatrix(ring, len(alive), to_columns, reduce=False), check=False)
    from_columns = [[ring.one if k == g else ring.zero for k in range(module.rank)] for g in alive]
    from_pruned = ModuleMap(pruned, module, PolyMatrix(ring, module.rank, from_columns, reduce=False), check=False)
    if len(alive) < module.rank:
        logger.trace(f"Pruned {module.rank - len(alive)} of {module.rank} generators")
    return PrunedModule(pruned, to_pruned, from_pruned)


def _find_unit(ring, columns) -> Optional[Tuple[int, int]]:
    for c, column in enumerate(columns):
        for r, f in enumerate(column):
            if ring.is_unit_constant(f):
                return c, r
    return None


def _dedupe(columns: Sequence[Sequence[PolyElement]]) -> List[Tuple[PolyElement, ...]]:
    seen = set()
    out = []
    for column in columns:
        key = tuple(tuple(sorted(f.items())) for f in column)
        if any(column) and key not in seen:
            seen.add(key)
            out.append(tuple(column))
    return out


def submodule(module: FpModule, columns: Sequence[Sequence[PolyElement]], labels=None, minimize: bool = True) -> Tuple[FpModule, ModuleMap]:
    """The submodule of M generated by the given vectors, with its inclusion.

    Vectors already zero in M are dropped. Relations are the syzygies of the
    generators modulo the relations of M.
    """
    ring = module.ring
    gens = [c for c in _dedupe(columns) if not module.contains(c)]
    if labels is None:
        labels = [(("sub", i),) for i in range(len(gens))]
    degrees = None
    if module.degrees is not None:
        degrees = [module.column_degree(c) for c in gens]
    stacked = list(gens) + list(module.relations.columns)
    syz = SubmoduleBasis.of(ring, module.rank, stacked, track=True).syzygies() if gens else []
    relations = PolyMatrix(ring, len(gens), [s[: len(gens)] for s in syz], reduce=False)
    sub = FpModule(ring, len(gens), relations, degrees, labels[: len(gens)])
    inclusion = ModuleMap(sub, module, PolyMatrix(ring, module.rank, gens, reduce=False), check=False)
    if minimize:
        pruned = prune(sub)
        sub = pruned.module
        inclusion = inclusion.compose(pruned.from_pruned)
    return sub, inclusion


def kernel(phi: ModuleMap) -> Tuple[FpModule, ModuleMap]:
    """ker φ with its inclusion into the source."""
    source, target = phi.source, phi.target
    ring = phi.ring
    if target.rank == 0:
        generators = [[ring.one if k == i else ring.zero for k in range(source.rank)] for i in range(source.rank)]
    else:
        stacked = list(phi.matrix.columns) + list(target.relations.columns)
        syz = SubmoduleBasis.of(ring, target.rank, stacked, track=True).syzygies() if stacked else []
        generators = [s[: source.rank] for s in syz]
    return submodule(source, generators)


def image(phi: ModuleMap) -> Tuple[FpModule, ModuleMap]:
    """im φ with its inclusion into the target."""
    return submodule(phi.target, phi.matrix.columns)


def cokernel(phi: ModuleMap) -> Tuple[FpModule, ModuleMap]:
    """coker φ with the projection from the target."""
    target = phi.target
    relations = target.relations.hstack(phi.matrix)
    quotient = FpModule(phi.ring, target.rank, relations, target.degrees, target.labels)
    projection = ModuleMap(target, quotient, PolyMatrix.identity(phi.ring, target.rank), check=False)
    pruned = prune(quotient)
    return pruned.module, pruned.to_pruned.compose(projection)


@dataclass(frozen=True)
class ModuleCalculus:
    kernel: FpModule
    kernel_inclusion: ModuleMap
    image: FpModule
    image_inclusion: ModuleMap
    cokernel: FpModule
    cokernel_projection: ModuleMap

    @property
    def is_injective(self) -> bool:
        return self.kernel.is_zero()

    @property
    def is_surjective(self) -> bool:
        return self.cokernel.is_zero()

    @property
    def is_isomorphism(self) -> bool:
        return self.is_injective and self.is_surjective


def module_calculus(phi: ModuleMap) -> ModuleCalculus:
    k, k_in = kernel(phi)
    i, i_in = image(phi)
    c, c_pr = cokernel(phi)
    return ModuleCalculus(k, k_in, i, i_in, c, c_pr)


def is_zero_module(module: FpModule) -> bool:
    return module.is_zero()


def direct_sum(modules: Sequence[FpModule]) -> FpModule:
    ring = modules[0].ring
    relations = PolyMatrix.block_diagonal(ring, [m.relations for m in modules])
    degrees = None
    if all(m.degrees is not None for m in modules):
        degrees = [d for m in modules for d in m.degrees]
    labels = [(("summand", k),) + label for k, m in enumerate(modules) for label in m.labels]
    return FpModule(ring, sum(m.rank for m in modules), relations, degrees, labels)


def lift_through(phi: ModuleMap, vector: Sequence[PolyElement]) -> Optional[Tuple[PolyElement, ...]]:
    """A preimage of vector under φ modulo the target's relations, or None when vector is outside the image."""
    target = phi.target
    stacked = list(phi.matrix.columns) + list(target.relations.columns)
    if not stacked:
        return tuple() if not any(vector) else None
    coefficients = SubmoduleBasis.of(phi.ring, target.rank, stacked, track=True).lift(vector)
    if coefficients is None:
        return None
    return tuple(coefficients[: phi.source.rank])
