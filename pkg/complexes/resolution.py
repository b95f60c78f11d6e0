from dataclasses import dataclass
from typing import List, Optional

from loguru import logger

from algebra.groebner import SubmoduleBasis
from algebra.matrix import PolyMatrix
from algebra.modules import FpModule
from complexes.complex import Complex, ComplexMap
from constants.errors import ValidityWindowError


def _minimal_columns(ring, rank: int, columns) -> List:
    """Drops columns lying in the span of the others, scanning from the last."""
    kept = [tuple(c) for c in columns if any(c)]
    i = len(kept) - 1
    while i >= 0 and len(kept) > 1:
        others = kept[:i] + kept[i + 1 :]
        if SubmoduleBasis.of(ring, rank, others).contains(kept[i]):
            kept = others
        i -= 1
    return kept


@dataclass(frozen=True)
class FreeResolution:
    """P → M with P free in degrees -length..0.

    When truncated, H^k of any K ⊗ P with K concentrated in degrees ≤ top is
    only trustworthy for k ≥ floor(top).
    """

    complex: Complex
    augmentation: ComplexMap
    length: int
    truncated: bool

    def floor(self, top: int = 0) -> Optional[int]:
        """Lowest cohomological degree unaffected by truncation; None when the resolution is exact."""
        if not self.truncated:
            return None
        return -self.length + 1 + top

    def check(self, k: int, top: int = 0):
        """Raises ValidityWindowError when degree k lies below the validity floor."""
        floor = self.floor(top)
        if floor is not None and k < floor:
            raise ValidityWindowError(
                f"degree {k} lies below the validity floor {floor} of a resolution truncated at length {self.length}"
            )


def free_resolution(module: FpModule, length: int) -> FreeResolution:
    """Iterated syzygies, trimmed to minimal generating sets, stopped early when they vanish."""
    if length < 0:
        raise ValueError(f"resolution length must be non-negative, got {length}")
    ring = module.ring
    graded = module.degrees is not None
    labels0 = [(("P", 0, i),) for i in range(module.rank)]
    modules = {0: FpModule.free(ring, module.rank, module.degrees, labels0)}
    differentials = {}
    current = _minimal_columns(ring, module.rank, module.relations.columns)
    current_rank = module.rank
    current_degrees = module.degrees
    truncated = False
    step = 1
    while current:
        if step > length:
            truncated = True
            break
        degrees = None
        if graded:
            target = FpModule.free(ring, current_rank, current_degrees)
            degrees = [target.column_degree(c) for c in current]
        modules[-step] = FpModule.free(ring, len(current), degrees, [(("P", -step, i),) for i in range(len(current))])
        differentials[-step] = PolyMatrix(ring, current_rank, current, reduce=False)
        syz = SubmoduleBasis.of(ring, current_rank, current, track=True).syzygies()
        next_columns = _minimal_columns(ring, len(current), syz)
        current_rank, current_degrees, current = len(current), degrees, next_columns
        step += 1
    resolution = Complex(ring, modules, differentials, check=False, name="P")
    target = Complex.concentrated(module)
    augmentation = ComplexMap(resolution, target, {0: PolyMatrix.identity(ring, module.rank)}, check=False)
    logger.trace(f"Free resolution ranks {resolution.rank_profile()}, truncated={truncated}")
    return FreeResolution(resolution, augmentation, length, truncated)


def default_resolution_length(n: int, amplitude: int = 0) -> int:
    return n + amplitude + 2
