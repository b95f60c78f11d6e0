"""Pro-zero certificates for inverse systems of modules, and weak proregularity."""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from loguru import logger

from algebra.modules import FpModule
from algebra.ring import ElementSequence
from complexes.levels import INVERSE, LevelSystem, cohomology_system
from constants import VERDICT_PASS, VERDICT_UNDETERMINED
from koszul.tower import KoszulTower

Pair = Tuple[int, int]


@dataclass(frozen=True)
class ProZeroCertificate:
    """Offset pairs (i, j(i)) with a zero composite j(i) → i, per cohomological degree.

    A degree is certified when every level i ≤ ⌈J/2⌉ has a pair within the cap J.
    A generic module system is recorded under degree 0.
    """

    cap: int
    pairs: Dict[int, Tuple[Pair, ...]] = field(default_factory=dict)
    undetermined: Tuple[int, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.undetermined

    @property
    def verdict(self) -> str:
        if self.complete:
            return VERDICT_PASS
        return f"{VERDICT_UNDETERMINED} at cap {self.cap}"

    def offset(self, k: int = 0) -> Optional[int]:
        """The largest j(i) - i recorded in degree k."""
        pairs = self.pairs.get(k, ())
        if not pairs:
            return None
        return max(j - i for i, j in pairs)

    def merged(self, other: "ProZeroCertificate") -> "ProZeroCertificate":
        return ProZeroCertificate(
            max(self.cap, other.cap),
            {**self.pairs, **other.pairs},
            tuple(sorted(set(self.undetermined) | set(other.undetermined))),
        )

    def recheck(self, systems: Dict[int, LevelSystem]) -> bool:
        """Re-verifies every recorded pair against the given systems, keyed by degree."""
        for k, pairs in self.pairs.items():
            system = systems[k]
            for i, j in pairs:
                if not system.composite(i, j).is_zero():
                    return False
        return True


def required_levels(cap: int) -> range:
    return range(1, math.ceil(cap / 2) + 1)


def _search(system: LevelSystem, i: int, cap: int) -> Optional[int]:
    if system.level(i).is_zero():
        return i
    for j in range(i + 1, cap + 1):
        if system.composite(i, j).is_zero():
            return j
    return None


def pro_zero_check(system: "LevelSystem[FpModule]", cap: int, degree: int = 0) -> ProZeroCertificate:
    """Searches, for each level i, the least j ≤ cap whose transition j → i is zero.

    Never reports failure: a level without a pair within the cap leaves the
    degree undetermined at that cap.
    """
    if system.direction != INVERSE:
        raise ValueError(f"pro-zero check needs an inverse system, got {system!r}")
    cap = min(cap, system.last)
    pairs: List[Pair] = []
    missing = False
    for i in range(system.first, cap + 1):
        j = _search(system, i, cap)
        if j is not None:
            pairs.append((i, j))
        elif i in required_levels(cap):
            missing = True
    certificate = ProZeroCertificate(cap, {degree: tuple(pairs)}, (degree,) if missing else ())
    if missing:
        logger.warning(f"{system.name or 'system'} in degree {degree}: undetermined at cap {cap}")
    else:
        logger.debug(f"{system.name or 'system'} in degree {degree}: pro-zero, offset {certificate.offset(degree)}")
    return certificate


def wpr_systems(sequence: ElementSequence, cap: int) -> Dict[int, LevelSystem]:
    tower = KoszulTower(sequence, cap)
    return {k: cohomology_system(tower.system, k) for k in range(-sequence.n, 0)}


def wpr_check(sequence: ElementSequence, cap: int) -> ProZeroCertificate:
    """Weak proregularity: every H^k(K(𝒂^i)), k < 0, forms a pro-zero inverse system."""
    if cap < 2:
        raise ValueError(f"weak proregularity check needs J ≥ 2, got {cap}")
    certificate = ProZeroCertificate(cap)
    for k, system in wpr_systems(sequence, cap).items():
        certificate = certificate.merged(pro_zero_check(system, cap, degree=k))
    logger.info(f"Weak proregularity of {sequence} up to level {cap}: {certificate.verdict}")
    return certificate
