"""Finite certificates for maps of direct and inverse systems of modules.

A map φ: X → Y of systems induces an isomorphism on colimits (limits) when its
kernel classes eventually die and its cokernel classes are eventually hit.
Both conditions are searched level by level, the same way the pro-zero
certificates of the Koszul package are.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from loguru import logger

from algebra.calculus import kernel, lift_through
from algebra.modules import FpModule, ModuleMap
from complexes.levels import DIRECT, INVERSE, LevelSystem
from constants import VERDICT_PASS, VERDICT_UNDETERMINED
from koszul.certificates import Pair, ProZeroCertificate, pro_zero_check, required_levels


@dataclass(frozen=True)
class LimitCertificate:
    """Offset pairs for the kernel and the cokernel of a map of systems, per cohomological degree.

    For a direct system a kernel pair (i, j) says every kernel class of level i
    is zero at level j, and a cokernel pair says every class of Y_i lands in the
    image of φ_j. For an inverse system the pairs read the other way: kernel
    classes of level j die at level i, and the image of Y_j → Y_i lies in im φ_i.
    """

    direction: str
    cap: int
    kernel_pairs: Dict[int, Tuple[Pair, ...]] = field(default_factory=dict)
    cokernel_pairs: Dict[int, Tuple[Pair, ...]] = field(default_factory=dict)
    undetermined: Tuple[int, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.undetermined

    @property
    def verdict(self) -> str:
        if self.complete:
            return VERDICT_PASS
        return f"{VERDICT_UNDETERMINED} at cap {self.cap}"

    def offset(self, k: int) -> Optional[int]:
        pairs = self.kernel_pairs.get(k, ()) + self.cokernel_pairs.get(k, ())
        if not pairs:
            return None
        return max(j - i for i, j in pairs)

    @property
    def max_offset(self) -> int:
        offsets = [self.offset(k) for k in set(self.kernel_pairs) | set(self.cokernel_pairs)]
        return max([o for o in offsets if o is not None], default=0)

    def merged(self, other: "LimitCertificate") -> "LimitCertificate":
        return LimitCertificate(
            self.direction,
            max(self.cap, other.cap),
            {**self.kernel_pairs, **other.kernel_pairs},
            {**self.cokernel_pairs, **other.cokernel_pairs},
            tuple(sorted(set(self.undetermined) | set(other.undetermined))),
        )

    def as_dict(self) -> Dict:
        return {
            "direction": self.direction,
            "cap": self.cap,
            "kernel_pairs": {k: [list(p) for p in v] for k, v in sorted(self.kernel_pairs.items())},
            "cokernel_pairs": {k: [list(p) for p in v] for k, v in sorted(self.cokernel_pairs.items())},
            "undetermined": list(self.undetermined),
        }


def _all_zero(module: FpModule, columns) -> bool:
    return all(module.contains(c) for c in columns)


def _all_hit(phi: ModuleMap, columns) -> bool:
    return all(lift_through(phi, c) is not None for c in columns)


class _MapSearch:
    def __init__(self, source: LevelSystem, target: LevelSystem, maps: Callable[[int], ModuleMap], cap: int):
        self.source = source
        self.target = target
        self.maps = maps
        self.cap = cap
        self._kernels: Dict[int, List] = {}

    def kernel_columns(self, j: int) -> List:
        if j not in self._kernels:
            _, inclusion = kernel(self.maps(j))
            self._kernels[j] = list(inclusion.matrix.columns)
        return self._kernels[j]

    def kernel_pair(self, i: int) -> Optional[int]:
        for j in range(i, self.cap + 1):
            if self.source.direction == DIRECT:
                composite = self.source.composite(i, j)
                if _all_zero(self.source.level(j), [composite(c) for c in self.kernel_columns(i)]):
                    return j
            else:
                composite = self.source.composite(i, j)
                if _all_zero(self.source.level(i), [composite(c) for c in self.kernel_columns(j)]):
                    return j
        return None

    def cokernel_pair(self, i: int) -> Optional[int]:
        for j in range(i, self.cap + 1):
            columns = self.target.composite(i, j).matrix.columns
            if self.target.direction == DIRECT:
                if _all_hit(self.maps(j), columns):
                    return j
            elif _all_hit(self.maps(i), columns):
                return j
        return None


def map_limit_check(
    source: "LevelSystem[FpModule]",
    target: "LevelSystem[FpModule]",
    maps: Callable[[int], ModuleMap],
    cap: int,
    degree: int = 0,
) -> LimitCertificate:
    """Searches kernel and cokernel pairs of a levelwise map for every level up to the cap.

    Like the pro-zero check this never reports failure: a required level without
    a pair leaves the degree undetermined at the cap.
    """
    if source.direction != target.direction:
        raise ValueError(f"cannot compare {source!r} with {target!r}")
    cap = min(cap, source.last, target.last)
    search = _MapSearch(source, target, maps, cap)
    kernel_pairs: List[Pair] = []
    cokernel_pairs: List[Pair] = []
    missing = False
    for i in range(source.first, cap + 1):
        for finder, pairs in ((search.kernel_pair, kernel_pairs), (search.cokernel_pair, cokernel_pairs)):
            j = finder(i)
            if j is not None:
                pairs.append((i, j))
            elif i in required_levels(cap):
                missing = True
    certificate = LimitCertificate(
        source.direction, cap, {degree: tuple(kernel_pairs)}, {degree: tuple(cokernel_pairs)}, (degree,) if missing else ()
    )
    if missing:
        logger.warning(f"{source.name or 'system'} → {target.name or 'system'} in degree {degree}: undetermined at cap {cap}")
    else:
        logger.debug(f"{source.name or 'system'} → {target.name or 'system'} in degree {degree}: offset {certificate.offset(degree)}")
    return certificate


def constant_system(direction: str, module: FpModule, first: int, last: int, name: str = "") -> "LevelSystem[FpModule]":
    return LevelSystem(direction, first, last, lambda j: module, lambda j: ModuleMap.identity(module), name)


def vanishing_check(system: "LevelSystem[FpModule]", cap: int, degree: int = 0) -> ProZeroCertificate:
    """Pro-zero for an inverse system; for a direct system, every class of level i dies at some j(i)."""
    if system.direction == INVERSE:
        return pro_zero_check(system, cap, degree)
    cap = min(cap, system.last)
    pairs: List[Pair] = []
    missing = False
    for i in range(system.first, cap + 1):
        found = None
        for j in range(i, cap + 1):
            if system.level(i).is_zero() or system.composite(i, j).is_zero():
                found = j
                break
        if found is not None:
            pairs.append((i, found))
        elif i in required_levels(cap):
            missing = True
    certificate = ProZeroCertificate(cap, {degree: tuple(pairs)}, (degree,) if missing else ())
    logger.debug(f"{system.name or 'system'} in degree {degree}: {certificate.verdict}")
    return certificate
