"""Why the degreewise limit of the Koszul tower is the wrong model for completion.

The tower {K(A; 𝒂^j)} has non-surjective transitions in negative degrees, so it
fails the Mittag-Leffler condition; its degreewise limit keeps only A in degree 0,
while the telescope tower {Tel_j^∨} realizes A/(𝒂^j) at every level.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from loguru import logger

from algebra.groebner import SubmoduleBasis
from algebra.matrix import unit_vector
from algebra.ring import ElementSequence
from complexes.complex import Complex
from complexes.graded import graded_cohomology_dimension
from complexes.operations import hom_from_free
from constants.errors import GradingError, WindowInsufficient
from koszul.tower import KoszulTower
from telescope.telescope import telescope


@dataclass(frozen=True)
class KoszulLimitRemark:
    sequence: ElementSequence
    top: int
    window: Tuple[int, int]
    # dim H^0(lim_j K(𝒂^j))_d per internal degree d.
    limit_dimensions: Dict[int, int]
    # j -> d -> dim H^0(Tel_j^∨)_d.
    telescope_dimensions: Dict[int, Dict[int, int]]
    # First level from which every negative Koszul component vanishes in the window.
    vanishing_level: int
    # Levels j with im(K(𝒂^{j+1})^{-1} → K(𝒂)^{-1}) strictly inside im(K(𝒂^j)^{-1} → K(𝒂)^{-1}).
    strict_steps: Tuple[int, ...]

    @property
    def limit_total(self) -> int:
        return sum(self.limit_dimensions.values())

    def telescope_total(self, j: int) -> int:
        return sum(self.telescope_dimensions[j].values())

    @property
    def levelwise_isomorphic(self) -> bool:
        return all(self.telescope_total(j) == self.limit_total for j in self.telescope_dimensions)

    @property
    def mittag_leffler_fails(self) -> bool:
        """True when the images never stabilize below the cap."""
        return len(self.strict_steps) == self.top - 1


def _window(window: Tuple[int, int]) -> range:
    return range(window[0], window[1] + 1)


def _vanishing_level(tower: KoszulTower, window: Tuple[int, int]) -> int:
    n = tower.sequence.n
    for j in range(1, tower.top + 1):
        level = tower.level(j)
        if all(
            level.module(k).graded_dimension(d) == 0 for k in range(-n, 0) for d in _window(window)
        ):
            return j
    raise WindowInsufficient(f"negative Koszul components of {tower.sequence} do not vanish in {window} by level {tower.top}")


def _strict_steps(tower: KoszulTower) -> Tuple[int, ...]:
    ring = tower.sequence.ring
    rank = tower.level(1).rank(-1)
    images = [
        SubmoduleBasis.of(ring, rank, tower.system.composite(1, j).at(-1).matrix.nonzero_columns())
        for j in range(2, tower.top + 1)
    ]
    steps = []
    for t in range(len(images) - 1):
        larger, smaller = images[t], images[t + 1]
        if not all(smaller.contains(c) for c in larger.columns):
            steps.append(t + 2)
    first = [unit_vector(ring, rank, i) for i in range(rank)]
    # The image at level 1 is everything; count the step 1 → 2 when it is proper.
    if images and not all(images[0].contains(c) for c in first):
        steps.insert(0, 1)
    return tuple(steps)


def koszul_limit_remark(sequence: ElementSequence, top: int, window: Tuple[int, int]) -> KoszulLimitRemark:
    """Compares H^0 of the degreewise Koszul limit with H^0 of the telescope levels in a graded window.

    Raises:
        GradingError: If the sequence is not homogeneous of positive degrees.
        WindowInsufficient: If the negative Koszul components do not leave the window by level J.
    """
    if top < 2:
        raise ValueError(f"the remark needs J ≥ 2, got {top}")
    if not sequence.is_homogeneous() or min(sequence.degrees()) <= 0:
        raise GradingError(f"{sequence} must be homogeneous of positive degrees")
    tower = KoszulTower(sequence, top)
    vanishing = _vanishing_level(tower, window)
    # Past the vanishing level the limit is A in degree 0 alone.
    unit = Complex.unit(sequence.ring)
    limit_dimensions = {d: unit.module(0).graded_dimension(d) for d in _window(window)}
    telescope_dimensions = {}
    for j in range(1, top + 1):
        dual = hom_from_free(telescope(sequence, j).complex, unit)
        telescope_dimensions[j] = {d: graded_cohomology_dimension(dual, 0, d) for d in _window(window)}
    remark = KoszulLimitRemark(
        sequence, top, window, limit_dimensions, telescope_dimensions, vanishing, _strict_steps(tower)
    )
    logger.debug(
        f"Koszul limit of {sequence}: H^0 window total {remark.limit_total}, "
        f"telescope totals {[remark.telescope_total(j) for j in range(1, top + 1)]}"
    )
    return remark
