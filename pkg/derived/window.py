"""Graded windows: per-internal-degree colimits and limits of level systems.

Each (k, d) entry is finite-dimensional linear algebra. An entry is stable at
level s when the transitions s → s+1 → ... → s+1+guard are bijective in that
cell; its dimension is the stable one. A zero entry is stable only when it
stays zero up to the last level.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from algebra.graded import ModuleSlice, map_rank
from algebra.ring import ElementSequence
from complexes.cohomology import cohomology_range
from complexes.complex import Complex, ComplexMap
from complexes.graded import GradedMapCell, graded_cohomology_dimension, graded_map_cell
from complexes.levels import INVERSE, LevelSystem
from constants import STABILITY_GUARD
from constants.errors import GradingError, WindowInsufficient

Cell = Tuple[int, int]


def window_range(window: Tuple[int, int]) -> range:
    if window[0] > window[1]:
        raise ValueError(f"empty window {window}")
    return range(window[0], window[1] + 1)


@dataclass
class WindowEntry:
    k: int
    d: int
    # level -> dim H^k(level)_d, for every level computed.
    dimensions: Dict[int, int] = field(default_factory=dict)
    stable_level: Optional[int] = None

    @property
    def is_stable(self) -> bool:
        return self.stable_level is not None

    @property
    def stable_dimension(self) -> Optional[int]:
        return None if self.stable_level is None else self.dimensions[self.stable_level]


def _transition_bijective(system: LevelSystem, j: int, k: int, d: int, dims: Dict[int, int]) -> bool:
    if dims[j] != dims[j + 1]:
        return False
    if dims[j] == 0:
        return True
    return graded_map_cell(system.transition(j), k, d).is_isomorphism


def _stabilize(system: "LevelSystem[Complex]", k: int, d: int, guard: int) -> WindowEntry:
    entry = WindowEntry(k, d)
    run_start = None
    for j in system.indices:
        entry.dimensions[j] = graded_cohomology_dimension(system.level(j), k, d)
        if j == system.first:
            continue
        if _transition_bijective(system, j - 1, k, d, entry.dimensions):
            run_start = j - 1 if run_start is None else run_start
            if entry.dimensions[j] and j - run_start >= 1 + guard:
                entry.stable_level = run_start
                return entry
        else:
            run_start = None
    # A zero run counts only when it lasts to the last level.
    if run_start is not None and system.last - run_start >= 1 + guard:
        entry.stable_level = run_start
    return entry


class GradedWindowTable:
    """dim H^k(colim or lim of the system)_d for k in the given degrees and d in the window.

    Raises:
        GradingError: If a level of the system is not graded.
    """

    def __init__(
        self,
        system: "LevelSystem[Complex]",
        window: Tuple[int, int],
        degrees: Iterable[int],
        guard: int = STABILITY_GUARD,
    ):
        self.system = system
        self.window = tuple(window)
        self.degrees = tuple(sorted(set(degrees)))
        self.guard = guard
        if not system.level(system.first).is_graded:
            raise GradingError(f"{system!r} is not graded")
        self.entries: Dict[Cell, WindowEntry] = {}
        for k in self.degrees:
            for d in window_range(self.window):
                self.entries[(k, d)] = _stabilize(system, k, d, guard)
        logger.debug(
            f"Window {self.window} of {system.name or 'system'}: "
            f"{len(self.unstable)} of {len(self.entries)} entries unstable by level {system.last}"
        )

    @property
    def unstable(self) -> List[Cell]:
        return [cell for cell, entry in self.entries.items() if not entry.is_stable]

    @property
    def is_stable(self) -> bool:
        return not self.unstable

    @property
    def stable_level(self) -> int:
        """The largest stabilization level over all entries."""
        self.require_stable()
        return max((e.stable_level for e in self.entries.values()), default=self.system.first)

    def require_stable(self):
        if self.unstable:
            k, d = self.unstable[0]
            raise WindowInsufficient(
                f"entry (k={k}, d={d}) of {self.system.name or 'system'} does not stabilize by level {self.system.last}"
            )

    def dimension(self, k: int, d: int) -> int:
        """The stable dimension; degrees outside the table are zero.

        Raises:
            WindowInsufficient: If the entry did not stabilize.
        """
        if (k, d) not in self.entries:
            if d not in window_range(self.window):
                raise ValueError(f"internal degree {d} lies outside the window {self.window}")
            return 0
        entry = self.entries[(k, d)]
        if not entry.is_stable:
            raise WindowInsufficient(f"entry (k={k}, d={d}) does not stabilize by level {self.system.last}")
        return entry.stable_dimension

    def dimensions(self, k: int) -> Dict[int, int]:
        return {d: self.dimension(k, d) for d in window_range(self.window)}

    def as_dict(self) -> Dict[int, Dict[int, int]]:
        """k -> d -> stable dimension, for the nonzero rows."""
        self.require_stable()
        out = {}
        for k in self.degrees:
            row = self.dimensions(k)
            if any(row.values()):
                out[k] = row
        return out

    def stable_dict(self) -> Dict[int, Dict[int, int]]:
        """k -> d -> stable dimension over the stable entries only, nonzero rows."""
        out: Dict[int, Dict[int, int]] = {}
        for (k, d), entry in sorted(self.entries.items()):
            if entry.is_stable:
                out.setdefault(k, {})[d] = entry.stable_dimension
        return {k: row for k, row in out.items() if any(row.values())}

    def rows(self) -> List[Dict]:
        """One record per (k, d, j) cell, sorted, for reports."""
        out = []
        for (k, d), entry in sorted(self.entries.items()):
            for j, dim in sorted(entry.dimensions.items()):
                out.append({"k": k, "d": d, "j": j, "dim": dim, "stable": entry.stable_level == j})
        return out


def system_degrees(system: "LevelSystem[Complex]", *extra: Iterable[int]) -> List[int]:
    """Cohomological degrees carried by the first and last levels."""
    degrees = set(cohomology_range(system.level(system.first))) | set(cohomology_range(system.level(system.last)))
    for more in extra:
        degrees |= set(more)
    return sorted(degrees)


def graded_window_table(
    system: "LevelSystem[Complex]", window: Tuple[int, int], degrees: Optional[Iterable[int]] = None, guard: int = STABILITY_GUARD
) -> GradedWindowTable:
    if degrees is None:
        degrees = system_degrees(system)
    return GradedWindowTable(system, window, degrees, guard)


def grown_window_table(
    system: "LevelSystem[Complex]", window: Tuple[int, int], degrees: Iterable[int], start: int, guard: int = STABILITY_GUARD
) -> GradedWindowTable:
    """Tabulates the system truncated at start, 2·start, ... up to its last level until every entry is stable.

    Raises:
        WindowInsufficient: If some entry is still unstable at the last level.
    """
    degrees = list(degrees)
    last = max(start, system.first + 1 + guard)
    while True:
        table = GradedWindowTable(system.truncated(min(last, system.last)), window, degrees, guard)
        if table.is_stable or last >= system.last:
            table.require_stable()
            return table
        last *= 2


def clearing_level(x: Complex, sequence: ElementSequence, ceiling: int) -> int:
    """Least j with (𝒂^j)X zero in every internal degree ≤ ceiling.

    From that level on X/(𝒂^j)X equals X in those degrees and the tower is constant there.
    A unit entry of degree 0 kills every level, so level 1 already clears.
    """
    degrees = [w for a, w in zip(sequence, sequence.degrees()) if a]
    generators = [e for k in x.degrees for e in x.module(k).degrees]
    if not degrees or not generators or min(degrees) == 0:
        return 1
    return max(1, (ceiling - min(generators)) // min(degrees) + 1)


def complex_table(x: Complex, window: Tuple[int, int], degrees: Iterable[int]) -> Dict[int, Dict[int, int]]:
    """k -> d -> dim H^k(X)_d for a single complex, nonzero rows only."""
    out = {}
    for k in degrees:
        row = {d: graded_cohomology_dimension(x, k, d) for d in window_range(window)}
        if any(row.values()):
            out[k] = row
    return out


# ---------------------------------
# Maps in a window.
# ---------------------------------


@dataclass
class WindowComparison:
    level: int
    cells: Dict[Cell, GradedMapCell]

    @property
    def failures(self) -> List[GradedMapCell]:
        return [cell for _, cell in sorted(self.cells.items()) if not cell.is_isomorphism]

    @property
    def holds(self) -> bool:
        return not self.failures

    def witnesses(self) -> List[str]:
        return [
            f"H^{c.k} in degree {c.d} at level {self.level}: dims {c.source_dimension} → {c.target_dimension}, rank {c.rank}"
            for c in self.failures
        ]


def map_degrees(phi: ComplexMap) -> List[int]:
    return sorted(set(cohomology_range(phi.source)) | set(cohomology_range(phi.target)))


def window_map_comparison(phi: ComplexMap, window: Tuple[int, int], level: int, degrees: Optional[Sequence[int]] = None) -> WindowComparison:
    """H^k(φ)_d for every k and every d in the window."""
    degrees = map_degrees(phi) if degrees is None else degrees
    cells = {(k, d): graded_map_cell(phi, k, d) for k in degrees for d in window_range(window)}
    return WindowComparison(level, cells)


@dataclass
class OnsetComparison:
    top: WindowComparison
    # First level from which every comparison through the top level holds, None when the top fails.
    onset: Optional[int]


def onset_comparison(maps: Callable[[int], ComplexMap], window: Tuple[int, int], top: int, first: int = 1) -> OnsetComparison:
    """Compares at the top level, then walks down while the comparison keeps holding."""
    at_top = window_map_comparison(maps(top), window, top)
    if not at_top.holds:
        return OnsetComparison(at_top, None)
    onset = top
    for j in range(top - 1, first - 1, -1):
        if not window_map_comparison(maps(j), window, j).holds:
            break
        onset = j
    return OnsetComparison(at_top, onset)


# ---------------------------------
# Limits of complexes against limits of cohomology.
# ---------------------------------


@dataclass(frozen=True)
class CommutationCell:
    k: int
    d: int
    # dim lim_j H^k(X_j)_d, from the window table.
    limit_of_cohomology: int
    # dim H^k(lim_j X_j)_d, from the level where the components stop changing.
    cohomology_of_limit: int
    component_level: int

    @property
    def holds(self) -> bool:
        return self.limit_of_cohomology == self.cohomology_of_limit


def _component_bijective(system: LevelSystem, j: int, k: int, d: int) -> bool:
    transition = system.transition(j)
    source = ModuleSlice(transition.source.module(k), d)
    target = ModuleSlice(transition.target.module(k), d)
    if source.dimension != target.dimension:
        return False
    if source.dimension == 0:
        return True
    return map_rank(transition.at(k).matrix, source, target) == source.dimension


def _component_level(system: LevelSystem, k: int, d: int) -> Optional[int]:
    found = None
    for j in range(system.last - 1, system.first - 1, -1):
        if all(_component_bijective(system, j, c, d) for c in (k - 1, k, k + 1)):
            found = j
        else:
            break
    return found


def ml_commutation_check(table: GradedWindowTable) -> Dict[Cell, CommutationCell]:
    """Per (k, d): H^k of the degreewise limit against the limit of H^k.

    The degreewise limit in internal degree d is read off at the first level from
    which the components in degrees k-1, k, k+1 no longer change.

    Raises:
        WindowInsufficient: If the components of some cell keep changing up to the last level.
    """
    system = table.system
    if system.direction != INVERSE:
        raise ValueError(f"limit commutation needs an inverse system, got {system!r}")
    out = {}
    for (k, d) in sorted(table.entries):
        level = _component_level(system, k, d)
        if level is None:
            raise WindowInsufficient(f"components around (k={k}, d={d}) still change at level {system.last}")
        out[(k, d)] = CommutationCell(
            k, d, table.dimension(k, d), graded_cohomology_dimension(system.level(level), k, d), level
        )
    return out
