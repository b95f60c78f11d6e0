from typing import Callable, Dict, Generic, Optional, TypeVar, Union

from loguru import logger

from algebra.modules import FpModule, ModuleMap
from complexes.complex import Complex, ComplexMap

INVERSE = "inverse"
DIRECT = "direct"

Level = TypeVar("Level", FpModule, Complex)


class LevelSystem(Generic[Level]):
    """A direct or inverse system indexed by first..last.

    For an inverse system transition(j) maps level j+1 to level j; for a direct
    system it maps level j to level j+1. Levels and transitions may be given
    eagerly or built lazily by the supplied factories and are memoized.
    """

    def __init__(
        self,
        direction: str,
        first: int,
        last: int,
        level: Callable[[int], Level],
        transition: Callable[[int], Union[ModuleMap, ComplexMap]],
        name: str = "",
    ):
        if direction not in (INVERSE, DIRECT):
            raise ValueError(f"unknown system direction {direction!r}")
        if last < first:
            raise ValueError(f"empty level range {first}..{last}")
        self.direction = direction
        self.first = first
        self.last = last
        self.name = name
        self._level_factory = level
        self._transition_factory = transition
        self._levels: Dict[int, Level] = {}
        self._transitions: Dict[int, Union[ModuleMap, ComplexMap]] = {}

    @classmethod
    def from_lists(cls, direction: str, first: int, levels, transitions, name: str = "") -> "LevelSystem":
        levels = list(levels)
        transitions = list(transitions)
        return cls(
            direction,
            first,
            first + len(levels) - 1,
            lambda j: levels[j - first],
            lambda j: transitions[j - first],
            name,
        )

    def _check(self, j: int):
        if not self.first <= j <= self.last:
            raise IndexError(f"level {j} outside {self.first}..{self.last} of {self.name or 'system'}")

    def level(self, j: int) -> Level:
        self._check(j)
        if j not in self._levels:
            logger.trace(f"Building level {j} of {self.name or 'system'}")
            self._levels[j] = self._level_factory(j)
        return self._levels[j]

    def transition(self, j: int) -> Union[ModuleMap, ComplexMap]:
        self._check(j)
        self._check(j + 1)
        if j not in self._transitions:
            self._transitions[j] = self._transition_factory(j)
        return self._transitions[j]

    def composite(self, i: int, j: int) -> Union[ModuleMap, ComplexMap]:
        """The map between levels i ≤ j in the system's direction: j → i for inverse, i → j for direct."""
        if i > j:
            raise ValueError(f"composite needs i ≤ j, got {i} > {j}")
        if i == j:
            x = self.level(i)
            return ComplexMap.identity(x) if isinstance(x, Complex) else ModuleMap.identity(x)
        result = self.transition(i)
        for t in range(i + 1, j):
            if self.direction == INVERSE:
                result = result.compose(self.transition(t))
            else:
                result = self.transition(t).compose(result)
        return result

    def truncated(self, last: int) -> "LevelSystem":
        return LevelSystem(self.direction, self.first, last, self.level, self.transition, self.name)

    def map_levels(self, level: Callable, transition: Callable, name: Optional[str] = None) -> "LevelSystem":
        """Applies a functor levelwise: level(X_j) and transition(f_j)."""
        return LevelSystem(
            self.direction,
            self.first,
            self.last,
            lambda j: level(self.level(j)),
            lambda j: transition(self.transition(j)),
            name or self.name,
        )

    @property
    def indices(self) -> range:
        return range(self.first, self.last + 1)

    def __repr__(self) -> str:
        return f"LevelSystem({self.direction}, {self.name or '?'}, {self.first}..{self.last})"


def cohomology_system(system: "LevelSystem[Complex]", k: int) -> "LevelSystem[FpModule]":
    """The module system {H^k(level j)} with the induced transitions."""
    from complexes.cohomology import cohomology, induced_map

    return LevelSystem(
        system.direction,
        system.first,
        system.last,
        lambda j: cohomology(system.level(j), k),
        lambda j: induced_map(system.transition(j), k),
        f"H^{k}({system.name})",
    )
