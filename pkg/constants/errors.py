class EngineError(Exception):
    """Base class for every error the engine raises on purpose."""


class ZeroRingError(EngineError, ValueError):
    """The quotient ideal contains 1."""


class GradingError(EngineError, ValueError):
    """Non-homogeneous data under a grading, or a graded request on an ungraded ring."""


class WellDefinednessError(EngineError, ValueError):
    """A module map sends a source relation outside the target relation span."""


class ComplexError(EngineError, ValueError):
    """A differential squares to a nonzero map, a complex map fails to commute, or a tensor needs a resolution."""


class LevelCapExceeded(EngineError):
    """A saturation or certificate search ran past its configured level cap."""


class WindowInsufficient(EngineError):
    """A graded-window entry did not stabilize within the level cap."""


class ValidityWindowError(EngineError, ValueError):
    """Cohomology requested outside the validity window of a truncated resolution."""


class ArityError(EngineError, ValueError):
    """A multi-index does not have one entry per sequence element."""


class CechMismatchError(EngineError, ValueError):
    """Cochains from different Čech level complexes were combined."""


class ScenarioError(EngineError, ValueError):
    """A scenario file failed to parse or validate."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        location = f"line {line}, column {column}: " if line else ""
        super().__init__(f"{location}{message}")
