from pathlib import Path
from dataclasses import dataclass, replace
from typing import Tuple


@dataclass(frozen=True)
class EngineLimits:
    """Caps a single run may override."""

    # Highest level any tower, system or certificate search may build.
    level_cap: int
    # Highest annihilator level searched by torsion saturation.
    torsion_level_cap: int
    # Čech equality tests saturate up to saturation_factor * j.
    saturation_factor: int
    # Seconds a single CLI task may run before it is reported as a resource cap.
    task_ttl: int

    def with_overrides(self, **kwargs) -> "EngineLimits":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


# ---------------------------------
# Project Constants.
# ---------------------------------

# The version stamped into every report.
ENGINE_VERSION = "0.3.0"
# The root directory of this project.
ROOT_DIR = Path(__file__).parent.parent
# Worked scenarios shipped with the repository.
SCENARIO_DIR = ROOT_DIR / "docs" / "scenarios"

# Level J used when neither the scenario nor the command line sets one.
DEFAULT_LEVEL = 4
# Internal-degree window used when neither the scenario nor the command line sets one.
DEFAULT_WINDOW: Tuple[int, int] = (-4, 4)
# Seed for random instances.
DEFAULT_SEED = 1337
# Extra level computed after two equal levels before an entry is declared stable.
STABILITY_GUARD = 1
# Variable name reserved for the Rabinowitsch trick.
RABINOWITSCH_VARIABLE = "_rabinowitsch_t"

DEFAULT_LIMITS = EngineLimits(
    level_cap=32,
    torsion_level_cap=24,
    saturation_factor=2,
    task_ttl=600,
)

# ---------------------------------
# CLI exit statuses.
# ---------------------------------

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE_CAP = 3

# Verdicts a task may report.
VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
VERDICT_NOT_APPLICABLE = "not-applicable"
VERDICT_UNDETERMINED = "undetermined"
# A task whose hypothesis does not hold; counts as a failure for the exit status.
VERDICT_HYPOTHESIS_FAILS = "hypothesis fails"
VERDICTS = (VERDICT_PASS, VERDICT_FAIL, VERDICT_NOT_APPLICABLE, VERDICT_UNDETERMINED, VERDICT_HYPOTHESIS_FAILS)
