"""The run report: one JSON document, field order fixed.

    {
      "engine_version": "0.3.0",
      "input_hash": "...",       # scenario text plus every flag that changes a result
      "seed": 1337,
      "report_hash": "...",      # everything above and below except timing_seconds
      "tasks": [
        {"index": 0, "op": "wpr_check", "verdict": "pass", "witnesses": [],
         "checks": [{"name": ..., "verdict": ..., "witnesses": [...], "details": {...}}],
         "tables": {"name": {k: {d: dim}}}, "timing_seconds": 0.12}
      ]
    }

JSON object keys are strings, so cohomological and internal degrees appear as "-1", "0", ...
"""

import json
from typing import Any, Dict, List

from pydantic import BaseModel, Field
from rich.console import Console
from rich.table import Table

from constants import VERDICT_NOT_APPLICABLE, VERDICT_PASS
from utilities.utils import canonical_hash


class TaskReport(BaseModel):
    index: int = Field(description="Position of the task in the scenario.")
    op: str = Field(description="Operation name.")
    verdict: str = Field(description="pass, fail, not-applicable, hypothesis fails or undetermined at cap J.")
    witnesses: List[str] = Field(default_factory=list, description="Concrete witnesses, prefixed by their check.")
    checks: List[Dict[str, Any]] = Field(default_factory=list, description="Named checks with details.")
    tables: Dict[str, Dict[int, Dict[int, int]]] = Field(default_factory=dict, description="k -> d -> dimension.")
    timing_seconds: float = Field(default=0.0, description="Wall time; excluded from every hash.")

    @property
    def succeeded(self) -> bool:
        return self.verdict in (VERDICT_PASS, VERDICT_NOT_APPLICABLE)

    def as_dict(self, timing: bool = True) -> Dict[str, Any]:
        out = {
            "index": self.index,
            "op": self.op,
            "verdict": self.verdict,
            "witnesses": list(self.witnesses),
            "checks": self.checks,
            "tables": self.tables,
        }
        if timing:
            out["timing_seconds"] = self.timing_seconds
        return out


class RunReport(BaseModel):
    engine_version: str
    input_hash: str
    seed: int
    tasks: List[TaskReport] = Field(default_factory=list)

    @property
    def report_hash(self) -> str:
        return canonical_hash(self.engine_version, self.input_hash, self.seed, self._dumps(timing=False))

    def _dumps(self, timing: bool) -> str:
        return json.dumps([t.as_dict(timing) for t in self.tasks], default=str)

    def as_dict(self) -> Dict[str, Any]:
        return {
            "engine_version": self.engine_version,
            "input_hash": self.input_hash,
            "seed": self.seed,
            "report_hash": self.report_hash,
            "tasks": [t.as_dict() for t in self.tasks],
        }

    def to_json(self) -> str:
        # Round-trip through the compact form so nested keys come out in one canonical shape.
        return json.dumps(json.loads(json.dumps(self.as_dict(), default=str)), indent=2) + "\n"

    def print_summary(self, console: Console):
        table = Table(title="Tasks")
        table.add_column("index", justify="right", style="cyan", no_wrap=True)
        table.add_column("op", style="magenta")
        table.add_column("verdict")
        table.add_column("witnesses", justify="right")
        table.add_column("seconds", justify="right", style="blue")
        for task in self.tasks:
            style = "green" if task.succeeded else "red"
            table.add_row(
                str(task.index),
                task.op,
                f"[{style}]{task.verdict}[/{style}]",
                str(len(task.witnesses)),
                "{:.3f}".format(task.timing_seconds),
            )
        console.print(table)
