import time
from collections import defaultdict
from typing import Dict, List

import numpy as np


class PerfSample:
    def __init__(self, monitor: "PerfMonitor", op: str):
        self.monitor = monitor
        self.op = op
        self.start_time = None

    def __enter__(self):
        self.start_time = time.monotonic_ns()
        return self

    def __exit__(self, exception_type, exception_value, exception_traceback):
        self.monitor.samples[self.op].append(time.monotonic_ns() - self.start_time)


class PerfMonitor:
    """Wall time of scenario tasks, grouped by operation.

    Example:
        monitor = PerfMonitor("tasks")
        for task in tasks:
            with monitor.sample(task.op):
                execute(task)

        logger.debug(monitor.summary_str())
    """

    def __init__(self, name: str):
        self.name = name
        self.samples: Dict[str, List[int]] = defaultdict(list)

    def sample(self, op: str) -> PerfSample:
        """Returns a context manager recording the duration of the block under `op`."""
        return PerfSample(self, op)

    def summary_str(self) -> str:
        """One line per operation: sample count, median and max."""
        if not self.samples:
            return f"{self.name} timings: N=0"

        lines = [f"{self.name} timings:"]
        for op in sorted(self.samples):
            durations_ns = np.array(self.samples[op])
            lines.append(
                f"  {op}: N={len(durations_ns)} | "
                f"Median={_format_duration(np.median(durations_ns))} | "
                f"Max={_format_duration(np.max(durations_ns))}"
            )
        return "\n".join(lines)


def _format_duration(duration_ns: float) -> str:
    for unit, divisor in (("min", 60 * 1000_000_000), ("s", 1000_000_000), ("ms", 1000_000), ("μs", 1000)):
        if duration_ns >= divisor:
            return f"{duration_ns / divisor:.2f} {unit}"
    return f"{duration_ns:.0f} ns"
