import functools
import time

import ipdb
import pytest

from utilities.perf_monitor import PerfMonitor
from utilities.utils import canonical_hash, run_with_ttl


def test_canonical_hash():
    first = canonical_hash("ring:\n", 4, (-4, 4), 1337)

    assert first == canonical_hash("ring:\n", 4, (-4, 4), 1337)
    assert first != canonical_hash("ring:\n", 4, (-4, 4), 7)
    # Parts are separated, so shifting text between them changes the digest.
    assert canonical_hash("ab", "c") != canonical_hash("a", "bc")


def test_run_with_ttl_returns_the_result():
    assert run_with_ttl(functools.partial(sum, [1, 2, 3]), 10) == 6


def test_run_with_ttl_reraises():
    with pytest.raises(ValueError):
        run_with_ttl(functools.partial(int, "x"), 10)


def test_run_with_ttl_times_out():
    with pytest.raises(TimeoutError):
        run_with_ttl(functools.partial(time.sleep, 5), 1)


def test_perf_monitor_groups_by_operation():
    monitor = PerfMonitor("task")
    assert monitor.summary_str() == "task timings: N=0"

    for op in ("mgm", "mgm", "wpr_check"):
        with monitor.sample(op):
            pass

    lines = monitor.summary_str().splitlines()
    assert lines[0] == "task timings:"
    assert lines[1].startswith("  mgm: N=2")
    assert lines[2].startswith("  wpr_check: N=1")


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_canonical_hash()
        test_run_with_ttl_returns_the_result()
        test_run_with_ttl_reraises()
        test_run_with_ttl_times_out()
        test_perf_monitor_groups_by_operation()
