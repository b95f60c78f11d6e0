import json
import tempfile
from pathlib import Path

import ipdb

from constants import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    SCENARIO_DIR,
    VERDICT_HYPOTHESIS_FAILS,
    VERDICT_NOT_APPLICABLE,
    VERDICT_PASS,
)
from torsion_completion import __version__
from torsion_completion.run import main

DUAL_NUMBERS = """\
ring:
    variables = x
    quotient = x^2

sequence a:
    elements = x

task wpr_check:
    sequence = a
"""


def _run(text: str, *flags: str):
    """Runs a scenario inline and returns the exit status and the parsed report, if one was written."""
    with tempfile.TemporaryDirectory() as folder:
        scenario = Path(folder) / "test.scenario"
        scenario.write_text(text)
        output = Path(folder) / "report.json"
        status = main([str(scenario), "--ttl", "0", "--output", str(output), *flags])
        report = json.loads(output.read_text()) if output.exists() else None
    return status, report


def test_wpr_certificate_over_the_dual_numbers():
    status, report = _run(DUAL_NUMBERS, "--level", "4")

    assert status == EXIT_OK
    assert report["engine_version"] == __version__
    assert list(report) == ["engine_version", "input_hash", "seed", "report_hash", "tasks"]
    (task,) = report["tasks"]
    assert task["verdict"] == VERDICT_PASS
    certificate = task["checks"][0]["details"]["certificate"]
    assert certificate["offsets"] == {"-1": 2}
    assert certificate["cap"] == 4


def test_task_level_beats_the_flag():
    status, report = _run(DUAL_NUMBERS.replace("sequence = a\n", "sequence = a\n    level = 6\n"), "--level", "4")

    assert status == EXIT_OK
    assert report["tasks"][0]["checks"][0]["details"]["certificate"]["cap"] == 6


def test_permanence_hypothesis_failure_exits_nonzero():
    text = """\
ring:
    variables = x, y
sequence a:
    elements = x
sequence b:
    elements = y
task permanence:
    sequence = a
    other_sequence = b
"""
    status, report = _run(text)

    assert status == EXIT_VERIFICATION_FAILED
    (task,) = report["tasks"]
    assert task["verdict"] == VERDICT_HYPOTHESIS_FAILS
    assert task["witnesses"]


def test_graded_only_task_is_not_applicable_on_an_ungraded_ring():
    text = "ring:\n    variables = t\nsequence a:\n    elements = t\ntask koszul_remark:\n    sequence = a\n"

    status, report = _run(text)

    assert status == EXIT_OK
    assert report["tasks"][0]["verdict"] == VERDICT_NOT_APPLICABLE


def test_empty_task_list():
    status, report = _run("ring:\n    variables = x\n")

    assert status == EXIT_OK
    assert report["tasks"] == []


def test_usage_errors_write_no_report():
    for text in ("ring:\n    variables = x\ntask frobnicate:\n", "ring:\n    variables = x\n  oops\n"):
        status, report = _run(text)
        assert status == EXIT_USAGE
        assert report is None

    status, _ = _run(DUAL_NUMBERS, "--level", "0")
    assert status == EXIT_USAGE

    assert main(["/nonexistent/test.scenario", "--ttl", "0"]) == EXIT_USAGE


def test_reports_are_deterministic():
    _, first = _run(DUAL_NUMBERS, "--jobs", "2")
    _, second = _run(DUAL_NUMBERS)

    assert first["input_hash"] == second["input_hash"]
    assert first["report_hash"] == second["report_hash"]

    _, reseeded = _run(DUAL_NUMBERS, "--seed", "7")
    assert reseeded["input_hash"] != first["input_hash"]
    assert reseeded["seed"] == 7


def test_worked_wpr_scenario():
    status, report = _run((SCENARIO_DIR / "wpr_dual_numbers.scenario").read_text())

    assert status == EXIT_OK
    assert [t["op"] for t in report["tasks"]] == ["wpr_check", "wpr_check", "koszul_soundness", "telescope_lemma"]
    for task in report["tasks"][:2]:
        assert task["checks"][0]["details"]["certificate"]["offsets"] == {"-1": 2}


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_wpr_certificate_over_the_dual_numbers()
        test_task_level_beats_the_flag()
        test_permanence_hypothesis_failure_exits_nonzero()
        test_graded_only_task_is_not_applicable_on_an_ungraded_ring()
        test_empty_task_list()
        test_usage_errors_write_no_report()
        test_reports_are_deterministic()
        test_worked_wpr_scenario()
