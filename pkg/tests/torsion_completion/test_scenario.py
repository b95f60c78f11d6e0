import ipdb
import pytest
from easydict import EasyDict

from constants import DEFAULT_LEVEL, DEFAULT_WINDOW, SCENARIO_DIR
from constants.errors import ScenarioError
from torsion_completion.scenario import build_context, load_scenario, parse_scenario
from torsion_completion.tasks import OPERATIONS, prepare_tasks

PLANE = """\
# Residue field of the plane.
ring:
    field = QQ
    variables = x, y
    weights = 1, 1

sequence a:
    elements = x, y

module k:
    rank = 1
    relations = [x, y]

defaults:
    level = 5
    window = -3, 2

task mgm:
    module = k
    sequence = a
    level = 6
"""


def _error(text: str, operations=None) -> ScenarioError:
    with pytest.raises(ScenarioError) as error:
        build_context(parse_scenario(text, operations))
    return error.value


def test_parse_blocks():
    scenario = parse_scenario(PLANE, OPERATIONS)

    assert scenario.ring.variables == ["x", "y"]
    assert scenario.ring.weights == [1, 1]
    assert [e.text for e in scenario.sequences["a"].elements] == ["x", "y"]
    assert [[e.text for e in row] for row in scenario.modules["k"].relations] == [["x", "y"]]
    assert scenario.defaults.window == (-3, 2)
    assert [(t.op, t.module, t.level, t.line) for t in scenario.tasks] == [("mgm", "k", 6, 18)]


def test_build_context():
    context = build_context(parse_scenario(PLANE))

    assert context.ring.is_graded
    assert context.sequences["a"].n == 2
    k = context.modules["k"]
    assert k.rank == 1
    assert k.degrees == (0,)
    assert k.graded_dimension(0) == 1
    assert k.graded_dimension(1) == 0


def test_order_override():
    context = build_context(parse_scenario(PLANE), order="lex")

    assert context.ring.order_name == "lex"


def test_task_values_beat_flags_and_defaults():
    scenario = parse_scenario(PLANE + "\ntask cone_triangle:\n    sequence = a\n", OPERATIONS)
    context = build_context(scenario)

    first, second = prepare_tasks(scenario, context, EasyDict({"level": 3}))

    assert first.level == 6
    assert second.level == 3
    assert first.window == second.window == (-3, 2)
    assert first.module is context.modules["k"]

    _, second = prepare_tasks(scenario, context, EasyDict({}))
    assert second.level == 5


def test_windows_only_apply_to_graded_rings():
    text = "ring:\n    variables = x\nsequence a:\n    elements = x\ntask wpr_check:\n    sequence = a\n"
    scenario = parse_scenario(text, OPERATIONS)

    (task,) = prepare_tasks(scenario, build_context(scenario), EasyDict({}))

    assert task.window is None
    assert task.level == DEFAULT_LEVEL

    graded = parse_scenario(text.replace("variables = x", "variables = x\n    weights = 1"), OPERATIONS)
    (task,) = prepare_tasks(graded, build_context(graded), EasyDict({}))
    assert task.window == DEFAULT_WINDOW


def test_unknown_key_is_located():
    error = _error("ring:\n    variables = x\n    colour = red\n")

    assert (error.line, error.column) == (3, 5)


def test_unknown_variable_is_located():
    error = _error("ring:\n    variables = x, y\nsequence a:\n    elements = x, y + z\n")

    assert (error.line, error.column) == (4, 23)


def test_trailing_matrix_text_is_located():
    error = _error("ring:\n    variables = x, y\nmodule m:\n    rank = 1\n    relations = [x, y] x\n")

    assert (error.line, error.column) == (5, 24)


def test_unknown_task_is_rejected():
    error = _error("ring:\n    variables = x\n\ntask frobnicate:\n", OPERATIONS)

    assert error.line == 4
    assert "frobnicate" in str(error)


@pytest.mark.parametrize(
    "text, line",
    [
        ("rng:\n    variables = x\n", 1),
        ("", 1),
        ("ring:\n    variables = x\n    variables = y\n", 3),
        ("ring:\n    variables = x\nsequence:\n    elements = x\n", 3),
        ("ring:\n    variables = x\nmodule m:\n    rank = 2\n    relations = [x]\n", 3),
        ("ring:\n    variables = x\nmodule m:\n    rank = -1\n", 3),
        ("ring:\n    variables = x\ndefaults:\n    window = 3, 1\n", 4),
        ("ring:\n    variables = x\n    quotient = 1\n", 1),
    ],
)
def test_invalid_scenarios(text, line):
    assert _error(text).line == line


def test_unresolved_names_and_bounds():
    base = "ring:\n    variables = x\nsequence a:\n    elements = x\n"
    for task in ("task mgm:\n    sequence = a\n", "task mgm:\n    module = m\n    sequence = a\n"):
        scenario = parse_scenario(base + task, OPERATIONS)
        with pytest.raises(ScenarioError):
            prepare_tasks(scenario, build_context(scenario), EasyDict({}))

    scenario = parse_scenario(base + "task wpr_check:\n    sequence = a\n    level = 99\n", OPERATIONS)
    with pytest.raises(ScenarioError) as error:
        prepare_tasks(scenario, build_context(scenario), EasyDict({}))
    assert error.value.line == 5


def test_worked_scenarios_load():
    names = sorted(path.name for path in SCENARIO_DIR.glob("*.scenario"))
    assert names == ["gm_line.scenario", "mgm_plane.scenario", "wpr_dual_numbers.scenario"]

    for name in names:
        scenario = load_scenario(SCENARIO_DIR / name, OPERATIONS)
        tasks = prepare_tasks(scenario, build_context(scenario), EasyDict({}))
        assert tasks


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_parse_blocks()
        test_build_context()
        test_order_override()
        test_task_values_beat_flags_and_defaults()
        test_windows_only_apply_to_graded_rings()
        test_unknown_key_is_located()
        test_unknown_variable_is_located()
        test_trailing_matrix_text_is_located()
        test_unknown_task_is_rejected()
        test_unresolved_names_and_bounds()
        test_worked_scenarios_load()
