"""Scenario files: a ring, named sequences and modules, defaults, and the tasks to run.

The format is plain text in blocks. A block header starts in column 1 and
ends with a colon; its entries are indented ``key = value`` lines. Everything
after ``#`` is a comment.

    ring:
        field = QQ
        variables = x, y
        weights = 1, 1

    sequence a:
        elements = x, y

    module k:
        rank = 1
        relations = [x, y]

    task mgm:
        module = k
        sequence = a
        level = 5
        window = -4, 2

Matrix literals list one bracketed row per generator; a row holds one entry
per relation.
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Dict, List, Optional, Tuple

import pydantic
from loguru import logger
from pydantic import BaseModel, Field

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from constants.errors import EngineError, ScenarioError


class Entry(BaseModel):
    """A polynomial literal and where it sits in the file."""

    text: str = Field(description="The literal as written.")
    line: int = Field(description="Line of the literal, counted from 1.")
    column: int = Field(description="Column of the first character, counted from 1.")


class RingSpec(BaseModel):
    field: str = Field(default="QQ", description="QQ or GF(p).")
    variables: List[str] = Field(description="Variable names in order.")
    weights: Optional[List[int]] = Field(default=None, description="Positive variable weights; omitted means ungraded.")
    quotient: List[Entry] = Field(default_factory=list, description="Generators of the quotient ideal.")
    order: str = Field(default="grevlex", description="Monomial order, grevlex or lex.")
    line: int = Field(description="Line of the block header.")


class SequenceSpec(BaseModel):
    name: str = Field(description="Name tasks refer to.")
    elements: List[Entry] = Field(description="The elements a_1..a_n.")
    line: int = Field(description="Line of the block header.")


class ModuleSpec(BaseModel):
    name: str = Field(description="Name tasks refer to.")
    rank: int = Field(ge=0, description="Number of generators.")
    # One row per generator, one column per relation.
    relations: List[List[Entry]] = Field(default_factory=list, description="Presentation matrix rows.")
    degrees: Optional[List[int]] = Field(default=None, description="Generator degrees over a graded ring.")
    line: int = Field(description="Line of the block header.")


class Defaults(BaseModel):
    level: Optional[int] = Field(default=None, ge=1, description="Level J for tasks that do not set one.")
    window: Optional[Tuple[int, int]] = Field(default=None, description="Internal-degree window d0..d1.")
    seed: Optional[int] = Field(default=None, ge=0, description="Seed for random instances.")
    resolution_length: Optional[int] = Field(default=None, ge=1, description="Length of truncated free resolutions.")


class TaskSpec(BaseModel):
    op: str = Field(description="Operation name.")
    line: int = Field(description="Line of the block header.")
    sequence: Optional[str] = Field(default=None, description="The sequence 𝒂.")
    other_sequence: Optional[str] = Field(default=None, description="The second sequence of a permanence task.")
    module: Optional[str] = Field(default=None, description="The module M.")
    other_module: Optional[str] = Field(default=None, description="The second module N of a duality task.")
    level: Optional[int] = Field(default=None, ge=1, description="Level J, or j for single-level tasks.")
    window: Optional[Tuple[int, int]] = Field(default=None, description="Internal-degree window d0..d1.")
    seed: Optional[int] = Field(default=None, ge=0, description="Seed for random instances.")
    resolution_length: Optional[int] = Field(default=None, ge=1, description="Length of truncated free resolutions.")
    trials: Optional[int] = Field(default=None, ge=1, description="Random instances per check.")


class Scenario(BaseModel):
    ring: RingSpec
    sequences: Dict[str, SequenceSpec] = Field(default_factory=dict)
    modules: Dict[str, ModuleSpec] = Field(default_factory=dict)
    defaults: Defaults = Field(default_factory=Defaults)
    tasks: List[TaskSpec] = Field(default_factory=list)
    text: str = Field(default="", description="The file contents, hashed into the report.")


# ---------------------------------
# Lines and values.
# ---------------------------------

_HEADER = re.compile(r"^([a-z_]+)(?:\s+([A-Za-z_][A-Za-z0-9_]*))?\s*:\s*$")
_ENTRY = re.compile(r"^\s+([a-z_]+)\s*=\s*(.*?)\s*$")
_ROW = re.compile(r"\[([^\[\]]*)\]")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")

_KEYS = {
    "ring": {"field", "variables", "weights", "quotient", "order"},
    "sequence": {"elements"},
    "module": {"rank", "relations", "degrees"},
    "defaults": {"level", "window", "seed", "resolution_length"},
    "task": {
        "sequence",
        "other_sequence",
        "module",
        "other_module",
        "level",
        "window",
        "seed",
        "resolution_length",
        "trials",
    },
}
_REQUIRED = {"ring": {"variables"}, "sequence": {"elements"}, "module": {"rank"}}
_LABELLED = {"sequence", "module", "task"}
_INT_KEYS = {"rank", "level", "seed", "resolution_length", "trials"}
_NAME_KEYS = {"sequence", "other_sequence", "module", "other_module"}


@dataclass
class _Value:
    text: str
    line: int
    column: int


@dataclass
class _Block:
    kind: str
    label: Optional[str]
    line: int
    values: Dict[str, _Value]


def _items(value: _Value, text: Optional[str] = None, column: Optional[int] = None) -> List[Entry]:
    """Comma-separated items with their columns; an empty value is an empty list."""
    text = value.text if text is None else text
    column = value.column if column is None else column
    if not text.strip():
        return []
    out, start = [], 0
    for part in text.split(","):
        stripped = part.strip()
        if not stripped:
            raise ScenarioError("empty list item", value.line, column + start)
        offset = start + len(part) - len(part.lstrip())
        out.append(Entry(text=stripped, line=value.line, column=column + offset))
        start += len(part) + 1
    return out


def _int(entry: Entry) -> int:
    try:
        return int(entry.text)
    except ValueError:
        raise ScenarioError(f"expected an integer, got {entry.text!r}", entry.line, entry.column)


def _ints(value: _Value) -> List[int]:
    return [_int(entry) for entry in _items(value)]


def _single_int(value: _Value) -> int:
    items = _items(value)
    if len(items) != 1:
        raise ScenarioError(f"expected one integer, got {value.text!r}", value.line, value.column)
    return _int(items[0])


def _window(value: _Value) -> Tuple[int, int]:
    bounds = _ints(value)
    if len(bounds) != 2:
        raise ScenarioError(f"a window is two integers d0, d1, got {value.text!r}", value.line, value.column)
    if bounds[0] > bounds[1]:
        raise ScenarioError(f"empty window {bounds[0]}..{bounds[1]}", value.line, value.column)
    return bounds[0], bounds[1]


def _name(value: _Value) -> str:
    if not _NAME.match(value.text):
        raise ScenarioError(f"expected a name, got {value.text!r}", value.line, value.column)
    return value.text


def _matrix(value: _Value) -> List[List[Entry]]:
    rows, position = [], 0
    for match in _ROW.finditer(value.text):
        gap = value.text[position : match.start()]
        if gap.strip():
            column = value.column + position + len(gap) - len(gap.lstrip())
            raise ScenarioError("expected '[' to open a matrix row", value.line, column)
        rows.append(_items(value, match.group(1), value.column + match.start(1)))
        position = match.end()
    rest = value.text[position:]
    if rest.strip():
        column = value.column + position + len(rest) - len(rest.lstrip())
        raise ScenarioError("unexpected text after the last matrix row", value.line, column)
    if len({len(row) for row in rows}) > 1:
        raise ScenarioError("matrix rows have different lengths", value.line, value.column)
    return rows


def _blocks(text: str) -> List[_Block]:
    blocks: List[_Block] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if not line[0].isspace():
            match = _HEADER.match(line)
            if match is None or match.group(1) not in _KEYS:
                raise ScenarioError(f"expected a block header such as 'ring:', got {line.strip()!r}", number, 1)
            kind, label = match.group(1), match.group(2)
            if kind in _LABELLED and label is None:
                raise ScenarioError(f"a {kind} block needs a name", number, len(kind) + 1)
            if kind not in _LABELLED and label is not None:
                raise ScenarioError(f"a {kind} block takes no name", number, match.start(2) + 1)
            blocks.append(_Block(kind, label, number, {}))
            continue
        match = _ENTRY.match(line)
        if match is None:
            column = len(line) - len(line.lstrip()) + 1
            raise ScenarioError("expected 'key = value'", number, column)
        if not blocks:
            raise ScenarioError("entry outside of a block", number, match.start(1) + 1)
        block = blocks[-1]
        key = match.group(1)
        if key not in _KEYS[block.kind]:
            raise ScenarioError(f"unknown key {key!r} in a {block.kind} block", number, match.start(1) + 1)
        if key in block.values:
            raise ScenarioError(f"key {key!r} given twice", number, match.start(1) + 1)
        block.values[key] = _Value(match.group(2), number, match.start(2) + 1)
    return blocks


def _fields(block: _Block) -> Dict:
    missing = _REQUIRED.get(block.kind, set()) - set(block.values)
    if missing:
        raise ScenarioError(f"{block.kind} block is missing {', '.join(sorted(missing))}", block.line, 1)
    out = {}
    for key, value in block.values.items():
        if key == "window":
            out[key] = _window(value)
        elif key in _INT_KEYS:
            out[key] = _single_int(value)
        elif key in _NAME_KEYS:
            out[key] = _name(value)
        elif key in ("weights", "degrees"):
            out[key] = _ints(value)
        elif key == "variables":
            out[key] = [entry.text for entry in _items(value)]
        elif key in ("quotient", "elements"):
            out[key] = _items(value)
        elif key == "relations":
            out[key] = _matrix(value)
        else:
            out[key] = value.text
    return out


def _model(cls, block: _Block, **extra):
    try:
        return cls(**_fields(block), **extra)
    except pydantic.ValidationError as e:
        raise ScenarioError(f"invalid {block.kind} block: {e}", block.line, 1)


def parse_scenario(text: str, operations: Optional[Collection[str]] = None) -> Scenario:
    """Parses a scenario; operations, when given, are the task names accepted.

    Raises:
        ScenarioError: With the line and column of the first offending character.
    """
    ring, defaults = None, None
    sequences: Dict[str, SequenceSpec] = {}
    modules: Dict[str, ModuleSpec] = {}
    tasks: List[TaskSpec] = []
    for block in _blocks(text):
        if block.kind == "ring":
            if ring is not None:
                raise ScenarioError("a scenario has one ring block", block.line, 1)
            ring = _model(RingSpec, block, line=block.line)
        elif block.kind == "defaults":
            if defaults is not None:
                raise ScenarioError("a scenario has one defaults block", block.line, 1)
            defaults = _model(Defaults, block)
        elif block.kind == "sequence":
            if block.label in sequences:
                raise ScenarioError(f"sequence {block.label!r} defined twice", block.line, 1)
            sequences[block.label] = _model(SequenceSpec, block, name=block.label, line=block.line)
        elif block.kind == "module":
            if block.label in modules:
                raise ScenarioError(f"module {block.label!r} defined twice", block.line, 1)
            modules[block.label] = _model(ModuleSpec, block, name=block.label, line=block.line)
        else:
            if operations is not None and block.label not in operations:
                raise ScenarioError(f"unknown task {block.label!r}", block.line, len("task ") + 1)
            tasks.append(_model(TaskSpec, block, op=block.label, line=block.line))
    if ring is None:
        raise ScenarioError("the scenario has no ring block", 1, 1)
    scenario = Scenario(
        ring=ring, sequences=sequences, modules=modules, defaults=defaults or Defaults(), tasks=tasks, text=text
    )
    logger.debug(f"Parsed scenario: {len(sequences)} sequences, {len(modules)} modules, {len(tasks)} tasks")
    return scenario


def load_scenario(path: Path, operations: Optional[Collection[str]] = None) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"), operations)


# ---------------------------------
# Algebra.
# ---------------------------------


@dataclass
class ScenarioContext:
    """The ring, sequences and modules a scenario defines, built once and shared by its tasks."""

    ring: RingPresentation
    sequences: Dict[str, ElementSequence]
    modules: Dict[str, FpModule]


def _coerce(ring: RingPresentation, entry: Entry):
    try:
        return ring.coerce(entry.text)
    except ScenarioError as e:
        column = entry.column + e.column - 1 if e.column else entry.column
        raise ScenarioError(str(e), entry.line, column)


def _build_ring(spec: RingSpec, order: Optional[str]) -> RingPresentation:
    # Throwaway ring to read the quotient with located errors.
    try:
        field = CoefficientField.parse(spec.field)
        free = RingPresentation(field, spec.variables)
    except ValueError as e:
        raise ScenarioError(str(e), spec.line, 1)
    quotient = [_coerce(free, entry) for entry in spec.quotient]
    try:
        return RingPresentation(field, spec.variables, quotient, spec.weights, order or spec.order)
    except (EngineError, ValueError) as e:
        raise ScenarioError(str(e), spec.line, 1)


def _build_module(ring: RingPresentation, spec: ModuleSpec) -> FpModule:
    if spec.relations and len(spec.relations) != spec.rank:
        raise ScenarioError(f"{len(spec.relations)} matrix rows for {spec.rank} generators", spec.line, 1)
    rows = [[_coerce(ring, entry) for entry in row] for row in spec.relations]
    relations = PolyMatrix.from_rows(ring, rows) if rows else None
    degrees = spec.degrees
    if degrees is None and ring.is_graded:
        degrees = [0] * spec.rank
    try:
        return FpModule(ring, spec.rank, relations, degrees)
    except (EngineError, ValueError) as e:
        raise ScenarioError(f"module {spec.name!r}: {e}", spec.line, 1)


def build_context(scenario: Scenario, order: Optional[str] = None) -> ScenarioContext:
    """Builds the algebra a scenario names; order overrides the ring block's monomial order.

    Raises:
        ScenarioError: If a polynomial, ring or module is invalid.
    """
    ring = _build_ring(scenario.ring, order)
    sequences = {}
    for name, spec in scenario.sequences.items():
        sequences[name] = ElementSequence(ring, [_coerce(ring, entry) for entry in spec.elements])
    modules = {name: _build_module(ring, spec) for name, spec in scenario.modules.items()}
    logger.info(f"Scenario ring {ring} with sequences {list(sequences)} and modules {list(modules)}")
    return ScenarioContext(ring, sequences, modules)
