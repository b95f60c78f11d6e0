import re
from typing import Iterable, List, Tuple

from sympy import Symbol
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from constants.errors import ScenarioError

# Integers, variable names, + - * ^ and parentheses. Nothing else is polynomial surface syntax.
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*^()]))")


def tokenize(text: str, variables: Iterable[str]) -> List[Tuple[str, int]]:
    """Splits a polynomial into (token, column) pairs, columns counted from 1.

    Raises:
        ScenarioError: On a character outside the surface syntax or an unknown variable.
    """
    names = set(variables)
    tokens = []
    position = 0
    stripped = text.rstrip()
    while position < len(stripped):
        match = _TOKEN.match(stripped, position)
        if match is None or match.end() == position:
            column = position + 1 + (len(stripped[position:]) - len(stripped[position:].lstrip()))
            raise ScenarioError(
                f"unexpected character {stripped[column - 1]!r} in polynomial {text!r}",
                column=column,
            )
        token = match.group(1) or match.group(2) or match.group(3)
        column = match.start(match.lastindex) + 1
        if match.group(2) and token not in names:
            raise ScenarioError(f"unknown variable {token!r}", column=column)
        tokens.append((token, column))
        position = match.end()
    if not tokens:
        raise ScenarioError("empty polynomial")
    return tokens


def parse_polynomial(text: str, poly_ring):
    """Parses the surface syntax into an element of a sympy PolyRing.

    Raises:
        ScenarioError: If the text is not a polynomial in the ring's variables.
    """
    names = [str(s) for s in poly_ring.symbols]
    tokens = tokenize(text, names)
    source = " ".join("**" if t == "^" else t for t, _ in tokens)
    local = {name: Symbol(name) for name in names}
    try:
        expr = parse_expr(source, local_dict=local, transformations=standard_transformations)
        return poly_ring.from_expr(expr)
    except ScenarioError:
        raise
    except Exception as e:
        raise ScenarioError(f"cannot read {text!r} as a polynomial: {e}", column=tokens[0][1])
