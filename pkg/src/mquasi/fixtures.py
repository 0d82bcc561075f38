"""Built-in operation tables: the named example fixtures and a few standard groups.

Tables are written 1-based, rows indexed by the first argument.
"""

from __future__ import annotations

from .core import MultaryOperation, make_operation
from .errors import UnknownFixture


def _ternary(arrays):
    # arrays[k][i][j] is f(i, j, k): the third argument selects the array
    n = len(arrays)
    return [arrays[k][i][j] for i in range(n) for j in range(n) for k in range(n)]


_EX21_F = [
    [[1, 2, 3], [2, 1, 1], [3, 1, 1]],
    [[2, 1, 2], [1, 2, 3], [2, 3, 2]],
    [[3, 3, 1], [3, 3, 3], [1, 3, 1]],
]

_EX21_G = [
    [[2, 2, 2], [2, 1, 1], [3, 1, 1]],
    [[1, 1, 2], [1, 2, 3], [2, 3, 2]],
    [[3, 3, 1], [3, 3, 3], [1, 3, 2]],
]

_EX33_STAR = [
    [1, 2, 3],
    [1, 2, 3],
    [1, 1, 1],
]

_EX33_CIRC = [
    [1, 2, 1],
    [2, 2, 1],
    [1, 2, 2],
]

_EX52_STAR = [
    [1, 5, 4, 3, 2],
    [3, 2, 1, 5, 4],
    [5, 4, 3, 2, 1],
    [2, 1, 5, 4, 3],
    [4, 3, 2, 1, 5],
]

_EX52_CIRC = [[1, 2, 3, 4, 5]] * 5

_EX52_AST = [
    [1, 4, 2, 5, 3],
    [4, 2, 5, 3, 1],
    [2, 5, 3, 1, 4],
    [5, 3, 1, 4, 2],
    [3, 1, 4, 2, 5],
]

# the sixteen binary operations on {1, 2}, in canonical order (g1 .. g16)
_EX51 = [
    "1 1 1 1", "1 1 1 2", "1 1 2 1", "1 1 2 2",
    "1 2 1 1", "1 2 1 2", "1 2 2 1", "1 2 2 2",
    "2 1 1 1", "2 1 1 2", "2 1 2 1", "2 1 2 2",
    "2 2 1 1", "2 2 1 2", "2 2 2 1", "2 2 2 2",
]


def _square(rows):
    n = len(rows)
    return make_operation(2, n, [v for row in rows for v in row])


def _build():
    table = {
        "example-2.1-f": lambda: make_operation(3, 3, _ternary(_EX21_F)),
        "example-2.1-g": lambda: make_operation(3, 3, _ternary(_EX21_G)),
        "example-3.3-star": lambda: _square(_EX33_STAR),
        "example-3.3-circ": lambda: _square(_EX33_CIRC),
        "example-5.2-star": lambda: _square(_EX52_STAR),
        "example-5.2-circ": lambda: _square(_EX52_CIRC),
        "example-5.2-ast": lambda: _square(_EX52_AST),
        "z2": lambda: _square([[1, 2], [2, 1]]),
        "z3": lambda: _square([[1 + (a + b) % 3 for b in range(3)] for a in range(3)]),
        "proj1": lambda: _square([[1, 1], [2, 2]]),
        "proj2": lambda: _square([[1, 2], [1, 2]]),
    }
    for k, text in enumerate(_EX51, start=1):
        table[f"example-5.1-g{k}"] = (lambda t: lambda: make_operation(2, 2, map(int, t.split())))(text)
    return table


_FIXTURES = _build()
FIXTURE_NAMES = tuple(sorted(_FIXTURES))


def load_fixture(name: str) -> MultaryOperation:
    try:
        return _FIXTURES[name]()
    except KeyError:
        raise UnknownFixture(f"unknown fixture {name!r}") from None


def transpose(op: MultaryOperation) -> MultaryOperation:
    if op.arity != 2:
        raise ValueError("transpose needs a binary operation")
    return MultaryOperation(2, op.order, op.as_array().T.reshape(-1))
