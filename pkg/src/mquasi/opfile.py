"""Plain-text operation files.

Format: optional ``#`` comment lines, a header line ``m n``, then exactly
``n**m`` whitespace-separated 1-based entries in flat order (first argument
most significant).
"""

from __future__ import annotations

import re

from .core import MultaryOperation, make_operation
from .errors import ParseError, SymbolOutOfRange

_TOKEN = re.compile(r"\S+")


def parse_operation_file(text: str) -> MultaryOperation:
    tokens = []  # (value text, line, column)
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        for m in _TOKEN.finditer(line):
            tokens.append((m.group(), lineno, m.start() + 1))
    if len(tokens) < 2:
        raise ParseError("missing 'm n' header")

    def number(tok):
        value, line, col = tok
        if not value.isdigit():
            raise ParseError(f"expected a decimal integer, found {value!r}", line, col)
        return int(value)

    arity, order = number(tokens[0]), number(tokens[1])
    if tokens[0][1] != tokens[1][1] or (len(tokens) > 2 and tokens[2][1] == tokens[0][1]):
        raise ParseError("the header line must contain exactly 'm n'", tokens[0][1])
    if arity < 1 or order < 1:
        raise ParseError("arity and order must be positive", tokens[0][1])
    body = tokens[2:]
    expected = order**arity
    if len(body) > expected:
        _, line, col = body[expected]
        raise ParseError(f"trailing data after {expected} entries", line, col)
    values = []
    for tok in body:
        v = number(tok)
        if not 1 <= v <= order:
            raise SymbolOutOfRange(f"line {tok[1]}, column {tok[2]}: entry {v} outside 1..{order}")
        values.append(v)
    return make_operation(arity, order, values)


def write_operation_file(op: MultaryOperation) -> str:
    n = op.order
    lines = [f"{op.arity} {n}"]
    entries = op.entries()
    for start in range(0, len(entries), n):
        lines.append(" ".join(str(v) for v in entries[start:start + n]))
    return "\n".join(lines) + "\n"
