"""Terms over m-ary products and exhaustive identity checking.

Concrete syntax: ``term := 'x' N | '{' term (',' term)*(m-1) '}'``.
Braces are used for every arity, including m = 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import parallel
from .core import MultaryOperation, operation_count, tables_in_range
from .errors import ArityMismatch, CapacityExceeded, TermSyntaxError, UnboundVariable

IDENTITY_GUARD = 10**7
LIFTED_SAMPLES = 10**5
LIFTED_SEED = 20240229
# largest component table (q**n entries) the lifted check will handle
COMPONENT_TABLE_CAP = 4096
_BATCH = 1 << 16


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    children: tuple

    def __str__(self):
        return "{" + ",".join(str(c) for c in self.children) + "}"


Term = Union[Var, App]


def variables(term) -> set[int]:
    if isinstance(term, Var):
        return {term.index}
    out = set()
    for c in term.children:
        out |= variables(c)
    return out


def parse_term(text: str, arity: int):
    if arity < 2:
        raise ArityMismatch("terms need an arity of at least 2")
    pos = 0

    def skip():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def term():
        nonlocal pos
        skip()
        if pos >= len(text):
            raise TermSyntaxError("unexpected end of term", pos)
        ch = text[pos]
        if ch == "x":
            pos += 1
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            if start == pos:
                raise TermSyntaxError("expected a variable number after 'x'", start)
            index = int(text[start:pos])
            if index < 1:
                raise TermSyntaxError("variable numbers start at 1", start)
            return Var(index)
        if ch == "{":
            open_at = pos
            pos += 1
            children = [term()]
            skip()
            while pos < len(text) and text[pos] == ",":
                pos += 1
                children.append(term())
                skip()
            if pos >= len(text) or text[pos] != "}":
                raise TermSyntaxError("expected ',' or '}'", pos)
            pos += 1
            if len(children) != arity:
                raise ArityMismatch(
                    f"product at position {open_at} has {len(children)} factors, expected {arity}"
                )
            return App(tuple(children))
        raise TermSyntaxError(f"unexpected character {ch!r}", pos)

    result = term()
    skip()
    if pos != len(text):
        raise TermSyntaxError("trailing input", pos)
    return result


def parse_identity(text: str, arity: int):
    """Split ``"LHS = RHS"`` and parse both sides."""
    if text.count("=") != 1:
        raise TermSyntaxError("an identity needs exactly one '='")
    lhs, rhs = text.split("=")
    return parse_term(lhs, arity), parse_term(rhs, arity)


def eval_term(term, op: MultaryOperation, assignment):
    """Evaluate with ``assignment[i]`` bound to variable x_i.

    Values may be symbols or equally shaped integer arrays; arrays are
    evaluated elementwise.
    """
    if isinstance(term, Var):
        try:
            return assignment[term.index]
        except (KeyError, IndexError):
            raise UnboundVariable(f"x{term.index} is not assigned") from None
    if len(term.children) != op.arity:
        raise ArityMismatch(f"product with {len(term.children)} factors for a {op.arity}-ary operation")
    return op(*(eval_term(c, op, assignment) for c in term.children))


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an identity check.

    ``counterexample`` maps variable index to a value (a 0-based symbol, or a
    canonical operation index for lifted checks).  ``exhaustive`` is False
    when only a sample was examined.
    """

    holds: bool
    counterexample: dict | None
    exhaustive: bool
    checked: int

    def __bool__(self):
        return self.holds

    @property
    def mode(self) -> str:
        return "exhaustive" if self.exhaustive else "probabilistic"


def _arity_of(lhs, rhs):
    for t in (lhs, rhs):
        if isinstance(t, App):
            return len(t.children)
    return None


def _digits(k, base, width):
    w = base ** np.arange(width - 1, -1, -1, dtype=np.int64)
    return (k[:, None] // w[None, :]) % base


def _first_failure(op, lhs, rhs, t, start, stop):
    k = np.arange(start, stop, dtype=np.int64)
    d = _digits(k, op.order, t)
    env = {i + 1: d[:, i] for i in range(t)}
    diff = np.broadcast_to(eval_term(lhs, op, env) != eval_term(rhs, op, env), k.shape)
    bad = np.flatnonzero(diff)
    return [int(start + bad[0])] if bad.size else []


def satisfies_identity(op: MultaryOperation, lhs, rhs, guard: int = IDENTITY_GUARD, jobs: int = 1) -> IdentityCheck:
    """Check lhs = rhs under every assignment of X^t, t = largest variable index.

    Assignments are scanned in lexicographic order (x1 most significant); the
    first failing one is reported.
    """
    m = _arity_of(lhs, rhs)
    if m is not None and m != op.arity:
        raise ArityMismatch(f"terms are {m}-ary but the operation is {op.arity}-ary")
    t = max(variables(lhs) | variables(rhs))
    total = op.order**t
    if total > guard:
        raise CapacityExceeded(f"{total} assignments exceed the guard of {guard}")
    fails = parallel.scan(_first_failure, total, (op, lhs, rhs, t), jobs=jobs, limit=guard, chunk=_BATCH)
    if not fails:
        return IdentityCheck(True, None, True, total)
    k = min(fails)
    digits = _digits(np.array([k]), op.order, t)[0]
    return IdentityCheck(False, {i + 1: int(v) for i, v in enumerate(digits)}, True, k + 1)


def lifted_identity_check(
    f: MultaryOperation,
    component_arity: int,
    lhs,
    rhs,
    guard: int = IDENTITY_GUARD,
    samples: int = LIFTED_SAMPLES,
    seed: int = LIFTED_SEED,
) -> IdentityCheck:
    """Check lhs = rhs in the groupoid of n-ary operations combined through f.

    Variables range over all n-ary operations on f's symbols.  Exhaustive (in
    lexicographic order of canonical indices) when there are at most ``guard``
    assignments.  Otherwise every assignment of constant maps is tried first,
    followed by ``samples`` uniformly random assignments from a fixed seed;
    the result is then marked non-exhaustive.
    """
    m = _arity_of(lhs, rhs)
    if m is not None and m != f.arity:
        raise ArityMismatch(f"terms are {m}-ary but the operation is {f.arity}-ary")
    q = f.order
    width = q**component_arity
    if width > COMPONENT_TABLE_CAP:
        raise CapacityExceeded(f"component tables of {width} entries exceed the cap of {COMPONENT_TABLE_CAP}")
    t = max(variables(lhs) | variables(rhs))
    carrier = operation_count(component_arity, q)

    def failing(tables):
        # tables: (B, t, width) -> index of first failing row or None
        env = {i + 1: tables[:, i, :] for i in range(t)}
        diff = np.broadcast_to(eval_term(lhs, f, env) != eval_term(rhs, f, env), tables.shape[::2])
        rows = np.flatnonzero(diff.any(axis=1))
        return int(rows[0]) if rows.size else None

    rows_per_batch = max(1, (1 << 21) // (t * width))
    if carrier**t <= guard:
        elements = tables_in_range(component_arity, q, 0, carrier)
        total = carrier**t
        for start in range(0, total, rows_per_batch):
            k = np.arange(start, min(start + rows_per_batch, total), dtype=np.int64)
            d = _digits(k, carrier, t)
            row = failing(elements[d])
            if row is not None:
                return IdentityCheck(False, {i + 1: int(v) for i, v in enumerate(d[row])}, True, start + row + 1)
        return IdentityCheck(True, None, True, total)

    def to_index(table):
        idx = 0
        for v in table.tolist():
            idx = idx * q + v
        return idx

    def batches():
        consts = _digits(np.arange(q**t, dtype=np.int64), q, t)
        for start in range(0, len(consts), rows_per_batch):
            yield np.repeat(consts[start:start + rows_per_batch, :, None], width, axis=2)
        rng = np.random.default_rng(seed)
        left = samples
        while left > 0:
            b = min(left, rows_per_batch)
            yield rng.integers(0, q, size=(b, t, width))
            left -= b

    checked = 0
    for tables in batches():
        row = failing(tables)
        if row is not None:
            cex = {i + 1: to_index(tables[row, i]) for i in range(t)}
            return IdentityCheck(False, cex, False, checked + row + 1)
        checked += len(tables)
    return IdentityCheck(True, None, False, checked)


# identities used by the preservation checks; all binary
CATALOG = {
    "commutativity": "{x1,x2} = {x2,x1}",
    "associativity": "{{x1,x2},x3} = {x1,{x2,x3}}",
    "idempotence": "{x1,x1} = x1",
    "mediality": "{{x1,x2},{x3,x4}} = {{x1,x3},{x2,x4}}",
    "left-projection": "{x1,x2} = x1",
    "left-distributivity": "{x1,{x2,x3}} = {{x1,x2},{x1,x3}}",
}
