"""The superposition operator and the operations derived from it.

``superpose(f, [g_1, ..., g_m])`` is the n-ary operation
``a -> f(g_1(a), ..., g_m(a))``.  For binary ``f`` that is a quasigroup this is
the Hadamard quasigroup product of the Cayley tables of ``g_1`` and ``g_2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import parallel
from .core import (
    MultaryOperation,
    _raw,
    check_table_size,
    from_index,
    index_weights,
    is_quasigroup,
    operation_count,
    projection,
    same_order,
    tables_in_range,
)
from .errors import ArityMismatch, CapacityExceeded, NotAQuasigroup, SymbolOutOfRange

# Largest |Omega_n(X)| that lift_operation will materialize.
LIFT_CARRIER_CAP = 4096


def constant_map(arity: int, order: int, c: int) -> MultaryOperation:
    if not 0 <= c < order:
        raise SymbolOutOfRange(f"symbol {c} outside 0..{order - 1}")
    check_table_size(order**arity)
    return _raw(arity, order, np.full(order**arity, c, dtype=np.int64))


def superpose(f: MultaryOperation, gs) -> MultaryOperation:
    gs = list(gs)
    if len(gs) != f.arity:
        raise ArityMismatch(f"outer operation is {f.arity}-ary but {len(gs)} components given")
    arities = {g.arity for g in gs}
    if len(arities) != 1:
        raise ArityMismatch(f"components have different arities: {sorted(arities)}")
    same_order(f, *gs)
    return _raw(gs[0].arity, f.order, f(*(g.table for g in gs)))


@dataclass(frozen=True)
class HadamardProduct:
    """Result of :func:`hadamard_product`.

    ``certified`` is False when the outer operation is not a quasigroup; the
    table is still the superposition.
    """

    operation: MultaryOperation
    certified: bool


def hadamard_product(star, a, b) -> HadamardProduct:
    for op in (star, a, b):
        if op.arity != 2:
            raise ArityMismatch("the Hadamard product takes binary operations")
    return HadamardProduct(superpose(star, [a, b]), is_quasigroup(star))


def _binary(*ops):
    for op in ops:
        if op.arity != 2:
            raise ArityMismatch("expected binary operations")
    return same_order(*ops)


def tri_right(asterisk, star) -> MultaryOperation:
    """``(a*b) star b``."""
    n = _binary(asterisk, star)
    return superpose(star, [asterisk, projection(2, n, 1)])


def tri_symmetric(asterisk, star) -> MultaryOperation:
    """``(a*b) star (b*a)``."""
    _binary(asterisk, star)
    transposed = _raw(2, asterisk.order, asterisk.as_array().T.reshape(-1))
    return superpose(star, [asterisk, transposed])


def self_superpose(f, g) -> MultaryOperation:
    """``f + g``: superpose f on m copies of g (g must also be m-ary)."""
    if f.arity != g.arity:
        raise ArityMismatch("f + g needs operations of equal arity")
    return superpose(f, [g] * f.arity)


@dataclass(frozen=True)
class LiftedGroupoid:
    """The groupoid of component operations combined through ``base``.

    Symbol ``k`` of ``table`` stands for ``from_index(component_arity, order, k)``.
    """

    base: MultaryOperation
    component_arity: int
    table: MultaryOperation

    @property
    def carrier_size(self) -> int:
        return self.table.order

    @staticmethod
    def label(k: int) -> str:
        return f"g{k + 1}"


def lift_operation(f: MultaryOperation, component_arity: int, cap: int = LIFT_CARRIER_CAP) -> LiftedGroupoid:
    q, m, n = f.order, f.arity, component_arity
    carrier = operation_count(n, q)
    if carrier > cap:
        raise CapacityExceeded(f"|Omega_{n}| = {carrier} exceeds the lift cap of {cap}")
    check_table_size(carrier**m)
    elements = tables_in_range(n, q, 0, carrier)  # (C, q**n)
    to_index = index_weights(n, q)
    rest = carrier ** (m - 1)
    out = np.empty(carrier**m, dtype=np.int64)
    # chunk over the first argument so peak memory stays at C**(m-1) tables
    idx = np.indices((carrier,) * (m - 1)).reshape(m - 1, rest)
    for first in range(carrier):
        comps = [np.broadcast_to(elements[first], (rest, elements.shape[1]))]
        comps += [elements[idx[j]] for j in range(m - 1)]
        tables = f(*comps)
        out[first * rest:(first + 1) * rest] = tables @ to_index
    return LiftedGroupoid(f, n, _raw(m, carrier, out))


def is_distributive_over(asterisk, star, side: str = "both") -> bool:
    """Left distributivity ``a*(b star c) = (a*b) star (a*c)``; with
    ``side="both"`` also ``(a star b)*c = (a*c) star (b*c)``."""
    n = _binary(asterisk, star)
    return bool(_distributive_mask(asterisk.table[None, :], star, n, side)[0])


def _distributive_mask(tables, star, n, side):
    # tables: (k, n*n) candidate '*' operations; returns a boolean mask
    a, b, c = (x.reshape(-1) for x in np.indices((n, n, n)))
    mul = lambda x, y: tables[:, x * n + y]  # noqa: E731
    bc = star(b, c)
    ok = (mul(a, bc) == star(mul(a, b), mul(a, c))).all(axis=1)
    if side == "both":
        ab = star(a, b)
        ok &= (mul(ab, c) == star(mul(a, c), mul(b, c))).all(axis=1)
    elif side != "left":
        raise ValueError(f"side must be 'both' or 'left', not {side!r}")
    return ok


def _mult_chunk(star_table, n, side, start, stop):
    star = _raw(2, n, star_table)
    tables = tables_in_range(2, n, start, stop)
    return (start + np.flatnonzero(_distributive_mask(tables, star, n, side))).tolist()


def mult_set(star, side: str = "both", jobs: int = 1, limit: int | None = None) -> list[MultaryOperation]:
    """Every binary operation distributive over ``star``, canonical order."""
    n = _binary(star)
    hits = parallel.scan(_mult_chunk, operation_count(2, n), (star.table, n, side), jobs=jobs, limit=limit)
    return [from_index(2, n, k) for k in hits]


@dataclass(frozen=True)
class HadamardCycle:
    preperiod: int
    period: int
    trajectory: tuple[MultaryOperation, ...]


def iterate_hadamard_cycle(star, max_steps: int | None = None) -> HadamardCycle:
    """Iterate ``h_0 = star``, ``h_{k+1} = superpose(star, [h_k, h_k])``.

    The trajectory runs from ``h_0`` up to the first repeated operation
    (exclusive); the cycle starts at ``trajectory[preperiod]``.
    """
    _binary(star)
    if not is_quasigroup(star):
        raise NotAQuasigroup("iterated Hadamard products need a quasigroup")
    seen = {}
    traj = []
    h = star
    while h not in seen:
        if max_steps is not None and len(traj) >= max_steps:
            raise CapacityExceeded(f"no repeat within {max_steps} steps")
        seen[h] = len(traj)
        traj.append(h)
        h = superpose(star, [h, h])
    start = seen[h]
    return HadamardCycle(start, len(traj) - start, tuple(traj))
