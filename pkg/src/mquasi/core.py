"""Dense m-ary operations on a finite symbol set.

An operation of arity ``m`` on ``n`` symbols is stored as a flat table of
length ``n**m``.  Symbols are 0-based internally and rendered 1-based in I/O.
The flat index of ``(a_1, ..., a_m)`` is ``sum(a_i * n**(m-i))``, so the first
argument is the most significant digit (row-major for binary tables).
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import (
    ArityMismatch,
    CapacityExceeded,
    IndexOutOfRange,
    LengthMismatch,
    OrderMismatch,
    SymbolOutOfRange,
)

# n**m ceiling for any materialized table; the CLI's --guard adjusts it.
MAX_TABLE_ENTRIES = 2**27

# Candidate ceiling for full scans of Omega_m(X).
MAX_SCAN = 10**6


def check_table_size(entries: int) -> None:
    if entries > MAX_TABLE_ENTRIES:
        raise CapacityExceeded(
            f"table of {entries} entries exceeds the guard of {MAX_TABLE_ENTRIES}"
        )


class MultaryOperation:
    """An m-ary operation on the symbols ``0..order-1``.

    Instances are immutable and hashable.  Calling an operation with integer
    arguments (or equally shaped integer arrays) evaluates it.
    """

    __slots__ = ("arity", "order", "table", "_hash")

    def __init__(self, arity: int, order: int, table, *, validate: bool = True):
        if arity < 1 or order < 1:
            raise ValueError("arity and order must be positive")
        size = order**arity
        check_table_size(size)
        arr = np.array(table, dtype=np.int64).reshape(-1)
        if validate:
            if arr.size != size:
                raise LengthMismatch(
                    f"expected {size} entries for arity {arity}, order {order}; got {arr.size}"
                )
            if arr.size and (arr.min() < 0 or arr.max() >= order):
                bad = int(np.flatnonzero((arr < 0) | (arr >= order))[0])
                raise SymbolOutOfRange(
                    f"entry {bad} is {arr[bad] + 1}, outside 1..{order}"
                )
        arr.flags.writeable = False
        self.arity = arity
        self.order = order
        self.table = arr
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, MultaryOperation):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.order == other.order
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.arity, self.order, self.table.tobytes()))
        return self._hash

    def __repr__(self):
        body = " ".join(str(v + 1) for v in self.table[:32])
        if self.table.size > 32:
            body += " ..."
        return f"MultaryOperation(arity={self.arity}, order={self.order}, [{body}])"

    def __call__(self, *args):
        return self.table[self.flat_index(args)]

    @property
    def weights(self) -> np.ndarray:
        """Place values ``n**(m-1), ..., n, 1`` of the flat index."""
        return self.order ** np.arange(self.arity - 1, -1, -1, dtype=np.int64)

    def flat_index(self, args):
        """Flat index of an argument tuple; works elementwise on arrays."""
        if len(args) != self.arity:
            raise ArityMismatch(f"expected {self.arity} arguments, got {len(args)}")
        idx = 0
        for a in args:
            idx = idx * self.order + a
        return idx

    def as_array(self) -> np.ndarray:
        """The table reshaped as an m-dimensional hypercube (read-only view)."""
        return self.table.reshape((self.order,) * self.arity)

    def entries(self) -> list[int]:
        """1-based table entries in flat order."""
        return [v + 1 for v in self.table.tolist()]


def make_operation(arity: int, order: int, entries) -> MultaryOperation:
    """Build an operation from 1-based entries listed in flat order."""
    entries = list(entries)
    if len(entries) != order**arity:
        raise LengthMismatch(
            f"expected {order**arity} entries for arity {arity}, order {order}; got {len(entries)}"
        )
    for k, e in enumerate(entries):
        if not 1 <= e <= order:
            raise SymbolOutOfRange(f"entry {k} is {e}, outside 1..{order}")
    return MultaryOperation(arity, order, [e - 1 for e in entries])


def _raw(arity, order, arr) -> MultaryOperation:
    # trusted constructor for tables produced by library code
    return MultaryOperation(arity, order, arr, validate=False)


def projection(arity: int, order: int, position: int) -> MultaryOperation:
    """The operation returning its argument at 0-based ``position``."""
    coords = np.indices((order,) * arity).reshape(arity, -1)
    return _raw(arity, order, coords[position])


def evaluate(op: MultaryOperation, args) -> int:
    if len(args) != op.arity:
        raise ArityMismatch(f"expected {op.arity} arguments, got {len(args)}")
    for a in args:
        if not 0 <= a < op.order:
            raise SymbolOutOfRange(f"symbol {a} outside 0..{op.order - 1}")
    return int(op.table[op.flat_index(args)])


def decode_flat(k: int, arity: int, order: int) -> tuple[int, ...]:
    """Inverse of the flat index: the argument tuple stored at position k."""
    out = []
    for _ in range(arity):
        k, r = divmod(k, order)
        out.append(r)
    return tuple(reversed(out))


def image(op: MultaryOperation) -> list[int]:
    return np.unique(op.table).tolist()


def is_quasigroup(op: MultaryOperation) -> bool:
    """True iff every axis-parallel line of the hypercube is a permutation."""
    cube = op.as_array()
    n = op.order
    for axis in range(op.arity):
        shape = [1] * op.arity
        shape[axis] = n
        ref = np.arange(n).reshape(shape)
        if not np.array_equal(np.sort(cube, axis=axis), np.broadcast_to(ref, cube.shape)):
            return False
    return True


def is_latin_transversal(op: MultaryOperation, cells) -> bool:
    cells = [tuple(c) for c in cells]
    for c in cells:
        if len(c) != op.arity:
            raise ArityMismatch(f"cell {c} does not have {op.arity} coordinates")
    if len(cells) != op.order:
        return False
    for i in range(op.arity):
        if len({c[i] for c in cells}) != len(cells):
            return False
    values = {evaluate(op, c) for c in cells}
    return len(values) == len(cells)


def operation_count(arity: int, order: int) -> int:
    """|Omega_m(X)| = n**(n**m)."""
    return order ** (order**arity)


def canonical_index(op: MultaryOperation) -> int:
    """Base-n reading of the table, flat index 0 most significant."""
    idx = 0
    n = op.order
    for v in op.table.tolist():
        idx = idx * n + v
    return idx


def from_index(arity: int, order: int, idx: int) -> MultaryOperation:
    total = operation_count(arity, order)
    if not 0 <= idx < total:
        raise IndexOutOfRange(f"index {idx} outside 0..{total - 1}")
    size = order**arity
    check_table_size(size)
    digits = [0] * size
    for k in range(size - 1, -1, -1):
        idx, digits[k] = divmod(idx, order)
    return _raw(arity, order, digits)


def _int64_safe(arity, order):
    total = operation_count(arity, order)
    if total > 2**62:
        raise CapacityExceeded(f"|Omega_{arity}| = {order}^{order**arity} is too large to index")
    return total


def index_weights(arity: int, order: int) -> np.ndarray:
    """Place values turning a table into its canonical index (int64)."""
    size = order**arity
    _int64_safe(arity, order)
    return order ** np.arange(size - 1, -1, -1, dtype=np.int64)


def tables_in_range(arity: int, order: int, start: int, stop: int) -> np.ndarray:
    """Tables with canonical indices ``start..stop-1`` as a (k, n**m) array."""
    total = _int64_safe(arity, order)
    stop = min(stop, total)
    idx = np.arange(start, stop, dtype=np.int64)
    w = index_weights(arity, order)
    return (idx[:, None] // w[None, :]) % order


def all_tables(arity: int, order: int, limit: int | None = None) -> np.ndarray:
    """Every table of Omega_m(X) in canonical order, one per row."""
    total = _int64_safe(arity, order)
    limit = MAX_SCAN if limit is None else limit
    if total > limit:
        raise CapacityExceeded(f"{total} operations exceed the scan guard of {limit}")
    return tables_in_range(arity, order, 0, total)


def all_operations(arity: int, order: int, limit: int | None = None):
    for row in all_tables(arity, order, limit):
        yield _raw(arity, order, row)


def same_order(*ops: MultaryOperation) -> int:
    orders = {op.order for op in ops}
    if len(orders) != 1:
        raise OrderMismatch(f"operations have different orders: {sorted(orders)}")
    return orders.pop()


def lines(arity: int, order: int):
    """Yield ``(axis, cells)`` for every axis-parallel line of the hypercube.

    ``cells`` lists the m-tuples of the line in increasing order of the free
    coordinate.  Lines are ordered by axis, then by the fixed coordinates.
    """
    for axis in range(arity):
        for rest in itertools.product(range(order), repeat=arity - 1):
            yield axis, [rest[:axis] + (x,) + rest[axis:] for x in range(order)]
