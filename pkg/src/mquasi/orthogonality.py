"""Orthogonal operation sets, Ort(S), quasigroup enumeration and the
quasigroup/Ort(S) correspondence."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import core, parallel
from .core import (
    MultaryOperation,
    _raw,
    canonical_index,
    from_index,
    is_latin_transversal,
    is_quasigroup,
    lines,
    operation_count,
    projection,
    same_order,
    tables_in_range,
)
from .errors import ArityMismatch, CapacityExceeded, NotOrthogonalBase, PreconditionFailed
from .superposition import superpose


@dataclass(frozen=True)
class OperationSet:
    """An ordered list of m operations, each m-ary, on a common symbol set."""

    ops: tuple

    def __post_init__(self):
        ops = tuple(self.ops)
        object.__setattr__(self, "ops", ops)
        if not ops:
            raise ArityMismatch("an operation set needs at least one member")
        for g in ops:
            if g.arity != len(ops):
                raise ArityMismatch(f"a set of {len(ops)} operations must contain {len(ops)}-ary operations")
        same_order(*ops)

    @property
    def arity(self) -> int:
        return len(self.ops)

    @property
    def order(self) -> int:
        return self.ops[0].order

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def replace(self, i: int, g: MultaryOperation) -> "OperationSet":
        ops = list(self.ops)
        ops[i] = g
        return OperationSet(tuple(ops))

    @classmethod
    def projections(cls, arity: int, order: int) -> "OperationSet":
        return cls(tuple(projection(arity, order, i) for i in range(arity)))


def _codes(tables, n):
    # tables: sequence of m arrays of equal shape (..., n**m); joint value code
    code = 0
    for t in tables:
        code = code * n + t
    return code


def _is_bijective_rows(codes):
    # codes: (k, N) with values in [0, N); a row is bijective iff it is a permutation
    return (np.sort(codes, axis=-1) == np.arange(codes.shape[-1])).all(axis=-1)


def is_orthogonal_set(s: OperationSet) -> bool:
    codes = _codes([g.table for g in s], s.order)
    return bool(_is_bijective_rows(codes[None, :])[0])


def _require_orthogonal(s):
    if not is_orthogonal_set(s):
        raise NotOrthogonalBase("the operation set is not orthogonal")


def _ort_mask(base_tables, n, candidates):
    # candidates: (k, n**m); True where substituting the candidate for each
    # member in turn keeps the set orthogonal
    m = len(base_tables)
    ok = np.ones(len(candidates), dtype=bool)
    for i in range(m):
        cols = [np.broadcast_to(t, candidates.shape) for t in base_tables]
        cols[i] = candidates
        ok &= _is_bijective_rows(_codes(cols, n))
    return ok


def ort_contains(s: OperationSet, g: MultaryOperation) -> bool:
    _require_orthogonal(s)
    if g.arity != s.arity:
        raise ArityMismatch(f"Ort of a {s.arity}-set holds {s.arity}-ary operations")
    same_order(g, *s)
    return bool(_ort_mask([h.table for h in s], s.order, g.table[None, :])[0])


def _ort_chunk(base_tables, n, m, start, stop):
    cand = tables_in_range(m, n, start, stop)
    return (start + np.flatnonzero(_ort_mask(base_tables, n, cand))).tolist()


def ort_indices(s: OperationSet, jobs: int = 1, limit: int | None = None) -> list[int]:
    """Canonical indices of Ort(s), ascending."""
    _require_orthogonal(s)
    m, n = s.arity, s.order
    total = operation_count(m, n)
    return parallel.scan(_ort_chunk, total, ([g.table for g in s], n, m), jobs=jobs, limit=limit)


def enumerate_ort(s: OperationSet, jobs: int = 1, stream: bool = False):
    """Yield every member of Ort(s) in canonical order.

    The candidate space has n**(n**m) elements; beyond the scan guard the
    caller must pass ``stream=True`` to walk it chunk by chunk.
    """
    _require_orthogonal(s)
    m, n = s.arity, s.order
    total = operation_count(m, n)
    if total <= core.MAX_SCAN or not stream:
        for k in ort_indices(s, jobs=jobs):
            yield from_index(m, n, k)
        return
    base = [g.table for g in s]
    for start, stop in parallel.chunks(total):
        for k in _ort_chunk(base, n, m, start, stop):
            yield from_index(m, n, k)


def ort_count(s: OperationSet, jobs: int = 1) -> int:
    return len(ort_indices(s, jobs=jobs))


# largest order enumerated by default, per arity
_QUASIGROUP_FEASIBLE = {1: 8, 2: 5, 3: 3}


def enumerate_quasigroups(arity: int, order: int, *, cell_order=None, descending: bool = False, force: bool = False):
    """Yield every m-ary quasigroup (Latin hypercube) on ``order`` symbols.

    Cells are filled one at a time, pruning any symbol already present on
    one of the cell's axis-parallel lines.  With the default cell order (flat
    index) and ascending symbols the output is in canonical-index order.
    ``cell_order`` and ``descending`` give differently ordered passes over the
    same search space.
    """
    if not force and order > _QUASIGROUP_FEASIBLE.get(arity, 2):
        raise CapacityExceeded(f"enumerating {arity}-ary quasigroups of order {order} is beyond the default guard")
    n, m = order, arity
    size = n**m
    cells = list(range(size)) if cell_order is None else list(cell_order)
    if sorted(cells) != list(range(size)):
        raise ValueError("cell_order must be a permutation of the flat indices")
    coords = np.indices((n,) * m).reshape(m, -1).T
    # line id of a cell along axis i: axis * n**(m-1) + flat index with coordinate i removed
    line_ids = []
    for c in coords.tolist():
        ids = []
        for i in range(m):
            rest = 0
            for j in range(m):
                if j != i:
                    rest = rest * n + c[j]
            ids.append(i * n ** (m - 1) + rest)
        line_ids.append(ids)
    used = [0] * (m * n ** (m - 1))
    table = [0] * size
    symbols = list(range(n - 1, -1, -1)) if descending else list(range(n))
    full = (1 << n) - 1

    def fill(pos):
        if pos == size:
            yield _raw(m, n, table)
            return
        cell = cells[pos]
        ids = line_ids[cell]
        busy = 0
        for lid in ids:
            busy |= used[lid]
        if busy == full:
            return
        for sym in symbols:
            bit = 1 << sym
            if busy & bit:
                continue
            table[cell] = sym
            for lid in ids:
                used[lid] |= bit
            yield from fill(pos + 1)
            for lid in ids:
                used[lid] ^= bit

    yield from fill(0)


def solve_for_f(h: MultaryOperation, s: OperationSet) -> MultaryOperation:
    """The unique f with superpose(f, s) == h."""
    _require_orthogonal(s)
    if h.arity != s.arity:
        raise ArityMismatch("h must have the arity of the operation set")
    same_order(h, *s)
    codes = _codes([g.table for g in s], s.order)
    table = np.empty_like(h.table)
    table[codes] = h.table
    return _raw(s.arity, s.order, table)


@dataclass(frozen=True)
class TransversalVerdict:
    """Per-line transversal test of a superposition.

    ``failure`` is None when every line maps to a Latin transversal; otherwise
    ``(axis, line_cells, image_cells)`` for the first line that does not.
    """

    latin: bool
    lines_checked: int
    failure: tuple | None = None

    def __bool__(self):
        return self.latin


def transversal_family(f: MultaryOperation, gs) -> TransversalVerdict:
    gs = list(gs)
    if not is_quasigroup(f):
        raise PreconditionFailed("outer operation is not a quasigroup")
    if len(gs) != f.arity:
        raise ArityMismatch(f"{f.arity} component operations required")
    for k, g in enumerate(gs):
        if not is_quasigroup(g):
            raise PreconditionFailed(f"component {k + 1} is not a quasigroup")
    arities = {g.arity for g in gs}
    if len(arities) != 1:
        raise ArityMismatch("components must share an arity")
    same_order(f, *gs)
    n_ary = arities.pop()
    count = 0
    for axis, cells in lines(n_ary, f.order):
        count += 1
        image = [tuple(int(g(*c)) for g in gs) for c in cells]
        if not is_latin_transversal(f, image):
            return TransversalVerdict(False, count, (axis, cells, image))
    return TransversalVerdict(True, count)


@dataclass
class BijectionReport:
    quasigroup_count: int
    ort_count: int
    injective: bool
    all_in_ort: bool
    surjective: bool
    roundtrip_ok: bool
    certificates: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return (
            self.injective
            and self.all_in_ort
            and self.surjective
            and self.roundtrip_ok
            and self.quasigroup_count == self.ort_count
        )


def verify_bijection(s: OperationSet, jobs: int = 1) -> BijectionReport:
    """Check that f -> superpose(f, s) maps the quasigroups onto Ort(s) bijectively."""
    _require_orthogonal(s)
    m, n = s.arity, s.order
    ort = ort_indices(s, jobs=jobs)
    ort_set = set(ort)
    certs = []
    images = {}
    injective = all_in_ort = roundtrip = True
    q_count = 0
    for f in enumerate_quasigroups(m, n):
        q_count += 1
        h = superpose(f, s)
        k = canonical_index(h)
        if k in images:
            injective = False
            certs.append(("collision", canonical_index(images[k]), canonical_index(f)))
        images.setdefault(k, f)
        if k not in ort_set:
            all_in_ort = False
            certs.append(("outside-ort", canonical_index(f), k))
        if solve_for_f(h, s) != f:
            roundtrip = False
            certs.append(("roundtrip", canonical_index(f)))
    missed = [k for k in ort if k not in images]
    if missed:
        certs.append(("unhit", missed[0]))
    return BijectionReport(q_count, len(ort), injective, all_in_ort, not missed, roundtrip, certs)


def orthogonal_pairs(order: int, *, skip_projections: bool = True):
    """Yield binary orthogonal pairs (g1, g2) in canonical order of (g1, g2).

    Only balanced g1 (every symbol n times) can have a mate, so others are
    skipped.  With ``skip_projections`` neither member is a projection.
    """
    n = order
    total = operation_count(2, n)
    if total > core.MAX_SCAN:
        raise CapacityExceeded(f"{total} binary operations exceed the scan guard")
    tables = tables_in_range(2, n, 0, total)
    projs = {canonical_index(projection(2, n, i)) for i in range(2)}
    counts = np.stack([(tables == v).sum(axis=1) for v in range(n)], axis=1)
    balanced = np.flatnonzero((counts == n).all(axis=1))
    for i in balanced.tolist():
        if skip_projections and i in projs:
            continue
        codes = tables[i][None, :] * n + tables[balanced]
        for j in balanced[_is_bijective_rows(codes)].tolist():
            if skip_projections and j in projs:
                continue
            yield from_index(2, n, i), from_index(2, n, j)
