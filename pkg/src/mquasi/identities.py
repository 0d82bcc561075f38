"""Identity elements and inverses of m-ary groupoids."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import MultaryOperation
from .errors import NotAMonoid, PositionOutOfRange


@dataclass(frozen=True)
class IdentityReport:
    per_position: tuple[frozenset, ...]
    intersection: frozenset

    @property
    def is_monoid(self) -> bool:
        return bool(self.intersection)


def _slot_values(op: MultaryOperation, fill, free, i):
    # op(fill, ..., fill, free, fill, ...) with ``free`` in slot i; vectorized
    args = [fill] * op.arity
    args[i] = free
    return op(*args)


def i_identity_set(op: MultaryOperation, i: int) -> frozenset:
    """Elements e with f(e,..,e,a,e,..,e) = a for every a, where i copies of
    e follow the free argument a.

    For binary operations I_0 holds the left identities (e*a = a) and I_1 the
    right identities.
    """
    if not 0 <= i < op.arity:
        raise PositionOutOfRange(f"position {i} outside 0..{op.arity - 1}")
    n = op.order
    e = np.arange(n)[:, None]
    a = np.arange(n)[None, :]
    ok = (_slot_values(op, e, a, op.arity - 1 - i) == a).all(axis=1)
    return frozenset(np.flatnonzero(ok).tolist())


def identity_set(op: MultaryOperation) -> IdentityReport:
    per = tuple(i_identity_set(op, i) for i in range(op.arity))
    return IdentityReport(per, frozenset.intersection(*per))


def inverses(op: MultaryOperation, a: int, identities=None) -> frozenset:
    """All b such that one identity e satisfies f(a,..,b,..,a) = e in every slot.

    A single witness e is shared by all slots.
    """
    ident = identity_set(op).intersection if identities is None else identities
    if not ident:
        raise NotAMonoid("operation has no identity element")
    b = np.arange(op.order)
    vals = np.stack([_slot_values(op, a, b, i) for i in range(op.arity)])
    # all slots must agree on a common value, and that value is an identity
    same = (vals == vals[0]).all(axis=0)
    hits = [int(x) for x in b[same] if int(vals[0, x]) in ident]
    return frozenset(hits)


def inverse_sets(op: MultaryOperation) -> dict[int, frozenset]:
    ident = identity_set(op).intersection
    if not ident:
        raise NotAMonoid("operation has no identity element")
    return {a: inverses(op, a, ident) for a in range(op.order)}


def has_unique_inverses(op: MultaryOperation) -> bool:
    ident = identity_set(op).intersection
    if not ident:
        return False
    return all(len(inverses(op, a, ident)) == 1 for a in range(op.order))
