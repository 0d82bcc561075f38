"""Isotopisms, conjugates and isomorphism search.

Permutations are tuples of 0-based images: ``p[x]`` is the image of ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import MultaryOperation, _raw, decode_flat, same_order
from .errors import (
    ArityMismatch,
    CapacityExceeded,
    NotAPermutation,
    NotTotal,
)

ISOMORPHISM_ORDER_GUARD = 12


def check_permutation(p, size: int) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(size)):
        raise NotAPermutation(f"{p} is not a permutation of 0..{size - 1}")
    return p


def invert(p) -> tuple[int, ...]:
    inv = [0] * len(p)
    for x, y in enumerate(p):
        inv[y] = x
    return tuple(inv)


def compose(p, q) -> tuple[int, ...]:
    """``p after q``."""
    return tuple(p[q[x]] for x in range(len(q)))


@dataclass(frozen=True)
class Isotopism:
    maps: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(tuple(m) for m in self.maps))

    @classmethod
    def isomorphism(cls, perm, arity: int) -> "Isotopism":
        return cls((tuple(perm),) * (arity + 1))


@dataclass(frozen=True)
class ConjugationPerm:
    """A permutation of the m+1 positions (arguments, then result), 0-based."""

    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", check_permutation(self.perm, len(self.perm)))

    def inverse(self) -> "ConjugationPerm":
        return ConjugationPerm(invert(self.perm))


def _coords(op: MultaryOperation) -> np.ndarray:
    return np.indices((op.order,) * op.arity).reshape(op.arity, -1)


def apply_isotopism(op: MultaryOperation, iso: Isotopism) -> MultaryOperation:
    """The operation g with g(p_1(a_1), ..., p_m(a_m)) = p_{m+1}(op(a))."""
    if len(iso.maps) != op.arity + 1:
        raise ArityMismatch(f"an isotopism of a {op.arity}-ary operation has {op.arity + 1} maps")
    maps = [np.array(check_permutation(p, op.order)) for p in iso.maps]
    coords = _coords(op)
    src = op.flat_index([np.argsort(maps[i])[coords[i]] for i in range(op.arity)])
    return _raw(op.arity, op.order, maps[-1][op.table[src]])


def post_compose(op: MultaryOperation, pi) -> MultaryOperation:
    pi = np.array(check_permutation(pi, op.order))
    return _raw(op.arity, op.order, pi[op.table])


def conjugate(op: MultaryOperation, sigma) -> MultaryOperation:
    """The sigma-conjugate: g(t[s(1)], ..., t[s(m)]) = t[s(m+1)] for every
    tuple t = (a_1, ..., a_m, op(a)) of the graph of ``op``.

    The permuted graph has exactly as many tuples as there are cells, so it
    fails to be single-valued exactly when it leaves some cell undefined.
    That case raises NotTotal with the first undefined argument tuple as
    ``certificate``.
    """
    if not isinstance(sigma, ConjugationPerm):
        sigma = ConjugationPerm(tuple(sigma))
    s = sigma.perm
    if len(s) != op.arity + 1:
        raise ArityMismatch(f"a conjugation of a {op.arity}-ary operation permutes {op.arity + 1} positions")
    graph = np.vstack([_coords(op), op.table[None, :]])
    args = graph[list(s[:-1])]
    values = graph[s[-1]]
    flat = op.flat_index(list(args))
    counts = np.bincount(flat, minlength=op.table.size)
    if (counts == 0).any():
        hole = decode_flat(int(np.flatnonzero(counts == 0)[0]), op.arity, op.order)
        raise NotTotal(f"conjugate undefined at arguments {hole}", hole)
    # every cell is hit and there are as many tuples as cells: hits are unique
    table = np.empty_like(op.table)
    table[flat] = values
    return _raw(op.arity, op.order, table)


def is_isomorphism(a: MultaryOperation, b: MultaryOperation, perm) -> bool:
    if a.arity != b.arity or a.order != b.order:
        return False
    perm = check_permutation(perm, a.order)
    return apply_isotopism(a, Isotopism.isomorphism(perm, a.arity)) == b


def find_isomorphism(a: MultaryOperation, b: MultaryOperation):
    """Some permutation p with b(p(a_1), ..., p(a_m)) = p(a(a_1, ..., a_m)).

    Backtracks over the images of 0, 1, ... in increasing order, forcing
    images of products as soon as their arguments are mapped.  Returns None
    when the operations are not isomorphic.
    """
    if a.arity != b.arity:
        raise ArityMismatch("operations of different arity are never isomorphic")
    n = same_order(a, b)
    if n > ISOMORPHISM_ORDER_GUARD:
        raise CapacityExceeded(f"isomorphism search is limited to order {ISOMORPHISM_ORDER_GUARD}")
    if sorted(np.bincount(a.table, minlength=n)) != sorted(np.bincount(b.table, minlength=n)):
        return None
    m = a.arity
    cube_a = a.as_array()
    cube_b = b.as_array()

    def propagate(pi, used):
        # extend pi with forced images until stable; None on contradiction
        pi = dict(pi)
        used = set(used)
        changed = True
        while changed:
            changed = False
            dom = sorted(pi)
            for args in np.ndindex(*(len(dom),) * m):
                src = tuple(dom[k] for k in args)
                val = int(cube_a[src])
                img = int(cube_b[tuple(pi[x] for x in src)])
                if val in pi:
                    if pi[val] != img:
                        return None
                elif img in used:
                    return None
                else:
                    pi[val] = img
                    used.add(img)
                    changed = True
                    break
        return pi, used

    def search(pi, used):
        if len(pi) == n:
            return pi
        x = min(set(range(n)) - set(pi))
        for y in range(n):
            if y in used:
                continue
            res = propagate({**pi, x: y}, used | {y})
            if res is not None:
                found = search(*res)
                if found is not None:
                    return found
        return None

    found = search({}, set())
    if found is None:
        return None
    perm = tuple(found[x] for x in range(n))
    if not is_isomorphism(a, b, perm):  # pragma: no cover - defensive
        raise AssertionError("isomorphism search returned an invalid witness")
    return perm
