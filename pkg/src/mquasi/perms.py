"""Command-line permutation syntax.

Accepts one-line image notation (``"2 3 1 4 5"``) or cycle notation
(``"(2 3 5)"``, ``"(1 2)(3 4)"``, ``"()"``), 1-based.  Fixed points may be
omitted in cycle form.  Returns 0-based image tuples.
"""

from __future__ import annotations

import re

from .errors import NotAPermutation

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, size: int) -> tuple[int, ...]:
    text = text.strip()
    if text.startswith("("):
        if _CYCLE.sub("", text).strip():
            raise NotAPermutation(f"malformed cycle notation {text!r}")
        image = list(range(size))
        seen = set()
        for body in _CYCLE.findall(text):
            points = [int(p) - 1 for p in body.replace(",", " ").split()]
            for p in points:
                if not 0 <= p < size or p in seen:
                    raise NotAPermutation(f"bad or repeated point {p + 1} in {text!r}")
                seen.add(p)
            for a, b in zip(points, points[1:] + points[:1]):
                image[a] = b
        return tuple(image)
    try:
        image = [int(p) - 1 for p in text.replace(",", " ").split()]
    except ValueError:
        raise NotAPermutation(f"cannot read permutation {text!r}") from None
    if sorted(image) != list(range(size)):
        raise NotAPermutation(f"{text!r} is not a permutation of 1..{size}")
    return tuple(image)


def format_cycles(perm) -> str:
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = []
        x = start
        while x not in seen:
            seen.add(x)
            cycle.append(x + 1)
            x = perm[x]
        out.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(out) or "()"
