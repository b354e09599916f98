"""Braid words and their closures as knot diagrams.

A word is a sequence of nonzero ints: letter i crosses strand positions
i and i+1 with a positive crossing, -i with a negative one, so the writhe
of the closure equals the sum of letter signs. Closures must be knots:
the word's permutation has to be a single cycle over the strands.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from knotgenus.diagram import Crossing, Diagram, UNKNOT
from knotgenus.errors import DiagramError

__all__ = [
    "braid_diagram",
    "braid_strands",
    "closure_is_knot",
    "shift_word",
    "concat_words",
    "torus_word",
    "mirror_word",
]


def braid_strands(word: Sequence[int]) -> int:
    if any(not isinstance(x, int) or x == 0 for x in word):
        raise DiagramError("braid letters must be nonzero integers")
    return max((abs(x) for x in word), default=0) + 1


def closure_is_knot(word: Sequence[int], strands: int | None = None) -> bool:
    k = strands if strands is not None else braid_strands(word)
    perm = list(range(k))
    for x in word:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen, p, count = set(), 0, 0
    while p not in seen:
        seen.add(p)
        p = perm[p]
        count += 1
    return count == k


def braid_diagram(word: Iterable[int], strands: int | None = None) -> Diagram:
    word = list(word)
    k = strands if strands is not None else braid_strands(word)
    if k <= 1 or not word:
        if closure_is_knot(word, max(k, 1)):
            return UNKNOT
        raise DiagramError("closure has more than one component")
    if not closure_is_knot(word, k):
        raise DiagramError("closure has more than one component")

    top = list(range(1, k + 1))  # arc flowing down at each position
    cur = top[:]
    next_arc = k + 1
    crossings = []
    for x in word:
        i = abs(x) - 1
        fresh_a, fresh_b = next_arc, next_arc + 1
        next_arc += 2
        if x > 0:
            # over-strand enters from position i+1; under runs NW to SE
            arcs = (cur[i], fresh_b, fresh_a, cur[i + 1])
            sign = 1
        else:
            # over-strand enters from position i; under runs NE to SW
            arcs = (cur[i + 1], cur[i], fresh_a, fresh_b)
            sign = -1
        crossings.append(Crossing(arcs, sign))
        if x > 0:
            cur[i], cur[i + 1] = fresh_b, fresh_a
        else:
            cur[i], cur[i + 1] = fresh_a, fresh_b
    # close round the back: bottom arc at position p is the top arc there
    sub = {cur[p]: top[p] for p in range(k)}
    closed = [
        Crossing(tuple(sub.get(a, a) for a in c.arcs), c.sign)
        for c in crossings
    ]
    # compact ids to 1..2n
    order = {}
    for c in closed:
        for a in c.arcs:
            order.setdefault(a, len(order) + 1)
    return Diagram(
        Crossing(tuple(order[a] for a in c.arcs), c.sign) for c in closed
    )


def shift_word(word: Sequence[int], by: int) -> tuple[int, ...]:
    """Move a word onto higher strand positions, preserving signs."""
    return tuple(x + by if x > 0 else x - by for x in word)


def concat_words(w1: Sequence[int], w2: Sequence[int]) -> tuple[int, ...]:
    """Word whose closure is the connected sum of the two closures."""
    k1 = braid_strands(w1)
    return tuple(w1) + shift_word(w2, k1 - 1)


def torus_word(p: int, q: int) -> tuple[int, ...]:
    """(p,q) torus knot as the closure of (s_1 ... s_{p-1})^q."""
    if p < 2 or q < 2:
        raise DiagramError("torus parameters must be at least 2")
    return tuple(i for _ in range(q) for i in range(1, p))


def mirror_word(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in word)
