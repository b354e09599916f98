"""Diagram simplification by bounded Reidemeister search.

Greedy reduction applies untangling moves while any exists. The full
simplifier then runs a deterministic best-first search over R3 slides and
capped R1/R2 inflation, expanding small diagrams first; the inflation cap
is measured against the smallest diagram seen so far, so the frontier
tightens as progress is made. Everything is keyed on canonical PD strings,
which makes reruns byte-identical.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from knotgenus.diagram import Diagram
from knotgenus.moves import r1_insertions, r2_insertions, r3_moves, reductions

__all__ = ["SimplifyBudget", "greedy_reduce", "simplify"]


@dataclass(frozen=True)
class SimplifyBudget:
    max_moves: int = 10_000
    inflation: int = 2
    # abandon the search after this many expansions without a new best;
    # proving a local minimum by exhausting the frontier is never worth it
    stall: int = 400


def greedy_reduce(diagram: Diagram) -> Diagram:
    cur = diagram
    while True:
        opts = reductions(cur)
        if not opts:
            return cur
        cur = opts[0]


def simplify(diagram: Diagram, budget: SimplifyBudget = SimplifyBudget()) -> Diagram:
    cur = greedy_reduce(diagram)
    if cur.n == 0:
        return cur
    best = cur
    seen = {cur.canonical_pd()}
    counter = 0
    heap = [(cur.n, cur.canonical_pd(), counter, cur)]
    moves = 0
    idle = 0
    while heap and moves < budget.max_moves and idle < budget.stall:
        _, _, _, node = heapq.heappop(heap)
        moves += 1
        idle += 1
        cap = best.n + budget.inflation
        neighbors = reductions(node) + r3_moves(node)
        if node.n + 1 <= cap:
            neighbors += r1_insertions(node)
        if node.n + 2 <= cap:
            neighbors += r2_insertions(node)
        for nb in neighbors:
            if nb.n > cap:
                continue
            key = nb.canonical_pd()
            if key in seen:
                continue
            seen.add(key)
            if (nb.n, key) < (best.n, best.canonical_pd()):
                best = nb
                idle = 0
                if best.n == 0:
                    return best
            counter += 1
            heapq.heappush(heap, (nb.n, key, counter, nb))
    return best
