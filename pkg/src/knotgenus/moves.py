"""Reidemeister moves on PD diagrams.

Reductions rewire strands exactly; insertions enumerate candidate wirings
and keep those the Diagram validator accepts as planar, so no geometric
case analysis is duplicated here. All enumerators return canonically
deduplicated lists in sorted order, which keeps seeded randomization and
search traversal reproducible.
"""

from __future__ import annotations

import random
from typing import Iterable

from knotgenus.diagram import Crossing, Diagram, UNKNOT
from knotgenus.errors import DiagramError

__all__ = [
    "make_crossing",
    "r1_reductions",
    "r1_insertions",
    "r2_reductions",
    "r2_insertions",
    "r3_moves",
    "reductions",
    "random_moves",
]

_OVER_SLOTS = (1, 3)


def make_crossing(sign: int, under_in: int, under_out: int,
                  over_in: int, over_out: int) -> Crossing:
    if sign > 0:
        return Crossing((under_in, over_out, under_out, over_in), 1)
    return Crossing((under_in, over_in, under_out, over_out), -1)


def _strand_in_slot(cr: Crossing, out_slot: int) -> int:
    """Slot where the strand leaving via out_slot entered."""
    if out_slot == 2:
        return 0
    return 3 if cr.sign > 0 else 1


def _strand_out_slot(cr: Crossing, in_slot: int) -> int:
    if in_slot == 0:
        return 2
    return 1 if cr.sign > 0 else 3


def _dedupe(diagrams: Iterable[Diagram]) -> list[Diagram]:
    by_key = {d.canonical_pd(): d for d in diagrams}
    return [by_key[k] for k in sorted(by_key)]


# -- Reidemeister 1 ---------------------------------------------------------


def r1_reductions(diagram: Diagram) -> list[Diagram]:
    out = []
    for ci, cr in enumerate(diagram.crossings):
        loops = {a for a in cr.arcs if cr.arcs.count(a) == 2}
        if not loops:
            continue
        if diagram.n == 1:
            out.append(UNKNOT)
            continue
        loop = loops.pop()
        rest = [(s, a) for s, a in enumerate(cr.arcs) if a != loop]
        (s1, a1), (s2, a2) = rest
        u = a1 if cr.slot_role(s1) == 0 else a2
        v = a2 if u == a1 else a1
        new = []
        for cj, other in enumerate(diagram.crossings):
            if cj == ci:
                continue
            new.append(Crossing(
                tuple(u if x == v else x for x in other.arcs), other.sign))
        out.append(Diagram(new))
    return _dedupe(out)


def r1_insertions(diagram: Diagram) -> list[Diagram]:
    """All single-kink inflations (two signs, two loop sides per arc)."""
    if diagram.n == 0:
        return _dedupe([
            Diagram([Crossing((1, 1, 2, 2), 1)]),
            Diagram([Crossing((1, 2, 2, 1), -1)]),
        ])
    out = []
    fresh = max(diagram.arcs()) + 1
    loop, w = fresh, fresh + 1
    for x in sorted(diagram.arcs()):
        hc, hs = diagram.head_end(x)
        base = []
        for cj, cr in enumerate(diagram.crossings):
            if cj == hc:
                arcs = list(cr.arcs)
                arcs[hs] = w
                base.append(Crossing(tuple(arcs), cr.sign))
            else:
                base.append(cr)
        for kink in (
            Crossing((x, loop, loop, w), -1),
            Crossing((loop, x, w, loop), -1),
            Crossing((x, w, loop, loop), 1),
            Crossing((loop, loop, w, x), 1),
        ):
            out.append(Diagram(base + [kink]))
    return _dedupe(out)


# -- Reidemeister 2 ---------------------------------------------------------


def _removable_bigons(diagram: Diagram) -> list[tuple]:
    found = []
    for face in diagram.faces():
        if len(face) != 2:
            continue
        (c1, s1), (c2, s2) = face
        if c1 == c2:
            continue
        p = diagram.crossings[c1].arcs[s1]
        ph = diagram.other_end((c1, s1))
        if (s1 in _OVER_SLOTS) != (ph[1] in _OVER_SLOTS):
            continue  # clasp, not a reducible bigon
        q = diagram.crossings[c2].arcs[s2]
        found.append((c1, c2, p, q))
    return found


def r2_reductions(diagram: Diagram) -> list[Diagram]:
    out = []
    for c1, c2, p, q in _removable_bigons(diagram):
        if diagram.n == 2:
            out.append(UNKNOT)
            continue
        sub = {}
        for mid in (p, q):
            (ta, tsa), (tb, tsb) = diagram.arc_ends(mid)
            if diagram.crossings[ta].slot_role(tsa) == 0:
                head, tail = (ta, tsa), (tb, tsb)
            else:
                head, tail = (tb, tsb), (ta, tsa)
            tc = diagram.crossings[tail[0]]
            u = tc.arcs[_strand_in_slot(tc, tail[1])]
            hc = diagram.crossings[head[0]]
            v = hc.arcs[_strand_out_slot(hc, head[1])]
            sub[v] = u

        def resolve(x):
            while x in sub:
                x = sub[x]
            return x

        new = []
        for cj, cr in enumerate(diagram.crossings):
            if cj in (c1, c2):
                continue
            new.append(Crossing(
                tuple(resolve(a) for a in cr.arcs), cr.sign))
        out.append(Diagram(new))
    return _dedupe(out)


def r2_insert_candidates(diagram: Diagram, x: int, y: int) -> list[Diagram]:
    """Valid diagrams obtained by pushing arc x and arc y across each other.

    Both over-choices, both crossing orders along y, and both sign splits
    are attempted; the planarity check keeps only genuine pushes.
    """
    if x == y:
        return []
    fresh = max(diagram.arcs()) + 1
    px, wx, py, wy = fresh, fresh + 1, fresh + 2, fresh + 3
    hx = diagram.head_end(x)
    hy = diagram.head_end(y)
    rebuilt = []
    for cj, cr in enumerate(diagram.crossings):
        arcs = list(cr.arcs)
        if cj == hx[0]:
            arcs[hx[1]] = wx
        if cj == hy[0]:
            arcs[hy[1]] = wy
        rebuilt.append(Crossing(tuple(arcs), cr.sign))
    out = []
    for y_first in (0, 1):
        for x_over in (True, False):
            for s1 in (1, -1):
                xe = ((x, px), (px, wx))
                ye = ((y, py), (py, wy)) if y_first == 0 else ((py, wy), (y, py))
                pair = []
                for k in (0, 1):
                    xin, xout = xe[k]
                    yin, yout = ye[k]
                    sign = s1 if k == 0 else -s1
                    if x_over:
                        pair.append(make_crossing(sign, yin, yout, xin, xout))
                    else:
                        pair.append(make_crossing(sign, xin, xout, yin, yout))
                try:
                    out.append(Diagram(rebuilt + pair))
                except DiagramError:
                    continue
    return _dedupe(out)


def r2_insertions(diagram: Diagram) -> list[Diagram]:
    """R2 pushes across every face, both strand pairs and over-choices."""
    if diagram.n == 0:
        return []
    out = []
    seen_pairs = set()
    for face in diagram.faces():
        arcs = [diagram.crossings[ci].arcs[si] for ci, si in face]
        for i in range(len(arcs)):
            for j in range(i + 1, len(arcs)):
                a, b = arcs[i], arcs[j]
                if a == b or (a, b) in seen_pairs:
                    continue
                seen_pairs.add((a, b))
                seen_pairs.add((b, a))
                out.extend(r2_insert_candidates(diagram, a, b))
    return _dedupe(out)


# -- Reidemeister 3 ---------------------------------------------------------


def r3_moves(diagram: Diagram) -> list[Diagram]:
    out = []
    for face in diagram.faces():
        if len(face) != 3:
            continue
        corners = {ci for ci, _ in face}
        if len(corners) != 3:
            continue
        sides = []
        for ci, si in face:
            arc = diagram.crossings[ci].arcs[si]
            tail = diagram.tail_end(arc)
            head = diagram.head_end(arc)
            over_t = tail[1] in _OVER_SLOTS
            over_h = head[1] in _OVER_SLOTS
            sides.append((arc, tail, head, over_t, over_h))
        if len({s[0] for s in sides}) != 3:
            continue
        kinds = {(s[3], s[4]) for s in sides}
        if (True, True) not in kinds or (False, False) not in kinds:
            continue  # cyclic over/under pattern admits no slide
        fresh = max(diagram.arcs()) + 1
        # per crossing: {role over/under: (in_arc, out_arc)} after the move
        plan: dict[int, dict[bool, tuple[int, int]]] = {c: {} for c in corners}
        ok = True
        for k, (arc, (ct, st), (ch, sh), over_t, over_h) in enumerate(sides):
            mid = fresh + k
            cr_t = diagram.crossings[ct]
            cr_h = diagram.crossings[ch]
            u = cr_t.arcs[_strand_in_slot(cr_t, st)]
            v = cr_h.arcs[_strand_out_slot(cr_h, sh)]
            # strand order along itself swaps: head crossing first now
            for cross, role, pair in (
                (ch, over_h, (u, mid)),
                (ct, over_t, (mid, v)),
            ):
                if role in plan[cross]:
                    ok = False
                plan[cross][role] = pair
        if not ok:
            continue
        new = []
        for cj, cr in enumerate(diagram.crossings):
            if cj not in corners:
                new.append(cr)
                continue
            roles = plan[cj]
            if set(roles) != {True, False}:
                ok = False
                break
            (oi, oo), (ui, uo) = roles[True], roles[False]
            new.append(make_crossing(cr.sign, ui, uo, oi, oo))
        if not ok:
            continue
        try:
            out.append(Diagram(new))
        except DiagramError:
            continue
    return _dedupe(out)


# -- composites -------------------------------------------------------------


def reductions(diagram: Diagram) -> list[Diagram]:
    return _dedupe(r1_reductions(diagram) + r2_reductions(diagram))


def random_moves(diagram: Diagram, rng: random.Random, steps: int,
                 max_crossings: int | None = None) -> Diagram:
    """Seeded wander through R3 slides and bounded R1/R2 inflations."""
    cap = max_crossings if max_crossings is not None else diagram.n + 4
    cur = diagram
    for _ in range(steps):
        pool = list(r3_moves(cur))
        if cur.n < cap:
            pool += r1_insertions(cur) + r2_insertions(cur)
        if not pool:
            break
        cur = pool[rng.randrange(len(pool))]
    return cur
