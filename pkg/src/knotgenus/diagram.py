"""Oriented knot diagrams as PD codes.

A crossing ``X(a, b, c, d)`` lists the four arc labels counterclockwise
starting from the incoming under-strand, so the under-strand runs a -> c.
The crossing is positive when the over-strand runs d -> b and negative when
it runs b -> d; with arcs numbered sequentially along the knot this is the
usual ``b == d + 1 (mod 2n)`` test, but signs are stored explicitly so that
crossing changes and move surgery stay O(1).

Slot numbering within a crossing: 0=a, 1=b, 2=c, 3=d. Slot 0 is always an
entry point and slot 2 always an exit; slots 1/3 depend on the sign. A
"dart" (ci, si) denotes the arc end attached at slot si of crossing ci and
doubles as a half-edge of the underlying planar map, whose faces are orbits
of rotation-after-flip. Validation requires the face count to satisfy
Euler's formula, so only classically realizable codes are accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from knotgenus.errors import DiagramError

__all__ = [
    "Crossing",
    "Diagram",
    "Dart",
    "parse_pd",
    "UNKNOT",
]

Dart = tuple[int, int]

_IN, _OUT = 0, 1


@dataclass(frozen=True, slots=True)
class Crossing:
    arcs: tuple[int, int, int, int]
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise DiagramError(f"crossing sign must be +-1, got {self.sign}")
        if len(self.arcs) != 4 or not all(isinstance(x, int) and x > 0 for x in self.arcs):
            raise DiagramError(f"crossing needs 4 positive arc labels, got {self.arcs}")

    @property
    def a(self) -> int:
        return self.arcs[0]

    @property
    def b(self) -> int:
        return self.arcs[1]

    @property
    def c(self) -> int:
        return self.arcs[2]

    @property
    def d(self) -> int:
        return self.arcs[3]

    def slot_role(self, slot: int) -> int:
        """_IN if the arc at this slot enters the crossing, else _OUT."""
        if slot == 0:
            return _IN
        if slot == 2:
            return _OUT
        if slot == 1:
            return _OUT if self.sign > 0 else _IN
        if slot == 3:
            return _IN if self.sign > 0 else _OUT
        raise DiagramError(f"bad slot {slot}")

    def entry_slots(self) -> tuple[int, int]:
        return (0, 3) if self.sign > 0 else (0, 1)

    def changed(self) -> "Crossing":
        """Switch over- and under-strand; the tuple restarts at the new a."""
        a, b, c, d = self.arcs
        if self.sign > 0:
            return Crossing((d, a, b, c), -1)
        return Crossing((b, c, d, a), 1)

    def reversed(self) -> "Crossing":
        a, b, c, d = self.arcs
        return Crossing((c, d, a, b), self.sign)


class Diagram:
    """An immutable oriented knot diagram; validates on construction."""

    __slots__ = ("crossings", "_arc_ends", "_succ", "_canon")

    def __init__(self, crossings: Iterable[Crossing]):
        object.__setattr__(self, "crossings", tuple(crossings))
        self._validate()

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Diagram is immutable")

    # -- construction-time validation --------------------------------------

    def _validate(self) -> None:
        ends: dict[int, list[Dart]] = {}
        for ci, x in enumerate(self.crossings):
            if not isinstance(x, Crossing):
                raise DiagramError(f"crossing {ci} is not a Crossing")
            for si, arc in enumerate(x.arcs):
                ends.setdefault(arc, []).append((ci, si))
        for arc, occ in ends.items():
            if len(occ) != 2:
                raise DiagramError(f"arc {arc} appears {len(occ)} times, expected 2")
            roles = sorted(self.crossings[ci].slot_role(si) for ci, si in occ)
            if roles != [_IN, _OUT]:
                raise DiagramError(f"arc {arc} must enter once and exit once")
        object.__setattr__(self, "_arc_ends", ends)

        succ: dict[int, int] = {}
        for x in self.crossings:
            a, b, c, d = x.arcs
            succ[a] = c
            if x.sign > 0:
                succ[d] = b
            else:
                succ[b] = d
        object.__setattr__(self, "_succ", succ)

        n = len(self.crossings)
        if n == 0:
            return
        start = min(ends)
        seen = {start}
        cur = succ[start]
        while cur != start:
            if cur in seen:
                raise DiagramError("traversal revisits an arc before closing")
            seen.add(cur)
            cur = succ[cur]
        if len(seen) != 2 * n:
            raise DiagramError(
                f"diagram has more than one component ({len(seen)} of {2 * n} arcs reached)"
            )
        if len(self.faces()) != n + 2:
            raise DiagramError("arc pairing does not embed in the plane")

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    def arcs(self) -> frozenset[int]:
        return frozenset(self._arc_ends)

    def writhe(self) -> int:
        return sum(x.sign for x in self.crossings)

    def successor(self, arc: int) -> int:
        return self._succ[arc]

    def arc_sequence(self, start: int | None = None) -> tuple[int, ...]:
        """Arcs in traversal order, starting from `start` (default: least label)."""
        if not self.crossings:
            return ()
        if start is None:
            start = min(self._arc_ends)
        seq = [start]
        cur = self._succ[start]
        while cur != start:
            seq.append(cur)
            cur = self._succ[cur]
        return tuple(seq)

    def arc_ends(self, arc: int) -> tuple[Dart, Dart]:
        e = self._arc_ends[arc]
        return (e[0], e[1])

    def head_end(self, arc: int) -> Dart:
        """The dart where this arc enters its terminal crossing."""
        for ci, si in self._arc_ends[arc]:
            if self.crossings[ci].slot_role(si) == _IN:
                return (ci, si)
        raise DiagramError(f"arc {arc} has no entering end")

    def tail_end(self, arc: int) -> Dart:
        for ci, si in self._arc_ends[arc]:
            if self.crossings[ci].slot_role(si) == _OUT:
                return (ci, si)
        raise DiagramError(f"arc {arc} has no exiting end")

    def other_end(self, dart: Dart) -> Dart:
        ci, si = dart
        arc = self.crossings[ci].arcs[si]
        e1, e2 = self._arc_ends[arc]
        # A kink can attach both ends of an arc to one crossing; match by slot.
        return e2 if (e1 == dart) else e1

    # -- planar map ----------------------------------------------------------

    def faces(self) -> tuple[tuple[Dart, ...], ...]:
        """Orbits of dart -> rotate(flip(dart)); one orbit per face.

        Each dart (ci, si) stands for the half-edge leaving crossing ci along
        the arc at slot si; successive darts of an orbit walk one face
        boundary, always turning through the same side of each crossing.
        """
        unvisited = {(ci, si) for ci in range(self.n) for si in range(4)}
        out: list[tuple[Dart, ...]] = []
        while unvisited:
            start = min(unvisited)
            orbit = []
            cur = start
            while True:
                orbit.append(cur)
                unvisited.discard(cur)
                cj, sj = self.other_end(cur)
                cur = (cj, (sj + 1) % 4)
                if cur == start:
                    break
                if cur not in unvisited:
                    raise DiagramError("face walk collapsed; corrupt arc pairing")
            out.append(tuple(orbit))
        return tuple(out)

    def dart_direction(self, dart: Dart) -> int:
        """+1 if walking away from the crossing follows the arc's orientation."""
        ci, si = dart
        return 1 if self.crossings[ci].slot_role(si) == _OUT else -1

    # -- elementary operations ----------------------------------------------

    def crossing_change(self, index: int) -> "Diagram":
        if not 0 <= index < self.n:
            raise DiagramError(f"crossing index {index} out of range")
        xs = list(self.crossings)
        xs[index] = xs[index].changed()
        return Diagram(xs)

    def mirror(self) -> "Diagram":
        return Diagram(x.changed() for x in self.crossings)

    def reverse(self) -> "Diagram":
        return Diagram(x.reversed() for x in self.crossings)

    def relabeled(self, mapping: dict[int, int]) -> "Diagram":
        return Diagram(
            Crossing(tuple(mapping[a] for a in x.arcs), x.sign) for x in self.crossings
        )

    # -- serialization -------------------------------------------------------

    def to_pd(self) -> str:
        return " ".join("X({},{},{},{})".format(*x.arcs) for x in self.crossings)

    def _canonical_rows(self) -> list[tuple[int, int, int, int, int]]:
        # Every start arc gives a rotation of one base cycle, so walk once
        # and relabel by offset instead of re-walking per start.
        cycle = self.arc_sequence(next(iter(self._arc_ends)))
        m = len(cycle)
        pos = {arc: i for i, arc in enumerate(cycle)}
        located = [
            (pos[a], pos[b], pos[c], pos[d], x.sign)
            for (a, b, c, d), x in ((x.arcs, x) for x in self.crossings)
        ]
        best: list[tuple[int, int, int, int, int]] | None = None
        for off in range(m):
            rows = [
                (
                    (a - off) % m + 1,
                    (b - off) % m + 1,
                    (c - off) % m + 1,
                    (d - off) % m + 1,
                    s,
                )
                for a, b, c, d, s in located
            ]
            rows.sort()
            if best is None or rows < best:
                best = rows
        assert best is not None
        return best

    def canonical(self) -> "Diagram":
        """Relabel arcs 1..2n along the traversal; least serialization wins."""
        if not self.crossings:
            return self
        return Diagram(Crossing((a, b, c, d), s) for a, b, c, d, s in self._canonical_rows())

    def canonical_pd(self) -> str:
        try:
            return self._canon
        except AttributeError:
            pass
        if not self.crossings:
            text = ""
        else:
            text = " ".join(
                "X({},{},{},{})".format(a, b, c, d)
                for a, b, c, d, _ in self._canonical_rows()
            )
        object.__setattr__(self, "_canon", text)
        return text

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.crossings == other.crossings

    def __hash__(self) -> int:
        return hash(self.crossings)

    def __repr__(self) -> str:
        if not self.crossings:
            return "Diagram(unknot)"
        return f"Diagram({self.to_pd()})"


UNKNOT = Diagram(())


_PD_TUPLE = re.compile(r"X\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_pd(text: str) -> Diagram:
    """Parse ``X(a,b,c,d)`` tuples separated by whitespace or semicolons.

    Crossing signs are reconstructed from the tuple order: slot roles fixed
    by the convention pin each over-strand direction through the requirement
    that every arc enters exactly one crossing and exits exactly one.
    """
    stripped = text.replace(";", " ").strip()
    if not stripped:
        return UNKNOT
    tuples: list[tuple[int, int, int, int]] = []
    consumed = 0
    for m in _PD_TUPLE.finditer(stripped):
        tuples.append(tuple(int(g) for g in m.groups()))  # type: ignore[arg-type]
        consumed += len(m.group(0))
    leftover = _PD_TUPLE.sub("", stripped).strip()
    if leftover:
        raise DiagramError(f"unparseable PD fragment {leftover!r}")
    if not tuples:
        raise DiagramError("no PD tuples found")
    return _diagram_from_tuples(tuples)


def _diagram_from_tuples(tuples: Sequence[tuple[int, int, int, int]]) -> Diagram:
    occ: dict[int, list[Dart]] = {}
    for ci, t in enumerate(tuples):
        for si, arc in enumerate(t):
            occ.setdefault(arc, []).append((ci, si))
    for arc, ends in occ.items():
        if len(ends) != 2:
            raise DiagramError(f"arc {arc} appears {len(ends)} times, expected 2")

    n = len(tuples)
    signs: list[int | None] = [None] * n

    def role(ci: int, si: int, sign: int) -> int:
        if si == 0:
            return _IN
        if si == 2:
            return _OUT
        if si == 1:
            return _OUT if sign > 0 else _IN
        return _IN if sign > 0 else _OUT

    # Deduce signs by propagating "one entry, one exit" along arcs. Arcs with
    # an end at a fixed slot (0 or 2) seed the deduction; arcs with both ends
    # at over-slots link two crossings' signs together.
    links: dict[int, list[tuple[int, int, int, int]]] = {}
    queue: list[int] = []

    def deduce(ci: int, si: int, want: int) -> int:
        # Which sign makes slot si of crossing ci play role `want`?
        return 1 if role(ci, si, 1) == want else -1

    for arc, ends in occ.items():
        (c1, s1), (c2, s2) = ends
        f1, f2 = s1 in (0, 2), s2 in (0, 2)
        if f1 and f2:
            if role(c1, s1, 1) == role(c2, s2, 1):
                raise DiagramError(f"arc {arc} enters or exits twice")
        elif f1 or f2:
            if f2:
                (c1, s1), (c2, s2) = (c2, s2), (c1, s1)
            want = _OUT if role(c1, s1, 1) == _IN else _IN
            forced = deduce(c2, s2, want)
            if signs[c2] is None:
                signs[c2] = forced
                queue.append(c2)
            elif signs[c2] != forced:
                raise DiagramError(f"inconsistent orientation at crossing {c2}")
        else:
            links.setdefault(c1, []).append((c1, s1, c2, s2))
            links.setdefault(c2, []).append((c1, s1, c2, s2))

    def propagate() -> None:
        while queue:
            ci = queue.pop()
            for (a1, sl1, a2, sl2) in links.get(ci, ()):  # noqa: B007
                if a1 == ci:
                    src, ssl, dst, dsl = a1, sl1, a2, sl2
                else:
                    src, ssl, dst, dsl = a2, sl2, a1, sl1
                assert signs[src] is not None
                want = _OUT if role(src, ssl, signs[src]) == _IN else _IN
                forced = deduce(dst, dsl, want)
                if signs[dst] is None:
                    signs[dst] = forced
                    queue.append(dst)
                elif signs[dst] != forced:
                    raise DiagramError(f"inconsistent orientation at crossing {dst}")

    propagate()

    undetermined = [ci for ci in range(n) if signs[ci] is None]

    def attempt(idx: int) -> Diagram | None:
        if idx == len(undetermined):
            try:
                return Diagram(
                    Crossing(tuples[ci], signs[ci]) for ci in range(n)  # type: ignore[arg-type]
                )
            except DiagramError:
                return None
        ci = undetermined[idx]
        snapshot = signs.copy()
        for choice in (1, -1):
            if signs[ci] is None:
                signs[ci] = choice
                queue.append(ci)
                try:
                    propagate()
                    result = attempt(idx + 1)
                    if result is not None:
                        return result
                except DiagramError:
                    pass
                finally:
                    queue.clear()
                    signs[:] = snapshot
            else:
                result = attempt(idx + 1)
                if result is not None:
                    return result
                break
        return None

    result = attempt(0)
    if result is None:
        raise DiagramError("PD tuples admit no consistent oriented planar diagram")
    return result
