"""DT codes: encoding from diagrams and planar realization back to diagrams.

A DT code for an n-crossing knot diagram lists, for the odd passage labels
1, 3, ..., 2n-1 along the knot, the even label sharing each crossing; an
entry is negative exactly when the odd-label passage runs over. A DT code
determines a reduced diagram only up to mirror image; `parse_dt` returns a
deterministic choice of the two and raises `NonRealizableError` when no
planar realization exists.

Realization builds the curve passage by passage as a planar map (rotation
lists per vertex), routing each second visit to a crossing through a corner
of the face holding the loose end, and branching when more than one corner
of that face touches the crossing. Each accepted embedding is re-validated
by the Diagram constructor's Euler check.
"""

from __future__ import annotations

from knotgenus.diagram import Crossing, Diagram, UNKNOT
from knotgenus.errors import DiagramError, NonRealizableError

__all__ = ["parse_dt", "to_dt", "dt_entries"]

_BUDGET = 200_000


def dt_entries(text: str) -> tuple[int, ...]:
    """Parse whitespace-separated signed even integers."""
    entries = []
    for tok in text.replace(",", " ").split():
        try:
            entries.append(int(tok))
        except ValueError as exc:
            raise DiagramError(f"bad DT entry {tok!r}") from exc
    return tuple(entries)


def parse_dt(text: str | tuple[int, ...]) -> Diagram:
    entries = dt_entries(text) if isinstance(text, str) else tuple(text)
    n = len(entries)
    if n == 0:
        return UNKNOT
    if sorted(abs(e) for e in entries) != list(range(2, 2 * n + 1, 2)):
        raise DiagramError(
            f"DT entries must be signed evens covering 2..{2 * n} once each"
        )

    # crossing index i (0-based) pairs passages 2i+1 and |entries[i]|
    cross_of = {}
    over = {}
    for i, e in enumerate(entries):
        odd, even = 2 * i + 1, abs(e)
        cross_of[odd] = i
        cross_of[even] = i
        over[odd] = e < 0
        over[even] = e > 0

    emb = _Embedder(n, cross_of)
    rot = emb.search()
    if rot is None:
        raise NonRealizableError(f"DT code {entries} has no planar realization")
    return _diagram_from_rotations(n, cross_of, over, rot)


class _Embedder:
    """Threads the passage sequence 1..2n through a growing planar map.

    Vertices: 0 is the basepoint, 1..n the crossings, higher ids are
    midpoints subdividing every passage interval so that no edge is a loop
    and the loose end always sits at a degree-1 vertex. Darts are even/odd
    int pairs (twin = id ^ 1); rotations are ccw lists of darts per vertex.
    """

    def __init__(self, n: int, cross_of: dict[int, int]):
        self.n = n
        self.cross_of = cross_of
        self.steps = 0

    def search(self) -> dict[int, tuple[int, ...]] | None:
        rot: dict[int, tuple[int, ...]] = {0: ()}
        state = (rot, 0, 0, 2 * self.n + 1)  # rotations, tip vertex, next dart, next midpoint
        return self._place(1, state, set())

    # -- planar-map helpers -------------------------------------------------

    @staticmethod
    def _faces(rot: dict[int, tuple[int, ...]]) -> dict[int, int]:
        """Map each dart to a face id (orbit of dart -> rot-next of its twin)."""
        where: dict[int, tuple[int, int]] = {}
        for v, ds in rot.items():
            for idx, d in enumerate(ds):
                where[d] = (v, idx)
        face_of: dict[int, int] = {}
        fid = 0
        for d0 in where:
            if d0 in face_of:
                continue
            d = d0
            while d not in face_of:
                face_of[d] = fid
                twin = d ^ 1
                v, idx = where[twin]
                ds = rot[v]
                d = ds[(idx + 1) % len(ds)]
            fid += 1
        return face_of

    @staticmethod
    def _insert_after(rot: dict[int, tuple[int, ...]], v: int, anchor: int | None,
                      dart: int) -> None:
        ds = rot.get(v, ())
        if anchor is None:
            if ds:
                raise AssertionError("anchor required at occupied vertex")
            rot[v] = (dart,)
            return
        idx = ds.index(anchor)
        rot[v] = ds[: idx + 1] + (dart,) + ds[idx + 1:]

    def _tip_face(self, rot: dict[int, tuple[int, ...]], face_of: dict[int, int],
                  tip: int) -> int | None:
        ds = rot[tip]
        if not ds:
            return None  # bare basepoint: the whole plane is one face
        return face_of[ds[0]]

    # -- the threading search ----------------------------------------------

    def _place(self, passage: int, state, seen: set[int]):
        self.steps += 1
        if self.steps > _BUDGET:
            raise NonRealizableError("realization search budget exceeded")
        rot, tip, next_dart, next_mid = state
        if passage > 2 * self.n:
            return self._close(rot, tip, next_dart)

        ci = self.cross_of[passage] + 1
        if ci not in seen:
            # First visit: extend tip -> crossing -> fresh midpoint. No face
            # choice exists at a degree<=1 tip or a fresh vertex.
            rot2 = dict(rot)
            d1, d2 = next_dart, next_dart + 1
            self._insert_after(rot2, tip, rot2[tip][0] if rot2[tip] else None, d1)
            rot2[ci] = (d2,)
            d3, d4 = next_dart + 2, next_dart + 3
            self._insert_after(rot2, ci, d2, d3)
            rot2[next_mid] = (d4,)
            return self._place(
                passage + 1, (rot2, next_mid, next_dart + 4, next_mid + 1),
                seen | {ci},
            )

        # Second visit: route tip -> crossing through a face corner, then out.
        face_of = self._faces(rot)
        tf = self._tip_face(rot, face_of, tip)
        candidates = []
        ds = rot[ci]
        for anchor in ds:
            idx = ds.index(anchor)
            nxt = ds[(idx + 1) % len(ds)]
            if tf is None or face_of[nxt] == tf:
                candidates.append(anchor)
        strand = set(ds)
        for anchor in candidates:
            rot2 = dict(rot)
            d1, d2 = next_dart, next_dart + 1
            self._insert_after(rot2, tip, rot2[tip][0] if rot2[tip] else None, d1)
            self._insert_after(rot2, ci, anchor, d2)
            # Exit must separate the first-visit strand: leave through the
            # wedge after the strand dart that now follows the entry dart.
            ds2 = rot2[ci]
            j = ds2.index(d2)
            k = (j + 1) % len(ds2)
            while ds2[k] not in strand:
                k = (k + 1) % len(ds2)
            d3, d4 = next_dart + 2, next_dart + 3
            self._insert_after(rot2, ci, ds2[k], d3)
            rot2[next_mid] = (d4,)
            result = self._place(
                passage + 1, (rot2, next_mid, next_dart + 4, next_mid + 1), seen,
            )
            if result is not None:
                return result
        return None

    def _close(self, rot, tip, next_dart):
        face_of = self._faces(rot)
        base = rot[0]
        if not base:
            return None
        if face_of[base[0]] != self._tip_face(rot, face_of, tip):
            return None
        rot2 = dict(rot)
        d1, d2 = next_dart, next_dart + 1
        self._insert_after(rot2, tip, rot2[tip][0], d1)
        self._insert_after(rot2, 0, base[0], d2)
        return rot2


def _diagram_from_rotations(n, cross_of, over, rot) -> Diagram:
    # Darts were allocated in passage order: reconstruct, for each crossing,
    # which rotation entries are the in/out darts of its two passages.
    meta: dict[int, tuple[int, str]] = {}
    next_dart = 0
    seen: set[int] = set()
    for passage in range(1, 2 * n + 1):
        ci = cross_of[passage] + 1
        if ci not in seen:
            meta[next_dart + 1] = (passage, "in")
            meta[next_dart + 2] = (passage, "out")
            seen.add(ci)
        else:
            meta[next_dart + 1] = (passage, "in")
            meta[next_dart + 2] = (passage, "out")
        next_dart += 4

    def arc_in(p: int) -> int:
        return (p - 2) % (2 * n) + 1

    crossings = []
    for ci in range(1, n + 1):
        ds = rot[ci]
        assert len(ds) == 4
        roles = {}
        for d in ds:
            p, kind = meta[d]
            roles[d] = (p, kind)
        under_in = next(
            d for d in ds if roles[d][1] == "in" and not over[roles[d][0]]
        )
        i0 = ds.index(under_in)
        ordered = [ds[(i0 + k) % 4] for k in range(4)]
        arcs = []
        for d in ordered:
            p, kind = roles[d]
            arcs.append(p if kind == "out" else arc_in(p))
        over_in_pos = next(
            k for k, d in enumerate(ordered)
            if roles[d][1] == "in" and over[roles[d][0]]
        )
        under_out_pos = next(
            k for k, d in enumerate(ordered)
            if roles[d][1] == "out" and not over[roles[d][0]]
        )
        if under_out_pos != 2 or over_in_pos not in (1, 3):
            raise NonRealizableError("realization lost transversality")
        sign = 1 if over_in_pos == 3 else -1
        crossings.append(Crossing(tuple(arcs), sign))
    try:
        return Diagram(crossings)
    except DiagramError as exc:  # pragma: no cover - embedder guarantees this
        raise NonRealizableError(f"embedding failed validation: {exc}") from exc


def to_dt(diagram: Diagram) -> str:
    """Canonical DT code: least over all starts by absolute value, with
    positive entries preferred on ties (alternating codes come out positive)."""
    if diagram.n == 0:
        return ""
    n = diagram.n

    def key(code: tuple[int, ...]):
        return tuple((abs(e), e < 0) for e in code)

    best: tuple[int, ...] | None = None
    arcs_all = diagram.arc_sequence()
    for start_idx in range(2 * n):
        over_at: dict[int, bool] = {}
        cross_label: dict[int, list[int]] = {i: [] for i in range(n)}
        for step in range(2 * n):
            # passage t happens where arc t begins
            arc = arcs_all[(start_idx + step) % (2 * n)]
            ci, si = diagram.tail_end(arc)
            label = step + 1
            cross_label[ci].append(label)
            over_at[label] = si != 2
        if any(sorted(l % 2 for l in pair) != [0, 1]
               for pair in cross_label.values()):
            continue
        odd_to_even = {}
        for pair in cross_label.values():
            a, b = pair
            odd, even = (a, b) if a % 2 == 1 else (b, a)
            odd_to_even[odd] = -even if over_at[odd] else even
        code = tuple(odd_to_even[o] for o in range(1, 2 * n, 2))
        if best is None or key(code) < key(best):
            best = code
    if best is None:
        raise DiagramError("no traversal start gives odd/even crossing labels")
    return " ".join(str(e) for e in best)
