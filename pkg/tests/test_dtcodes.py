"""DT code tests.

The brute-force realizability oracle here is deliberately independent of the
threading embedder: it tries every transversality-compatible rotation system
(two per crossing) and counts faces, accepting iff some system is planar by
Euler count. Published codes for small knots anchor the conventions.
"""

from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from knotgenus.diagram import Diagram, UNKNOT, parse_pd
from knotgenus.dtcodes import dt_entries, parse_dt, to_dt
from knotgenus.errors import DiagramError, NonRealizableError

# name -> (published DT code, |writhe| of the alternating/standard diagram)
PUBLISHED = {
    "3_1": ("4 6 2", 3),
    "4_1": ("4 6 8 2", 0),
    "5_1": ("6 8 10 2 4", 5),
    "5_2": ("4 8 10 2 6", 5),
    "6_1": ("4 8 12 10 2 6", 2),
    "6_2": ("4 8 10 12 2 6", 2),
    "6_3": ("4 8 10 2 12 6", 0),
    "7_1": ("8 10 12 14 2 4 6", 7),
}


def brute_force_realizable(entries: tuple[int, ...]) -> bool:
    """Exhaustive rotation-system search, ignoring over/under data."""
    n = len(entries)
    if n == 0:
        return True
    cross_of = {}
    for i, e in enumerate(entries):
        cross_of[2 * i + 1] = i
        cross_of[abs(e)] = i
    # per crossing: passages (t1, t2); ends: (t, 'i') and (t, 'o')
    visits: dict[int, list[int]] = {i: [] for i in range(n)}
    for t in range(1, 2 * n + 1):
        visits[cross_of[t]].append(t)
    # edge darts: interval t joins (t, 'o') to (t % 2n + 1, 'i')
    twin = {}
    for t in range(1, 2 * n + 1):
        twin[(t, "o")] = (t % (2 * n) + 1, "i")
        twin[(t, "i")] = ((t - 2) % (2 * n) + 1, "o")
    for mask in range(1 << n):
        rot = {}
        for ci in range(n):
            t1, t2 = visits[ci]
            if mask >> ci & 1:
                order = [(t1, "i"), (t2, "i"), (t1, "o"), (t2, "o")]
            else:
                order = [(t1, "i"), (t2, "o"), (t1, "o"), (t2, "i")]
            for k, d in enumerate(order):
                rot[d] = order[(k + 1) % 4]
        faces = 0
        seen = set()
        for d0 in rot:
            if d0 in seen:
                continue
            faces += 1
            d = d0
            while d not in seen:
                seen.add(d)
                d = rot[twin[d]]
        if faces == n + 2:
            return True
    return False


def start_codes(d: Diagram) -> set[tuple[int, ...]]:
    """Every DT code readable off the diagram, one per traversal start."""
    n = d.n
    out = set()
    arcs_all = d.arc_sequence()
    for start_idx in range(2 * n):
        over_at, cross_label = {}, {i: [] for i in range(n)}
        for step in range(2 * n):
            arc = arcs_all[(start_idx + step) % (2 * n)]
            ci, si = d.tail_end(arc)
            cross_label[ci].append(step + 1)
            over_at[step + 1] = si != 2
        if any(sorted(l % 2 for l in p) != [0, 1] for p in cross_label.values()):
            continue
        o2e = {}
        for a, b in cross_label.values():
            odd, even = (a, b) if a % 2 == 1 else (b, a)
            o2e[odd] = -even if over_at[odd] else even
        out.add(tuple(o2e[o] for o in range(1, 2 * n, 2)))
    return out


class TestPublishedCodes:
    @pytest.mark.parametrize("name", sorted(PUBLISHED))
    def test_roundtrip_and_writhe(self, name):
        code, wr = PUBLISHED[name]
        d = parse_dt(code)
        assert d.n == len(code.split())
        assert abs(d.writhe()) == wr
        assert to_dt(d) == code

    @pytest.mark.parametrize("name", sorted(PUBLISHED))
    def test_faithful_realization(self, name):
        code, _ = PUBLISHED[name]
        d = parse_dt(code)
        assert dt_entries(code) in start_codes(d)

    def test_trefoil_is_alternating(self):
        d = parse_dt("4 6 2")
        assert {c.sign for c in d.crossings} in ({1}, {-1})


class TestEdgeCases:
    def test_unknot(self):
        assert parse_dt("") is UNKNOT
        assert to_dt(UNKNOT) == ""

    @pytest.mark.parametrize("code,writhe", [("2", -1), ("-2", 1)])
    def test_single_kink(self, code, writhe):
        d = parse_dt(code)
        assert d.n == 1
        assert d.writhe() == writhe

    def test_double_kink_unknot(self):
        d = parse_dt("4 2")
        assert d.n == 2
        assert abs(d.writhe()) in (0, 2)

    def test_mirror_negates_entries(self):
        for code, _ in PUBLISHED.values():
            d = parse_dt(code)
            flipped = {tuple(-e for e in c) for c in start_codes(d)}
            assert start_codes(d.mirror()) == flipped
        # odd torus codes are symmetric enough to survive mirroring outright
        t = parse_dt("4 6 2")
        assert to_dt(t.mirror()) == to_dt(t)

    def test_negated_code_gives_mirror_knot(self):
        d = parse_dt("4 6 2")
        m = parse_dt("-4 -6 -2")
        assert m.canonical_pd() == d.mirror().canonical_pd()

    def test_reencode_of_pd_diagram(self):
        left = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
        assert to_dt(left) == "4 6 2"


class TestValidation:
    @pytest.mark.parametrize(
        "bad",
        ["3 6 2", "4 6", "4 4 2", "4 6 8", "x y z", "4 6 7"],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(DiagramError):
            parse_dt(bad)

    def test_nonrealizable_raises(self):
        code = (4, 6, 8, 10, 2)
        assert not brute_force_realizable(code)
        with pytest.raises(NonRealizableError):
            parse_dt(code)


class TestAgainstBruteForce:
    def test_exhaustive_n4(self):
        odds_ok = 0
        for perm in permutations(range(2, 9, 2)):
            expect = brute_force_realizable(perm)
            try:
                d = parse_dt(perm)
                got = True
                assert perm in start_codes(d)
            except NonRealizableError:
                got = False
            assert got == expect, perm
            odds_ok += got
        assert odds_ok == 24  # every 4-crossing pairing embeds

    def test_exhaustive_n5(self):
        realizable = 0
        for perm in permutations(range(2, 11, 2)):
            expect = brute_force_realizable(perm)
            try:
                d = parse_dt(perm)
                got = True
                assert perm in start_codes(d)
            except NonRealizableError:
                got = False
            assert got == expect, perm
            realizable += got
        assert realizable == 113

    @settings(max_examples=60, deadline=None)
    @given(st.permutations(list(range(2, 13, 2))), st.integers(0, 63))
    def test_sampled_n6(self, perm, signbits):
        perm = tuple(perm)
        signed = tuple(
            -e if signbits >> i & 1 else e for i, e in enumerate(perm)
        )
        expect = brute_force_realizable(signed)
        try:
            d = parse_dt(signed)
        except NonRealizableError:
            assert not expect
        else:
            assert expect
            assert signed in start_codes(d)
            assert to_dt(parse_dt(to_dt(d))) == to_dt(d)
