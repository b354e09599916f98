"""Seifert circle, braiding, and Seifert matrix tests.

Expected matrices and polynomial facts come from closed-form knowledge of
small torus knots and the figure eight; the braiding pipeline is checked
structurally (circle counts, defect-free fixpoints, word round-trips) and
against those anchors.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from knotgenus.braids import braid_diagram, closure_is_knot, torus_word
from knotgenus.diagram import UNKNOT, parse_pd
from knotgenus.dtcodes import parse_dt
from knotgenus.seifert import (
    band_matrix,
    braid_word_of,
    braided_form,
    seifert_circles,
    seifert_matrix,
    _defect_pairs,
)

RIGHT_TREFOIL = "X(4,2,5,1) X(6,4,1,3) X(2,6,3,5)"


def det_fraction(M) -> Fraction:
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [A[r][j] - f * A[c][j] for j in range(n)]
    return det


class TestCircles:
    def test_trefoil_has_two_circles(self):
        circles = seifert_circles(parse_pd(RIGHT_TREFOIL))
        assert len(circles) == 2

    def test_braid_closure_circle_count_is_strand_count(self):
        for word in [(1, 1, 1), (1, -2, 1, -2), (1, 2, 1, 2, 1, 2, 1, 2)]:
            d = braid_diagram(word)
            assert len(seifert_circles(d)) == max(abs(x) for x in word) + 1

    def test_circles_partition_arcs(self):
        d = parse_dt("4 8 10 2 6")
        circles = seifert_circles(d)
        flat = [a for c in circles for a in c]
        assert sorted(flat) == sorted(d.arcs())

    def test_unknot_no_circles(self):
        assert seifert_circles(UNKNOT) == []


class TestBraidedForm:
    def test_braid_closures_are_already_braided(self):
        for word in [(1, 1, 1), (1, -2, 1, -2), (1, 1, 1, -2, -1, -1, -1, -2)]:
            d = braid_diagram(word)
            assert braided_form(d) is d

    def test_pushes_preserve_circle_count(self):
        d = parse_dt("4 8 10 2 6")
        b = braided_form(d)
        assert len(seifert_circles(b)) == len(seifert_circles(d))
        assert _defect_pairs(b, seifert_circles(b)) == []
        assert b.n > d.n  # this diagram genuinely needs pushes

    def test_already_coherent_diagram_untouched(self):
        d = parse_pd(RIGHT_TREFOIL)
        assert braided_form(d) is d

    def test_braided_form_idempotent(self):
        b = braided_form(parse_dt("4 8 12 10 2 6"))
        assert braided_form(b) is b


class TestWordExtraction:
    @pytest.mark.parametrize(
        "word",
        [(1, 1, 1), (1, -2, 1, -2), (1, 2, 1, 2, 1, 2, 1, 2), (1, 1, 1, -2, -1, -1, -1, -2)],
    )
    def test_braid_words_round_trip(self, word):
        got = braid_word_of(braid_diagram(word))
        k = len(word)
        rotations = {tuple(got[i:]) + tuple(got[:i]) for i in range(k)}
        assert tuple(word) in rotations

    def test_strand_count_matches_circles(self):
        d = parse_dt("4 8 10 2 6")
        b = braided_form(d)
        w = braid_word_of(b)
        assert max(abs(x) for x in w) + 1 == len(seifert_circles(d))
        assert len(w) == b.n

    def test_word_signs_match_writhe(self):
        for code in ["4 6 2", "4 6 8 2", "4 8 10 2 6"]:
            d = parse_dt(code)
            b = braided_form(d)
            assert sum(1 if x > 0 else -1 for x in braid_word_of(b)) == b.writhe()


class TestBandMatrix:
    def test_positive_trefoil_matrix(self):
        assert band_matrix((1, 1, 1)) == ((-1, 1), (0, -1))

    def test_figure_eight_matrix(self):
        assert band_matrix((1, -2, 1, -2)) == ((-1, 1), (0, 1))

    def test_torus_2_5_matrix(self):
        want = (
            (-1, 1, 0, 0),
            (0, -1, 1, 0),
            (0, 0, -1, 1),
            (0, 0, 0, -1),
        )
        assert band_matrix((1, 1, 1, 1, 1)) == want

    def test_no_cycles_no_matrix(self):
        assert band_matrix(()) == ()
        assert band_matrix((1,)) == ()
        assert band_matrix((1, 2, 3)) == ()

    def test_negative_letters_flip_diagonal(self):
        V = band_matrix((-1, -1, -1))
        assert V == ((1, 0), (-1, 1))

    def test_rank_counts_genus(self):
        # closure of (s1 s2)^q on 3 strands: 2(q-1) band cycles
        for q in (2, 4, 5):
            assert len(band_matrix(torus_word(3, q))) == 2 * (q - 1)


class TestSeifertMatrix:
    def test_unknot_empty(self):
        assert seifert_matrix(UNKNOT) == ()

    def test_kink_empty(self):
        assert seifert_matrix(parse_dt("2")) == ()

    def test_trefoil_from_pd(self):
        assert seifert_matrix(parse_pd(RIGHT_TREFOIL)) == ((-1, 1), (0, -1))

    @pytest.mark.parametrize(
        "code", ["4 6 2", "4 6 8 2", "6 8 10 2 4", "4 8 10 2 6", "4 8 12 10 2 6", "4 8 10 12 2 6"]
    )
    def test_intersection_form_unimodular(self, code):
        V = seifert_matrix(parse_dt(code))
        n = len(V)
        skew = [[V[i][j] - V[j][i] for j in range(n)] for i in range(n)]
        assert abs(det_fraction(skew)) == 1

    def test_even_rank(self):
        for code in ["4 6 2", "4 6 8 2", "4 8 10 2 6", "8 10 12 14 2 4 6"]:
            assert len(seifert_matrix(parse_dt(code))) % 2 == 0


class TestProperties:
    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=3, max_size=8))
    def test_random_braid_closures_braidify(self, word):
        word = tuple(word)
        if not closure_is_knot(word):
            return
        d = braid_diagram(word)
        b = braided_form(d)
        assert _defect_pairs(b, seifert_circles(b)) == []
        V = seifert_matrix(d)
        n = len(V)
        assert n % 2 == 0
        if n:
            skew = [[V[i][j] - V[j][i] for j in range(n)] for i in range(n)]
            assert abs(det_fraction(skew)) == 1
