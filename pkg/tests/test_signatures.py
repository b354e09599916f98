"""Signature machinery tests.

The staircase anchors are classical: the positive trefoil form has a
single jump at x = 1 (the sixth root of unity), the (2,5) torus form
steps -4, -2, 0 across the roots of its degree-four polynomial, and the
figure eight has no unit-circle roots at all, so its profile is flat.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from knotgenus.braids import braid_diagram, closure_is_knot
from knotgenus.seifert import band_matrix, seifert_matrix
from knotgenus.signatures import (
    LTProfile,
    _compact_cyclotomic,
    _cyclotomic,
    alexander_from_seifert,
    hermitian_signature_at,
    isolate_unit_circle_roots,
    lt_at_order,
    lt_profile,
    signature_symmetric,
)

TREFOIL_V = ((-1, 1), (0, -1))
FIG8_V = ((-1, 1), (0, 1))
T25_V = band_matrix((1, 1, 1, 1, 1))


def block_sum(*mats):
    n = sum(len(m) for m in mats)
    out = [[0] * n for _ in range(n)]
    off = 0
    for m in mats:
        for i, row in enumerate(m):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(m)
    return tuple(tuple(r) for r in out)


class TestSymmetricSignature:
    def test_definite(self):
        assert signature_symmetric([[2]]) == 1
        assert signature_symmetric([[-3]]) == -1
        assert signature_symmetric([[1, 0], [0, 1]]) == 2

    def test_hyperbolic_pair(self):
        assert signature_symmetric([[0, 1], [1, 0]]) == 0
        assert signature_symmetric([[0, 5], [5, 0]]) == 0

    def test_mixed(self):
        assert signature_symmetric([[1, 0, 0], [0, -2, 0], [0, 0, 3]]) == 1
        assert signature_symmetric([[-2, 1], [1, -2]]) == -2

    def test_degenerate_rank_drop(self):
        assert signature_symmetric([[1, 1], [1, 1]]) == 1
        assert signature_symmetric([[0, 0], [0, 0]]) == 0

    def test_empty(self):
        assert signature_symmetric([]) == 0

    def test_rejects_non_symmetric(self):
        with pytest.raises(ValueError):
            signature_symmetric([[0, 1], [2, 0]])

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            signature_symmetric([[1, 2]])

    def test_fraction_entries(self):
        assert signature_symmetric([[Fraction(1, 3), 0], [0, Fraction(-2, 7)]]) == 0


class TestHermitianSamples:
    def test_endpoint_is_ordinary_signature(self):
        assert hermitian_signature_at(TREFOIL_V, Fraction(-2)) == -2
        assert hermitian_signature_at(FIG8_V, Fraction(-2)) == 0
        assert hermitian_signature_at(T25_V, Fraction(-2)) == -4

    def test_trefoil_before_and_after_jump(self):
        assert hermitian_signature_at(TREFOIL_V, Fraction(0)) == -2
        assert hermitian_signature_at(TREFOIL_V, Fraction(1, 2)) == -2
        assert hermitian_signature_at(TREFOIL_V, Fraction(3, 2)) == 0

    def test_t25_staircase(self):
        assert hermitian_signature_at(T25_V, Fraction(-1)) == -4
        assert hermitian_signature_at(T25_V, Fraction(0)) == -2
        assert hermitian_signature_at(T25_V, Fraction(7, 4)) == 0

    def test_mirror_flips_sign(self):
        mirror = tuple(tuple(-v for v in row) for row in T25_V)
        for x in (Fraction(-2), Fraction(0), Fraction(7, 4)):
            assert hermitian_signature_at(mirror, x) == -hermitian_signature_at(T25_V, x)

    def test_domain_checks(self):
        with pytest.raises(ValueError):
            hermitian_signature_at(TREFOIL_V, Fraction(2))
        with pytest.raises(ValueError):
            hermitian_signature_at(TREFOIL_V, Fraction(-3))

    def test_empty_matrix(self):
        assert hermitian_signature_at((), Fraction(0)) == 0


class TestRootIsolation:
    def test_trefoil_single_root_at_one(self):
        alex = alexander_from_seifert(TREFOIL_V)
        brackets = isolate_unit_circle_roots(alex)
        assert len(brackets) == 1
        a, b = brackets[0]
        assert a < 1 < b

    def test_fig8_no_unit_roots(self):
        assert isolate_unit_circle_roots(alexander_from_seifert(FIG8_V)) == []

    def test_t25_two_roots(self):
        brackets = isolate_unit_circle_roots(alexander_from_seifert(T25_V))
        assert len(brackets) == 2
        # roots are 2cos(3pi/5) and 2cos(pi/5), about -0.618 and 1.618
        (a1, b1), (a2, b2) = brackets
        assert b1 < a2
        assert a1 < Fraction(-0.619) < Fraction(-0.617) < b1
        assert a2 < Fraction(1.617) < Fraction(1.619) < b2

    def test_repeated_root_isolated_once(self):
        granny = block_sum(TREFOIL_V, TREFOIL_V)
        brackets = isolate_unit_circle_roots(alexander_from_seifert(granny))
        assert len(brackets) == 1


class TestProfiles:
    def test_trefoil_profile(self):
        p = lt_profile(TREFOIL_V)
        assert p.values == (-2, 0)
        assert p.max_abs() == 2
        assert p.signature() == -2

    def test_fig8_flat_profile(self):
        p = lt_profile(FIG8_V)
        assert p.brackets == ()
        assert p.values == (0,)

    def test_t25_staircase_profile(self):
        p = lt_profile(T25_V)
        assert p.values == (-4, -2, 0)
        assert p.max_abs() == 4

    def test_granny_doubles_trefoil(self):
        p = lt_profile(block_sum(TREFOIL_V, TREFOIL_V))
        assert p.values == (-4, 0)

    def test_square_knot_cancels(self):
        mirror = tuple(tuple(-v for v in row) for row in TREFOIL_V)
        p = lt_profile(block_sum(TREFOIL_V, mirror))
        assert p.max_abs() == 0

    def test_block_sums_add(self):
        for m in (2, 3, 5):
            p = lt_profile(block_sum(*([TREFOIL_V] * m)))
            assert p.values == (-2 * m, 0)
            assert p.max_abs() == 2 * m

    def test_empty_profile(self):
        p = lt_profile(())
        assert p.values == (0,)
        assert p.max_abs() == 0


class TestOrderEvaluation:
    def test_trefoil_rational_orders(self):
        assert lt_at_order(TREFOIL_V, 2) == -2
        assert lt_at_order(TREFOIL_V, 3) == -2
        assert lt_at_order(TREFOIL_V, 4) == -2

    def test_trefoil_sixth_root_degenerate_value(self):
        # the polynomial vanishes exactly at the sixth root; the value is
        # the signature of the degenerate form there, here the midpoint of
        # the adjacent gaps since only one eigenvalue crosses
        assert lt_at_order(TREFOIL_V, 6) == -1

    def test_trefoil_irrational_orders(self):
        assert lt_at_order(TREFOIL_V, 5) == -2  # 2cos(72deg) < 1
        assert lt_at_order(TREFOIL_V, 12) == 0  # 2cos(30deg) > 1

    def test_t25_tenth_root_degenerate_value(self):
        # Alexander polynomial of the (2,5) torus form is the tenth
        # cyclotomic polynomial, so order ten lands on a root and the
        # evaluation runs in the cyclotomic field
        assert lt_at_order(T25_V, 10) == -1
        assert lt_at_order(T25_V, 5) == -2

    def test_double_root_value_exceeds_both_gaps(self):
        # two stacked positive trefoil bands on three strands give the
        # ribbon word whose polynomial is the square of t^2 - t + 1: the
        # profile jumps by -2 then +2 at the same point, so both gaps read
        # zero, yet the degenerate form at the point itself has signature 1
        V = band_matrix((1, 1, 1, -2, -1, -1, -1, -2))
        prof = lt_profile(V)
        assert prof.values == (0, 0)
        assert lt_at_order(V, 6) == 1
        M = tuple(tuple(-x for x in row) for row in V)
        assert lt_at_order(M, 6) == -1

    def test_double_root_additivity_in_field(self):
        # connected sum of two (2,5) torus forms: order ten is now a
        # repeated irrational root; exact field evaluation still adds
        assert lt_at_order(block_sum(T25_V, T25_V), 10) == -2

    def test_connected_sum_cancellation_at_root(self):
        square = block_sum(TREFOIL_V, tuple(tuple(-x for x in r) for r in TREFOIL_V))
        assert lt_at_order(square, 6) == 0
        granny = block_sum(TREFOIL_V, TREFOIL_V)
        assert lt_at_order(granny, 6) == -2

    def test_fig8_any_order_zero(self):
        for N in (2, 3, 5, 7, 12):
            assert lt_at_order(FIG8_V, N) == 0

    def test_block_sum_additivity_at_order(self):
        for N in (3, 5, 7):
            want = 3 * lt_at_order(TREFOIL_V, N)
            assert lt_at_order(block_sum(*([TREFOIL_V] * 3)), N) == want

    def test_rejects_order_one(self):
        with pytest.raises(ValueError):
            lt_at_order(TREFOIL_V, 1)

    def test_empty_matrix(self):
        assert lt_at_order((), 7) == 0


class TestCyclotomic:
    def test_small_cyclotomics(self):
        assert _cyclotomic(1) == [-1, 1]
        assert _cyclotomic(2) == [1, 1]
        assert _cyclotomic(5) == [1, 1, 1, 1, 1]
        assert _cyclotomic(6) == [1, -1, 1]
        assert _cyclotomic(12) == [1, 0, -1, 0, 1]

    def test_compact_forms(self):
        assert _compact_cyclotomic(5) == [-1, 1, 1]  # x^2 + x - 1
        assert _compact_cyclotomic(6) == [-1, 1]  # x - 1
        assert _compact_cyclotomic(12) == [-3, 0, 1]  # x^2 - 3


class TestProperties:
    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=3, max_size=8))
    def test_profiles_of_braid_closures(self, word):
        word = tuple(word)
        if not closure_is_knot(word):
            return
        V = seifert_matrix(braid_diagram(word))
        p = lt_profile(V)
        assert isinstance(p, LTProfile)
        assert len(p.values) == len(p.brackets) + 1
        n = len(V)
        S = [[V[i][j] + V[j][i] for j in range(n)] for i in range(n)]
        assert p.signature() == signature_symmetric(S)
        assert p.values[-1] == 0  # the form collapses toward the unit
        assert all(v % 2 == 0 for v in p.values)
        assert p.max_abs() >= abs(p.signature())
