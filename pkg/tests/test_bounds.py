from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sbtlab.bounds import (
    bounds_report,
    hurdle_lower_bound,
    min_ratio,
    palisade_distance,
    palisade_distance_by_blocks,
    td3,
    td3_upper,
    three_norm,
    upper_bound,
)
from sbtlab.errors import DomainError, ParityError
from sbtlab.generators import make_palisade
from sbtlab.perm_core import Permutation, from_one_line, identity_extended, parse_cycles


def ceil_div(a, b):
    return -(-a // b)


class TestThreeNorm:
    def test_identity(self):
        assert three_norm(Permutation.identity(9)) == 0

    def test_single_three_cycle(self):
        assert three_norm(parse_cycles("(0 1 2)", 6)) == 1

    def test_double_transposition(self):
        assert three_norm(parse_cycles("(1 3)(2 4)", 7)) == 2

    def test_odd_rejected(self):
        with pytest.raises(ParityError):
            three_norm(parse_cycles("(0 1)", 4))


class TestClosedForms:
    @pytest.mark.parametrize("phi, lower, exact", [(1, 3, 3), (2, 5, 6), (3, 8, 9), (4, 10, 11), (8, 20, 22)])
    def test_palisade_values(self, phi, lower, exact):
        assert hurdle_lower_bound(phi) == lower
        assert palisade_distance(phi) == exact

    @pytest.mark.parametrize("norm, expected", [(0, 0), (1, 1), (2, 3), (4, 6), (7, 10), (8, 11), (16, 22), (19, 26)])
    def test_upper_bound(self, norm, expected):
        assert upper_bound(norm) == expected

    @pytest.mark.parametrize("n, expected", [(2, 1), (5, 3), (8, 4), (11, 6), (14, 7), (17, 9), (23, 11)])
    def test_td3(self, n, expected):
        assert td3(n) == expected

    @pytest.mark.parametrize("n", [0, 1, 3, 4, 6, 7, 9])
    def test_td3_domain(self, n):
        with pytest.raises(DomainError):
            td3(n)

    @pytest.mark.parametrize("fn", [hurdle_lower_bound, palisade_distance, min_ratio])
    def test_phi_domain(self, fn):
        with pytest.raises(DomainError):
            fn(0)

    @given(st.integers(1, 10**9))
    def test_block_form(self, phi):
        assert palisade_distance_by_blocks(phi) == palisade_distance(phi)

    @given(st.integers(1, 10**6))
    def test_ordering(self, phi):
        assert 2 * phi <= hurdle_lower_bound(phi) <= palisade_distance(phi) <= upper_bound(2 * phi)


class TestIdentities:
    def test_palisade_block_identity_vectorized(self):
        phi = np.arange(1, 10**6 + 1, dtype=np.int64)
        lhs = 2 * phi + 3 * (phi // 4) + phi % 4
        rhs = -(-(11 * phi) // 4)
        assert np.array_equal(lhs, rhs)

    def test_td3_case_zero_mod_six(self):
        for n1 in range(6, 10**4 + 1, 6):
            m = n1 // 6
            closed = 11 * (n1 // 24) + (n1 % 24) // 2
            assert ceil_div(11 * n1, 24) == closed == 3 * m - m // 4 == ceil_div(11 * m, 4)

    def test_td3_case_three_mod_six(self):
        for n1 in range(9, 10**4 + 1, 6):
            m = (n1 - 3) // 6
            closed = 11 * (n1 // 24) + (n1 % 24) // 2
            # floor(m/4 + 3/24) == floor((6m + 3) / 24)
            assert ceil_div(11 * (n1 - 3), 24) + 1 == closed == 3 * m - (6 * m + 3) // 24 + 1

    def test_td3_agrees_with_upper_form(self):
        for n1 in range(3, 10**4 + 1, 3):
            assert td3(n1 - 1) == td3_upper(n1 - 1)


class TestMinRatio:
    def test_values(self):
        assert min_ratio(1) == Fraction(3, 2)
        assert min_ratio(4) == Fraction(11, 8)
        assert min_ratio(3) == Fraction(3, 2)

    def test_minimum_over_range(self):
        ratios = {phi: min_ratio(phi) for phi in range(1, 1001)}
        best = min(ratios.values())
        assert best == Fraction(11, 8)
        assert [p for p, r in ratios.items() if r == best] == list(range(4, 1001, 4))


class TestReport:
    def test_palisade_report(self):
        rep = bounds_report(make_palisade(2))
        assert (rep.norm3, rep.bp_lower, rep.upper) == (4, 4, 6)
        assert rep.hurdle_lower == 5 and rep.palisade_distance == 6
        assert rep.td3 == 6
        assert rep.min_ratio == Fraction(3, 2)
        doc = rep.to_json()
        assert doc["min_ratio"]["text"] == "3/2"

    def test_plain_report(self):
        rep = bounds_report(from_one_line([2, 1, 3, 4]))
        assert rep.hurdle_lower is None and rep.td3 is None
        assert rep.norm3 == 1
        assert ("norm3", "1") in rep.rows()

    def test_identity(self):
        rep = bounds_report(identity_extended(5))
        assert rep.norm3 == rep.upper == 0
        assert rep.td3 == 3


class TestWorkedNorms:
    def test_start_and_palisade(self):
        from sbtlab.search import WORKED_MOVES, WORKED_START, replay

        start = from_one_line(WORKED_START)
        # sigma pi^-1 is a 9-cycle times a 15-cycle: two odd cycles on 24 symbols
        assert bounds_report(start).norm3 == 11
        end = replay(start, WORKED_MOVES)
        rep = bounds_report(end)
        assert rep.norm3 == 8 and rep.palisade_distance == 11
