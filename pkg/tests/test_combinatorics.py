import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gjohnson.combinatorics import (
    GraphParams,
    a_ij,
    a_ij_leading,
    a_ij_nonzero,
    binom,
    m_range,
    threshold_p,
)
from gjohnson.errors import ParameterError

import reference


class TestBinom:
    def test_standard_values(self):
        assert binom(5, 2) == 10
        assert binom(0, 0) == 1
        assert binom(7, 0) == 1
        assert binom(7, 7) == 1

    def test_out_of_range_is_zero(self):
        assert binom(3, -1) == 0
        assert binom(2, 5) == 0
        assert binom(-1, 0) == 0
        assert binom(-3, -3) == 0

    @given(st.integers(0, 60), st.integers(0, 60))
    def test_symmetry(self, a, b):
        if b <= a:
            assert binom(a, b) == binom(a, a - b)

    @given(st.integers(1, 60), st.integers(-2, 62))
    def test_pascal_rule(self, a, b):
        assert binom(a, b) == binom(a - 1, b - 1) + binom(a - 1, b)

    def test_matches_math_comb_in_range(self):
        for a in range(0, 12):
            for b in range(0, a + 1):
                assert binom(a, b) == math.comb(a, b)


class TestGraphParams:
    def test_petersen(self):
        p = GraphParams(5, 2, 0)
        assert p.vertex_count == 10
        assert p.degree == 3
        assert p.edge_count == 15

    def test_module_level_accessors(self):
        from gjohnson.combinatorics import degree, vertex_count

        p = GraphParams(7, 3, 1)
        assert vertex_count(p) == 35
        assert degree(p) == 18

    def test_johnson(self):
        p = GraphParams(4, 2, 1)
        assert p.vertex_count == 6
        assert p.degree == 4

    def test_larger(self):
        p = GraphParams(7, 3, 1)
        assert p.vertex_count == 35
        assert p.degree == binom(3, 1) * binom(4, 2) == 18

    def test_complete_graph_case(self):
        for n in (2, 5, 9):
            p = GraphParams(n, 1, 0)
            assert p.vertex_count == n
            assert p.degree == n - 1

    @pytest.mark.parametrize(
        "n,r,s",
        [
            (5, 2, 2),   # s >= r
            (5, 5, 1),   # r >= n
            (3, 0, 0),   # r < 1
            (5, 2, -1),  # s < 0
            (5, 4, 0),   # edgeless: no two disjoint 4-sets in [5]
        ],
    )
    def test_invalid(self, n, r, s):
        with pytest.raises(ParameterError):
            GraphParams(n, r, s)

    def test_non_integer(self):
        with pytest.raises(ParameterError):
            GraphParams(5.0, 2, 0)


class TestAij:
    def test_known_values(self):
        assert a_ij(GraphParams(7, 3, 1), 1, 1) == 9
        assert a_ij(GraphParams(5, 2, 0), 0, 0) == 0

    def test_i_equals_r_gives_scaled_delta(self):
        for params in [GraphParams(7, 3, 1), GraphParams(6, 2, 0), GraphParams(9, 4, 2)]:
            for j in range(params.r + 1):
                expected = params.degree if j == params.s else 0
                assert a_ij(params, params.r, j) == expected

    def test_j_equals_r_gives_delta(self):
        for params in [GraphParams(7, 3, 1), GraphParams(6, 2, 0), GraphParams(9, 4, 2)]:
            for i in range(params.r + 1):
                assert a_ij(params, i, params.r) == (1 if i == params.s else 0)

    def test_against_bruteforce_enumeration(self):
        # choice-independence and value, via explicit set counting
        for (n, r, s) in [(6, 2, 0), (6, 2, 1), (7, 3, 1), (7, 3, 2), (8, 3, 0)]:
            params = GraphParams(n, r, s)
            for i in range(r + 1):
                for j in range(r + 1):
                    vals = reference.aij_values(n, r, s, i, j)
                    if not vals:
                        continue  # no x realizes intersection i at this n
                    assert vals == {a_ij(params, i, j)}, (n, r, s, i, j)

    def test_row_sums_equal_degree(self):
        for (n, r, s) in [(6, 2, 0), (7, 3, 1), (9, 3, 2), (10, 4, 1)]:
            params = GraphParams(n, r, s)
            for i in range(r + 1):
                if binom(r, i) * binom(n - r, r - i) == 0:
                    continue
                assert sum(a_ij(params, i, j) for j in range(r + 1)) == params.degree

    def test_out_of_range_raises(self):
        params = GraphParams(7, 3, 1)
        with pytest.raises(ParameterError):
            a_ij(params, -1, 0)
        with pytest.raises(ParameterError):
            a_ij(params, 0, 4)


class TestMRange:
    def test_example_interior(self):
        rng = m_range(GraphParams(7, 3, 1), 1, 1)
        assert (rng.m_min, rng.m_max) == (0, 1)
        assert not rng.empty
        assert rng.m_max_large_n == 1

    def test_example_empty_class(self):
        rng = m_range(GraphParams(50, 2, 0), 1, 2)
        assert rng.empty  # i + j = 3 > r + s = 2

    def test_example_i_r(self):
        rng = m_range(GraphParams(7, 3, 1), 3, 1)
        assert (rng.m_min, rng.m_max) == (1, 1)

    def test_terms_positive_inside_zero_outside(self):
        # every m inside the range contributes a strictly positive term
        for (n, r, s) in [(6, 2, 1), (7, 3, 1), (8, 3, 2), (9, 4, 2)]:
            params = GraphParams(n, r, s)
            for i in range(r + 1):
                for j in range(r + 1):
                    rng = m_range(params, i, j)
                    for m in range(-1, s + 2):
                        term = (
                            binom(i, m)
                            * binom(r - i, s - m)
                            * binom(r - i, j - m)
                            * binom(n - 2 * r + i, r - s - j + m)
                        )
                        if rng.m_min <= m <= rng.m_max:
                            assert term > 0, (n, r, s, i, j, m)
                        else:
                            assert term == 0, (n, r, s, i, j, m)

    def test_small_n_tighter_than_asymptotic(self):
        rng = m_range(GraphParams(5, 2, 1), 1, 1)
        assert rng.m_max <= rng.m_max_large_n


class TestNonzeroClass:
    def test_examples(self):
        assert not a_ij_nonzero(2, 0, 1, 2)
        assert a_ij_nonzero(3, 1, 3, 1)
        assert not a_ij_nonzero(3, 1, 0, 3)

    def test_matches_exact_values_for_large_n(self):
        for r in range(1, 5):
            for s in range(r):
                params = GraphParams(4 * r + 1, r, s)
                for i in range(r + 1):
                    for j in range(r + 1):
                        value = a_ij(params, i, j)
                        if a_ij_nonzero(r, s, i, j):
                            assert value > 0, (r, s, i, j)
                            assert not m_range(params, i, j).empty
                        else:
                            assert value == 0, (r, s, i, j)

    def test_bad_args(self):
        with pytest.raises(ParameterError):
            a_ij_nonzero(2, 2, 0, 0)
        with pytest.raises(ParameterError):
            a_ij_nonzero(3, 1, 4, 0)


class TestLeadingTerm:
    def test_diagonal_class(self):
        for r in range(1, 5):
            for s in range(r):
                lead = a_ij_leading(r, s, s, s)
                assert lead.coefficient == Fraction(1, math.factorial(r - s))
                assert lead.exponent == r - s

    def test_example_values(self):
        lead = a_ij_leading(3, 1, 1, 1)
        assert lead.coefficient == Fraction(1, 2)
        assert lead.exponent == 2
        lead = a_ij_leading(1, 0, 0, 0)
        assert lead.coefficient == 1
        assert lead.exponent == 1

    def test_zero_class_raises(self):
        with pytest.raises(ParameterError):
            a_ij_leading(2, 0, 1, 2)

    def test_ratio_approaches_one(self):
        # exact count over leading term within 10% once n = 1600, every class
        for r in range(1, 5):
            for s in range(r):
                params = GraphParams(1600, r, s)
                for i in range(r + 1):
                    for j in range(r + 1):
                        if not a_ij_nonzero(r, s, i, j):
                            continue
                        lead = a_ij_leading(r, s, i, j)
                        ratio = a_ij(params, i, j) / lead.evaluate(1600)
                        assert 0.9 <= ratio <= 1.1, (r, s, i, j, ratio)

    def test_ratio_convergence_on_hard_class(self):
        # the slowest class (r=4, s=0, i=j=0) still converges monotonically
        lead = a_ij_leading(4, 0, 0, 0)
        ratios = [
            a_ij(GraphParams(n, 4, 0), 0, 0) / lead.evaluate(n)
            for n in (100, 200, 400, 800, 1600, 3200)
        ]
        assert all(r1 < r2 for r1, r2 in zip(ratios, ratios[1:]))
        assert abs(ratios[-1] - 1) < 0.02


class TestThreshold:
    def test_exact_degree_value(self):
        params = GraphParams(20, 2, 1)
        th = threshold_p(params, 10, "exact-degree")
        assert th.value == pytest.approx(20 ** (-1 / 10) / 36, rel=1e-12)
        assert th.value == pytest.approx(0.020592, rel=1e-3)
        assert math.exp(th.log_value) == pytest.approx(th.value, rel=1e-12)

    def test_fixed_t_value(self):
        th = threshold_p(GraphParams(20, 2, 1), 10, "fixed-t-asymptotic")
        assert th.value == pytest.approx(20 ** (-1.1), rel=1e-12)
        assert th.value == pytest.approx(0.037102, rel=2e-3)

    def test_kneser_degree_form_is_reciprocal_degree(self):
        # s = 0 kills the n-power: p_hat = 1 / N1
        for n in (10, 30):
            for t in (3, 8):
                th = threshold_p(GraphParams(n, 1, 0), t, "exact-degree")
                assert th.value == pytest.approx(1 / (n - 1), rel=1e-12)

    def test_t_too_small(self):
        with pytest.raises(ParameterError):
            threshold_p(GraphParams(5, 2, 0), 2)

    def test_unknown_form(self):
        with pytest.raises(ParameterError):
            threshold_p(GraphParams(5, 2, 0), 5, "bogus")
