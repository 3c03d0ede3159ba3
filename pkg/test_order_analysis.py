import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from order_analysis import (
    Majorization,
    diversity_sum,
    lorenz_curve,
    majorization_compare,
    partial_sums,
    percentage_of_total,
    robin_hood_transfer,
    shares_from_counts,
)
from utils.errors import DomainError

# target institute first, the other three institutes sorted from least to most even
TABLE3_ROWS = [(2, 6, 1, 1), (2, 5, 2, 1), (2, 4, 3, 1), (2, 4, 2, 2), (2, 3, 3, 2)]
TABLE3_SUMS = [1.854, 1.917, 1.943, 1.973, 1.99]
TABLE3_PERCENTAGES = [24.1, 23.3, 23.0, 22.7, 22.5]

integer_arrays = st.lists(st.integers(min_value=0, max_value=20), min_size=1, max_size=8).filter(any)


class TestLorenzCurve:
    def test_even_array_on_diagonal(self):
        curve = lorenz_curve([1, 1, 1, 1])
        np.testing.assert_allclose(curve.x, [0, 0.25, 0.5, 0.75, 1])
        np.testing.assert_allclose(curve.y, curve.x)

    def test_cumulative_shares(self):
        curve = lorenz_curve([1, 6, 1, 2])
        np.testing.assert_allclose(curve.y, [0, 0.6, 0.8, 0.9, 1.0])

    def test_single_value(self):
        assert lorenz_curve([7]).points == [(0.0, 0.0), (1.0, 1.0)]

    def test_all_zero(self):
        with pytest.raises(DomainError):
            lorenz_curve([0, 0, 0])

    @pytest.mark.parametrize("values", [[], [1, -1], [1, float("nan")]])
    def test_bad_values(self, values):
        with pytest.raises(DomainError):
            lorenz_curve(values)

    @given(integer_arrays)
    def test_concave_polyline(self, values):
        curve = lorenz_curve(values)
        assert curve.y[0] == 0 and curve.y[-1] == 1
        slopes = np.diff(curve.y)
        assert np.all(slopes >= -1e-15)
        assert np.all(np.diff(slopes) <= 1e-12)


class TestMajorization:
    @pytest.mark.parametrize(
        "x, x_prime, expected",
        [
            ((3, 3, 2, 2), (6, 2, 1, 1), Majorization.LESS_OR_EQUAL),
            ((4, 2, 2, 2), (4, 3, 2, 1), Majorization.LESS_OR_EQUAL),
            ((6, 2, 1, 1), (3, 3, 2, 2), Majorization.GREATER_OR_EQUAL),
            ((2, 1, 1, 6), (6, 2, 1, 1), Majorization.EQUAL),
            ((5, 3, 1, 1), (4, 4, 2, 0), Majorization.INCOMPARABLE),
        ],
    )
    def test_examples(self, x, x_prime, expected):
        assert majorization_compare(x, x_prime) is expected

    def test_partial_sums_of_incomparable_pair(self):
        np.testing.assert_allclose(partial_sums((5, 3, 1, 1)), [0.5, 0.8, 0.9, 1.0])
        np.testing.assert_allclose(partial_sums((4, 4, 2, 0)), [0.4, 0.8, 1.0, 1.0])

    def test_length_mismatch(self):
        with pytest.raises(DomainError):
            majorization_compare((1, 2), (1, 2, 3))

    def test_table3_chain(self):
        arrays = [row[1:] + row[:1] for row in TABLE3_ROWS]
        for less_even, more_even in zip(arrays, arrays[1:]):
            assert majorization_compare(more_even, less_even) is Majorization.LESS_OR_EQUAL

    @given(integer_arrays)
    def test_reflexive(self, values):
        assert majorization_compare(values, values) is Majorization.EQUAL

    @given(integer_arrays, st.sampled_from([0.5, 1, 2, 3, 7.5, 10]))
    def test_scale_invariance(self, values, c):
        rng = np.random.default_rng(len(values))
        other = rng.integers(0, 20, size=len(values))
        other[0] += 1
        assert majorization_compare(np.asarray(values) * c, other) is majorization_compare(values, other)

    def test_lorenz_consistency(self):
        rng = np.random.default_rng(3)
        for _ in range(500):
            size = int(rng.integers(1, 7))
            x = rng.integers(1, 10, size=size)
            x_prime = rng.integers(1, 10, size=size)
            below = bool(np.all(lorenz_curve(x).y <= lorenz_curve(x_prime).y + 1e-12))
            verdict = majorization_compare(x, x_prime)
            assert below == (verdict in (Majorization.LESS_OR_EQUAL, Majorization.EQUAL))

    def test_antisymmetry_and_transitivity(self):
        rng = np.random.default_rng(5)
        for _ in range(300):
            a, b, c = (rng.integers(1, 8, size=4) for _ in range(3))
            ab = majorization_compare(a, b)
            ba = majorization_compare(b, a)
            if ab is Majorization.LESS_OR_EQUAL:
                assert ba is Majorization.GREATER_OR_EQUAL
            if ab is Majorization.EQUAL:
                assert ba is Majorization.EQUAL
            less = (Majorization.LESS_OR_EQUAL, Majorization.EQUAL)
            if ab in less and majorization_compare(b, c) in less:
                assert majorization_compare(a, c) in less


class TestDiversitySum:
    def test_table3_first_row(self):
        shares = shares_from_counts(TABLE3_ROWS[0])
        assert diversity_sum(shares, 2) == pytest.approx(1.854, abs=1e-3)

    def test_table3_last_row(self):
        assert diversity_sum(shares_from_counts(TABLE3_ROWS[-1]), 2) == pytest.approx(1.99, abs=5e-3)

    def test_fractional_counting_sums_to_one(self):
        assert diversity_sum([0.2, 0.3, 0.5], 1) == pytest.approx(1.0)

    def test_full_counting_counts_participants(self):
        assert diversity_sum([0.5, 0.5, 0.0], "inf") == 3 - 1

    def test_share_out_of_range(self):
        with pytest.raises(DomainError):
            diversity_sum([0.5, 1.5], 2)

    def test_table3_sums_and_percentages(self):
        sums = [diversity_sum(shares_from_counts(row), 2) for row in TABLE3_ROWS]
        percentages = [
            percentage_of_total(shares_from_counts(row)[0], shares_from_counts(row), 2) for row in TABLE3_ROWS
        ]
        np.testing.assert_allclose(sums, TABLE3_SUMS, atol=5e-3)
        np.testing.assert_allclose(percentages, TABLE3_PERCENTAGES, atol=0.1)
        assert all(b - a > 1e-9 for a, b in zip(sums, sums[1:]))
        assert all(a - b > 1e-9 for a, b in zip(percentages, percentages[1:]))

    def test_percentage_examples(self):
        assert percentage_of_total(0.2, shares_from_counts((2, 6, 1, 1)), 2) == pytest.approx(24.1, abs=0.1)
        assert percentage_of_total(0.2, shares_from_counts((2, 3, 3, 2)), 2) == pytest.approx(22.5, abs=0.1)
        assert percentage_of_total(1.0, [1.0], 3) == pytest.approx(100.0)

    def test_percentage_target_must_be_a_share(self):
        with pytest.raises(DomainError):
            percentage_of_total(0.25, [0.2, 0.8], 2)


class TestRobinHood:
    def test_transfer(self):
        np.testing.assert_allclose(robin_hood_transfer([6, 2, 1, 1], 0, 2, 1), [5, 2, 2, 1])

    def test_order_reversal_rejected(self):
        with pytest.raises(DomainError):
            robin_hood_transfer([6, 2, 1, 1], 0, 2, 3)

    def test_schur_concavity(self):
        rng = np.random.default_rng(2025)
        for _ in range(1000):
            less_even = rng.uniform(0.1, 10, size=int(rng.integers(2, 8)))
            giver, receiver = int(np.argmax(less_even)), int(np.argmin(less_even))
            gap = less_even[giver] - less_even[receiver]
            if gap <= 0:
                continue
            more_even = robin_hood_transfer(less_even, giver, receiver, rng.uniform(0, 0.5) * gap or gap / 4)
            assert majorization_compare(more_even, less_even) in (Majorization.LESS_OR_EQUAL, Majorization.EQUAL)
            for k in (1.5, 2, 3, 10):
                before = diversity_sum(less_even / less_even.sum(), k)
                after = diversity_sum(more_even / more_even.sum(), k)
                assert after >= before - 1e-12

    @settings(max_examples=200)
    @given(integer_arrays)
    def test_sum_preserved(self, values):
        values = sorted(values, reverse=True)
        if values[0] - values[-1] < 2:
            return
        moved = robin_hood_transfer(values, 0, len(values) - 1, 1)
        assert moved.sum() == pytest.approx(sum(values))
