import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from greyshot.metrics import (
    DegenerateProfileError,
    PopularityProfile,
    RescalePolicy,
    dme,
    mae,
    popularity_profile,
    rescale,
)
from greyshot.scorers import DotProductScorer, Scorer


class TableScorer(Scorer):
    """Fixed score table for deterministic metric tests."""

    def __init__(self, table):
        table = np.asarray(table, dtype=float)
        super().__init__("table", table.shape[0], table.shape[1])
        self.table = table

    def score(self, i, j):
        self._check(i, j)
        return float(self.table[i, j])

    def score_row(self, i):
        self._check(i, 0)
        return self.table[i]

    def score_pairs(self, users, items):
        return self.table[np.asarray(users), np.asarray(items)]


class TestMae:
    def test_perfect_predictions(self):
        scorer = TableScorer([[1.0, 2.0], [3.0, 4.0]])
        test = [(0, 0, 1.0), (0, 1, 2.0), (1, 0, 3.0), (1, 1, 4.0)]
        assert mae(scorer, test) == 0.0

    def test_constant_offset(self):
        scorer = TableScorer([[1.5, 2.5], [3.5, 4.5]])
        test = [(0, 0, 1.0), (0, 1, 2.0), (1, 0, 3.0), (1, 1, 4.0)]
        assert mae(scorer, test) == pytest.approx(0.5, abs=1e-15)

    def test_hand_computed_case(self):
        scorer = TableScorer([[1.5, 2.0, 2.0, 5.0]])
        test = [(0, 0, 1.0), (0, 1, 2.0), (0, 2, 3.0), (0, 3, 4.0)]
        assert mae(scorer, test) == pytest.approx(0.625, abs=1e-15)

    def test_permutation_invariant(self):
        rng = np.random.default_rng(0)
        table = rng.random((5, 7)) * 5
        scorer = TableScorer(table)
        test = [(int(i), int(j), float(r)) for i, j, r in
                zip(rng.integers(0, 5, 30), rng.integers(0, 7, 30),
                    rng.uniform(1, 5, 30))]
        shuffled = list(test)
        rng.shuffle(shuffled)
        assert mae(scorer, test) == pytest.approx(mae(scorer, shuffled), rel=1e-12)

    def test_empty_test_rejected(self):
        with pytest.raises(ValueError):
            mae(TableScorer([[1.0]]), [])

    def test_nonnegative_and_zero_iff_exact(self):
        rng = np.random.default_rng(1)
        table = rng.random((4, 4)) * 5
        scorer = TableScorer(table)
        test = [(i, j, float(table[i, j])) for i in range(4) for j in range(4)]
        assert mae(scorer, test) == 0.0
        test[3] = (test[3][0], test[3][1], test[3][2] + 0.25)
        assert mae(scorer, test) > 0.0

    def test_minmax_policy_applies_before_error(self):
        scorer = TableScorer([[0.0, 0.5, 1.0]])
        test = [(0, 0, 1.0), (0, 1, 3.0), (0, 2, 5.0)]
        policy = RescalePolicy("minmax", 1.0, 5.0)
        assert mae(scorer, test, policy) == 0.0

    def test_minmax_constant_batch_rejected(self):
        scorer = TableScorer([[2.0, 2.0]])
        test = [(0, 0, 1.0), (0, 1, 5.0)]
        with pytest.raises(ValueError):
            mae(scorer, test, RescalePolicy("minmax", 1.0, 5.0))


class TestRescale:
    def test_minmax_hits_targets_exactly(self):
        rng = np.random.default_rng(3)
        values = rng.random(500) * 7 - 2
        out = rescale(values, RescalePolicy("minmax", 1.0, 5.0))
        assert out.min() == pytest.approx(1.0, abs=1e-12)
        assert out.max() == pytest.approx(5.0, abs=1e-12)

    def test_none_is_identity(self):
        values = np.array([3.0, -1.0, 9.0])
        assert np.array_equal(rescale(values, RescalePolicy("none")), values)

    def test_policy_validation(self):
        with pytest.raises(ValueError):
            RescalePolicy("minmax", 5.0, 1.0)
        with pytest.raises(ValueError):
            RescalePolicy("sigmoid")


class TestPopularityProfile:
    def test_full_list_counts_everyone(self):
        rng = np.random.default_rng(0)
        scorer = TableScorer(rng.random((6, 4)))
        profile = popularity_profile(scorer, 6, 4, top_l=4)
        assert profile.counts == {0: 6, 1: 6, 2: 6, 3: 6}

    def test_single_user_profile(self):
        rng = np.random.default_rng(1)
        scorer = TableScorer(rng.random((1, 10)))
        profile = popularity_profile(scorer, 1, 10, top_l=3)
        assert profile.n == 3
        assert all(c == 1 for c in profile.counts.values())

    def test_dominant_item(self):
        table = np.ones((5, 4))
        table[:, 0] = 10.0
        profile = popularity_profile(TableScorer(table), 5, 4, top_l=1)
        assert profile.counts == {0: 5}

    def test_ties_break_toward_small_item_id(self):
        profile = popularity_profile(TableScorer(np.zeros((3, 6))), 3, 6, top_l=2)
        assert profile.counts == {0: 3, 1: 3}

    def test_total_mass(self):
        rng = np.random.default_rng(2)
        scorer = TableScorer(rng.random((9, 14)))
        profile = popularity_profile(scorer, 9, 14, top_l=5)
        assert profile.total == 9 * 5

    def test_top_l_validation(self):
        scorer = TableScorer(np.zeros((2, 3)))
        with pytest.raises(ValueError):
            popularity_profile(scorer, 2, 3, top_l=0)
        with pytest.raises(ValueError):
            popularity_profile(scorer, 2, 3, top_l=4)


class TestDme:
    def test_hand_case_three_items(self):
        profile = PopularityProfile({0: math.e, 1: 1.0, 2: 1.0})
        assert dme(profile) == pytest.approx(-0.5, abs=1e-12)

    def test_hand_case_two_items(self):
        profile = PopularityProfile({0: math.e, 1: 1.0})
        assert dme(profile) == pytest.approx(-1.0, abs=1e-12)

    def test_uniform_profile_rejected(self):
        with pytest.raises(DegenerateProfileError):
            dme(PopularityProfile({0: 5, 1: 5, 2: 5}))
        with pytest.raises(DegenerateProfileError):
            dme(PopularityProfile({0: 7}))

    @given(st.floats(1.5, 200.0))
    def test_scale_invariant(self, factor):
        base = PopularityProfile({0: 8.0, 1: 3.0, 2: 1.0})
        scaled = PopularityProfile({k: v * factor for k, v in base.counts.items()})
        assert dme(scaled) == pytest.approx(dme(base), rel=1e-9)

    def test_two_item_family_follows_closed_form(self):
        # counts [x_max, x_max * e^-s] give DME = 1 - 2/s, increasing in s
        previous = None
        for s in (0.5, 1.0, 2.0, 4.0, 8.0):
            profile = PopularityProfile({0: 10_000.0, 1: 10_000.0 * math.exp(-s)})
            value = dme(profile)
            assert value == pytest.approx(1 - 2 / s, abs=1e-9)
            if previous is not None:
                assert value > previous
            previous = value

    def test_counts_below_one_rejected(self):
        with pytest.raises(ValueError):
            PopularityProfile({0: 0.5, 1: 2.0})
