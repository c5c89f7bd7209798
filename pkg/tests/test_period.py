"""Jump extraction, dominant-jump detection, and period estimation."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from topoperiod import (
    GeneratorSpec,
    NO_PERIOD,
    PeriodEstimate,
    SymbolicSequence,
    dominant_jumps,
    estimate_period,
    generate,
    jumps,
    select_landmarks,
    swe,
    assign_symbols,
)


def _sym(times_per_landmark, mode="hard"):
    times = tuple(np.asarray(t, dtype=np.int64) for t in times_per_landmark)
    merged = np.sort(np.concatenate(times)) if times else np.empty(0, np.int64)
    labels = []
    for t in merged:
        for i, ti in enumerate(times):
            if t in ti:
                labels.append(i)
                break
    return SymbolicSequence(
        labels=tuple(labels),
        return_times=times,
        mode=mode,
        time_indices=merged,
    )


class TestJumps:
    def test_run_pattern(self):
        t = np.array([0, 1, 2, 10, 11, 12, 20, 21, 22])
        assert jumps(t).tolist() == [1, 1, 8, 1, 1, 8, 1, 1]

    def test_pair(self):
        assert jumps(np.array([5, 6])).tolist() == [1]

    def test_consecutive(self):
        assert jumps(np.arange(7)).tolist() == [1] * 6

    def test_short_vector_empty(self):
        assert jumps(np.array([3])).size == 0
        assert jumps(np.empty(0, np.int64)).size == 0


class TestDominantJumps:
    def test_two_eights(self):
        pos = dominant_jumps(np.array([1, 1, 8, 1, 1, 8, 1, 1]))
        assert pos.tolist() == [2, 5]

    def test_all_ones(self):
        assert dominant_jumps(np.ones(9, dtype=np.int64)).size == 0

    def test_no_separation_within_ratio_two(self):
        # 3/2 = 1.5 < 2: no clear dominant scale
        assert dominant_jumps(np.array([2, 3, 2, 3])).size == 0

    def test_single_element(self):
        assert dominant_jumps(np.array([30])).tolist() == [0]

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            dominant_jumps(np.empty(0, np.int64))

    def test_cut_at_largest_gap(self):
        # sorted: 20, 18, 3, 1 -> largest ratio gap 18/3 = 6
        pos = dominant_jumps(np.array([3, 20, 1, 18]))
        assert sorted(pos.tolist()) == [1, 3]

    def test_positions_in_time_order(self):
        pos = dominant_jumps(np.array([9, 1, 1, 9, 1, 9]))
        assert pos.tolist() == sorted(pos.tolist())


class TestEstimatePeriod:
    def test_three_runs_period_ten(self):
        t = [0, 1, 2, 10, 11, 12, 20, 21, 22]
        est = estimate_period(_sym([t, t, t]))
        assert est.mean_period == pytest.approx(10.0)
        assert est.std_period == pytest.approx(0.0)
        assert est.per_landmark == (10.0, 10.0, 10.0)

    def test_exact_periodic_sequence(self):
        period = 17
        t0 = np.array([0, 1, 2])
        t = np.concatenate([t0 + period * r for r in range(5)])
        est = estimate_period(_sym([t]))
        assert est.mean_period == pytest.approx(float(period))
        assert est.std_period == pytest.approx(0.0)

    def test_time_shift_invariance(self):
        t = np.array([0, 1, 2, 10, 11, 12, 20, 21, 22])
        a = estimate_period(_sym([t]))
        b = estimate_period(_sym([t + 1000]))
        assert a.mean_period == b.mean_period
        assert a.std_period == b.std_period

    def test_unequal_spread_rejected(self):
        # re-entries at 10, 40, 50: spacings 30 vs 10 exceed max/min 1.5
        t = [0, 1, 10, 11, 40, 41, 50, 51]
        est = estimate_period(_sym([t]))
        assert est.mean_period is None
        assert est.per_landmark == ()

    def test_two_reentries_single_spacing_accepted(self):
        # only one spacing: the spread check is vacuous, proxy = 30
        t = [0, 1, 10, 11, 40, 41]
        est = estimate_period(_sym([t]))
        assert est.mean_period == pytest.approx(30.0)

    def test_none_sentinel_on_consecutive_times(self):
        est = estimate_period(_sym([np.arange(9)]))
        assert est.mean_period is None
        assert est.std_period is None
        assert est.per_landmark == ()

    def test_mixed_landmarks_only_valid_counted(self):
        good = [0, 1, 2, 10, 11, 12, 20, 21, 22]
        bad = list(range(9))
        est = estimate_period(_sym([good, bad]))
        assert est.per_landmark == (10.0,)
        assert est.mean_period == pytest.approx(10.0)

    def test_proxy_bounded_by_time_span(self):
        t = [0, 5, 50, 55, 100, 105]
        est = estimate_period(_sym([t]))
        if est.mean_period is not None:
            assert est.mean_period <= 105 - 0

    def test_soft_mode_rejected(self):
        t = np.array([0, 1, 10, 11])
        sym = SymbolicSequence(
            labels=((0,), (0,), (0,), (0,)),
            return_times=(t,),
            mode="soft",
            time_indices=t,
        )
        with pytest.raises(ValueError, match="hard"):
            estimate_period(sym)

    def test_clean_sine_estimate(self):
        ts = generate(GeneratorSpec(family="sine"))
        cloud = swe(ts, 2, 5)
        lm = select_landmarks(cloud, 4, "maxmin")
        sym = assign_symbols(cloud, lm, mode="hard")
        est = estimate_period(sym)
        assert est.mean_period == pytest.approx(62.0, abs=1.0)

    @given(
        st.integers(min_value=5, max_value=60),
        st.integers(min_value=2, max_value=4),
        st.integers(min_value=3, max_value=8),
    )
    def test_exact_period_recovered(self, period, run, cycles):
        if run * 2 >= period:
            return
        t0 = np.arange(run)
        t = np.concatenate([t0 + period * r for r in range(cycles)])
        est = estimate_period(_sym([t]))
        assert est.mean_period == pytest.approx(float(period))
        assert est.std_period == pytest.approx(0.0)


class TestPeriodEstimate:
    def test_sentinel(self):
        assert NO_PERIOD.mean_period is None
        assert NO_PERIOD.std_period is None
        assert NO_PERIOD.per_landmark == ()

    def test_validation_consistent_none(self):
        with pytest.raises(ValueError):
            PeriodEstimate(mean_period=None, std_period=None, per_landmark=(5.0,))
        with pytest.raises(ValueError):
            PeriodEstimate(mean_period=5.0, std_period=0.0, per_landmark=())

    def test_mean_std_must_match_per_landmark(self):
        with pytest.raises(ValueError):
            PeriodEstimate(mean_period=9.0, std_period=0.0, per_landmark=(5.0, 7.0))

    def test_valid_aggregate(self):
        est = PeriodEstimate(mean_period=6.0, std_period=1.0, per_landmark=(5.0, 7.0))
        assert est.mean_period == 6.0
