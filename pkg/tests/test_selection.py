import numpy as np
import pytest
from hypothesis import given, strategies as st

from anomevent.baseline import normalize_scores
from anomevent.dataset import EventInterval, ScoreSeries
from anomevent.errors import NotAPeak
from anomevent.selection import (
    SelectionMethod,
    SelectionParams,
    analyze_peaks,
    find_local_maxima,
    peak_prominence,
    peak_width,
    select_event,
    select_peak,
    select_threshold,
)

from oracles import (
    oracle_local_maxima,
    oracle_prominence,
    oracle_threshold,
    oracle_width,
)

# mixes smooth values with quantized ones so plateaus and ties actually occur
score_lists = st.lists(
    st.one_of(
        st.floats(0, 1, allow_nan=False),
        st.sampled_from([0.0, 0.1, 0.25, 0.5, 0.75, 1.0]),
    ),
    min_size=3, max_size=50,
)


class TestSelectThreshold:
    def test_longest_run_wins(self):
        scores = [0.1, 0.8, 0.9, 0.2, 0.7, 0.7, 0.7, 0.1]
        assert select_threshold(scores, 0.6) == EventInterval(4, 6)

    def test_no_event(self):
        assert select_threshold([0.1, 0.2, 0.3], 0.9) is None

    def test_tau_zero_covers_whole_video(self):
        assert select_threshold([0.5, 0.1, 0.9], 0.0) == EventInterval(0, 2)

    def test_tie_breaks_earliest(self):
        assert select_threshold([0.9, 0.9, 0.0, 0.9, 0.9], 0.5) == EventInterval(0, 1)

    @given(score_lists, st.floats(0, 1))
    def test_matches_brute_force(self, scores, tau):
        got = select_threshold(scores, tau)
        expected = oracle_threshold(scores, tau)
        assert (got is None and expected is None) or \
               (got.start, got.end) == expected

    @given(score_lists)
    def test_run_length_non_increasing_in_tau(self, scores):
        lengths = []
        for tau in np.linspace(0, 1, 11):
            got = select_threshold(scores, tau)
            lengths.append(0 if got is None else got.length)
        assert all(a >= b for a, b in zip(lengths, lengths[1:]))


class TestFindLocalMaxima:
    def test_simple_peak(self):
        assert find_local_maxima([0, 1, 0]) == [1]

    def test_plateau_midpoint_left_biased(self):
        assert find_local_maxima([0, 1, 1, 1, 0]) == [2]
        assert find_local_maxima([0, 1, 1, 0]) == [1]

    def test_monotone_has_no_peaks(self):
        assert find_local_maxima([0, 1, 2, 3]) == []

    def test_endpoints_never_peaks(self):
        assert find_local_maxima([5, 0, 0]) == []
        assert find_local_maxima([0, 0, 5]) == []

    @given(score_lists)
    def test_matches_oracle(self, scores):
        assert find_local_maxima(scores) == oracle_local_maxima(scores)


class TestPeakProminence:
    def test_isolated_peak(self):
        assert peak_prominence([0, 1, 0], 1) == (1.0, 0, 2)

    def test_secondary_peak(self):
        scores = [0, 0.2, 1.0, 0.4, 0.8, 0]
        prom, lb, rb = peak_prominence(scores, 4)
        assert (prom, lb, rb) == (pytest.approx(0.4), 3, 5)

    def test_dominant_peak(self):
        scores = [0, 0.2, 1.0, 0.4, 0.8, 0]
        assert peak_prominence(scores, 2) == (1.0, 0, 5)

    def test_not_a_peak(self):
        with pytest.raises(NotAPeak):
            peak_prominence([0, 1, 0], 0)

    @given(score_lists)
    def test_matches_oracle(self, scores):
        for peak in find_local_maxima(scores):
            got = peak_prominence(scores, peak)
            expected = oracle_prominence(scores, peak)
            assert got[1:] == expected[1:]
            assert got[0] == pytest.approx(expected[0], abs=1e-12)


class TestPeakWidth:
    def test_half_height(self):
        prom, lb, rb = peak_prominence([0, 1, 0], 1)
        width, lip, rip = peak_width([0, 1, 0], 1, prom, lb, rb, 0.5)
        assert (width, lip, rip) == (1.0, 0.5, 1.5)

    def test_h_zero_is_apex(self):
        prom, lb, rb = peak_prominence([0, 0.3, 1, 0.2, 0], 2)
        width, lip, rip = peak_width([0, 0.3, 1, 0.2, 0], 2, prom, lb, rb, 0.0)
        assert width == 0.0 and lip == rip == 2.0

    def test_h_one_reaches_bases(self):
        prom, lb, rb = peak_prominence([0, 1, 0], 1)
        width, lip, rip = peak_width([0, 1, 0], 1, prom, lb, rb, 1.0)
        assert (width, lip, rip) == (2.0, 0.0, 2.0)

    @given(score_lists, st.floats(0, 1))
    def test_matches_oracle(self, scores, h):
        for peak in find_local_maxima(scores):
            prom, lb, rb = peak_prominence(scores, peak)
            got = peak_width(scores, peak, prom, lb, rb, h)
            expected = oracle_width(scores, peak, prom, lb, rb, h)
            assert got == pytest.approx(expected, abs=1e-9)

    @given(score_lists)
    def test_width_monotone_in_h(self, scores):
        for peak in find_local_maxima(scores):
            prom, lb, rb = peak_prominence(scores, peak)
            widths = [peak_width(scores, peak, prom, lb, rb, h)[0]
                      for h in np.linspace(0, 1, 11)]
            assert all(a <= b + 1e-12 for a, b in zip(widths, widths[1:]))


class TestSelectPeak:
    def test_single_peak(self):
        assert select_peak([0, 1, 0], 0.5) == EventInterval(1, 1)

    def test_tie_breaks_to_earliest_peak(self):
        # two symmetric triangles of different heights, identical widths at h=1
        scores = [0, 0.5, 0, 0, 1.0, 0, 0, 0]
        peaks = analyze_peaks(scores, 1.0)
        assert peaks[0].width == peaks[1].width == 2.0
        # earliest peak (position 1) wins; its h=1 contour spans frames 0..2
        assert select_peak(scores, 1.0) == EventInterval(0, 2)

    def test_monotone_signal(self):
        assert select_peak([0, 1, 2, 3], 0.7) is None

    @given(score_lists, st.floats(0, 1))
    def test_output_always_valid_interval(self, scores, h):
        got = select_peak(scores, h)
        if got is not None:
            assert 0 <= got.start <= got.end <= len(scores) - 1


class TestSelectEvent:
    def test_dispatch(self):
        scores = [0.0, 1.0, 0.0]
        thr = SelectionParams(SelectionMethod.THRESHOLD, tau=0.5)
        pk = SelectionParams(SelectionMethod.FIND_PEAKS, rel_height=0.5)
        assert select_event(scores, thr) == EventInterval(1, 1)
        assert select_event(scores, pk) == EventInterval(1, 1)

    def test_params_validation(self):
        with pytest.raises(ValueError):
            SelectionParams(SelectionMethod.THRESHOLD, rel_height=0.5)
        with pytest.raises(ValueError):
            SelectionParams(SelectionMethod.FIND_PEAKS, tau=0.5)

    @given(score_lists, st.floats(0.01, 1), st.floats(1, 50))
    def test_shift_and_renormalize_invariance(self, scores, h, shift):
        # quantize so the shift cannot absorb sub-epsilon differences
        scores = [round(v, 6) for v in scores]
        if len(set(scores)) < 2:
            return
        base = normalize_scores(ScoreSeries("v", scores)).scores
        shifted = normalize_scores(ScoreSeries("v", np.asarray(scores) + shift)).scores
        assert np.allclose(base, shifted, atol=1e-9)
