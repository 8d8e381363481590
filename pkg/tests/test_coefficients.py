import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from pcdde.coefficients import (CoefficientParams, ParameterError, eval_a0, eval_a_delta,
                                eval_f0, eval_f_delta, ingest_params, validate_delta)

P = ingest_params(0.5, 0.1, -0.1, 3.0, 1.0, 0.5)


def a_delta_oracle(t, a1, a2, a3, p1, p2, p3, d):
    """Case-by-case transcription of the ramped coefficient on one period.

    The a2 -> a3 ramp is written relative to p1 + p2 - d, and the plateau
    sign of the third segment is negative.
    """
    T = p1 + p2 + p3
    t = t % T
    if t >= T - d:
        t -= T
    if -d < t < d:
        return -a3 + (a1 + a3) / (2 * d) * (t + d)
    if d <= t <= p1 - d:
        return a1
    if p1 - d < t < p1 + d:
        return a1 + (a2 - a1) / (2 * d) * (t - (p1 - d))
    if p1 + d <= t <= p1 + p2 - d:
        return a2
    if p1 + p2 - d < t < p1 + p2 + d:
        return a2 + (-a3 - a2) / (2 * d) * (t - (p1 + p2 - d))
    return -a3


@pytest.mark.parametrize("t, expected", [(0.0, 0.5), (3.5, 0.1), (4.25, -0.1), (4.75, 0.5)])
def test_eval_a0_examples(t, expected):
    assert eval_a0(t, P) == pytest.approx(expected, abs=1e-15)


def test_eval_a0_switch_instants_are_right_continuous():
    assert eval_a0(3.0, P) == 0.1
    assert eval_a0(4.0, P) == -0.1
    assert eval_a0(4.5, P) == 0.5
    assert eval_a0(-0.5, P) == -0.1


@pytest.mark.parametrize("x, expected", [(-2.0, 1.0), (0.0, 0.0), (3.0, -1.0)])
def test_eval_f0(x, expected):
    assert eval_f0(x) == expected


@pytest.mark.parametrize("x, expected", [(0.05, -0.5), (0.1, -1.0), (-0.2, 1.0)])
def test_eval_f_delta(x, expected):
    assert eval_f_delta(x, 0.1) == pytest.approx(expected, abs=1e-15)


def test_eval_f_delta_rejects_zero():
    with pytest.raises(ParameterError, match="eval_f0"):
        eval_f_delta(0.3, 0.0)


@pytest.mark.parametrize("t, expected", [(3.0, 0.3), (2.9, 0.5), (1.0, 0.5), (4.0, 0.0)])
def test_eval_a_delta_examples(t, expected):
    assert eval_a_delta(t, P, 0.1) == pytest.approx(expected, abs=1e-15)


def test_eval_a_delta_matches_piecewise_oracle():
    ts = np.linspace(-5.0, 14.0, 4001)
    got = eval_a_delta(ts, P, 0.1)
    want = [a_delta_oracle(t, 0.5, 0.1, 0.1, 3.0, 1.0, 0.5, 0.1) for t in ts]
    np.testing.assert_allclose(got, want, atol=1e-14)


def test_eval_a_delta_zero_is_sharp():
    ts = np.linspace(-3, 10, 777)
    np.testing.assert_array_equal(eval_a_delta(ts, P, 0.0), eval_a0(ts, P))


def test_vectorised_and_scalar_agree():
    ts = np.array([-1.2, 0.0, 2.95, 3.05, 4.0, 4.49])
    vec = eval_a_delta(ts, P, 0.1)
    assert [eval_a_delta(t, P, 0.1) for t in ts] == list(vec)
    assert isinstance(eval_a_delta(1.0, P, 0.1), float)


def test_ingest_table_rows():
    p = ingest_params(0.5, 0.1, -0.1, 3, 1, 0.5)
    assert (p.a3, p.T) == (0.1, 4.5)
    q = ingest_params(5.0, 3.0, -1.0, 3, 1, 1)
    assert (q.a3, q.T) == (1.0, 5.0)
    # a1 == a2 is accepted here; the fixed-point ops reject it
    r = ingest_params(1.0, 1.0, -1.0, 1, 1, 1)
    assert r.a1 == r.a2


def test_ingest_positive_a3_is_flagged_but_built():
    with pytest.warns(UserWarning, match="positive"):
        p = ingest_params(0.5, 0.1, 0.1, 3, 1, 0.5)
    assert p.sign_warning and p.a3 == 0.1 and p.a3_signed == 0.1
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert ingest_params(0.5, 0.1, -0.1, 3, 1, 0.5).a3_signed == -0.1


@pytest.mark.parametrize("bad", [
    (0.0, 0.1, -0.1, 3, 1, 0.5),
    (0.5, -0.1, -0.1, 3, 1, 0.5),
    (0.5, 0.1, 0.0, 3, 1, 0.5),
    (0.5, 0.1, -0.1, 0, 1, 0.5),
    (0.5, 0.1, -0.1, 3, -1, 0.5),
    (0.5, 0.1, -0.1, 3, 1, math.nan),
])
def test_ingest_rejects_invalid(bad):
    with pytest.raises(ParameterError):
        ingest_params(*bad)


def test_delta_window_invariant():
    assert validate_delta(0.2, P) == 0.2
    with pytest.raises(ParameterError, match="overlap"):
        validate_delta(0.25, P)
    with pytest.raises(ParameterError):
        validate_delta(-0.01, P)


params_st = st.builds(
    CoefficientParams,
    *(st.floats(0.05, 10.0) for _ in range(3)),
    *(st.floats(0.2, 6.0) for _ in range(3)),
)


def _near_switch(t, p, margin):
    phase = t % p.T
    return any(abs(phase - c) < margin or abs(phase - c - p.T) < margin
               for c in (0.0, p.p1, p.p1 + p.p2))


@given(params_st, st.floats(-50, 50), st.floats(0.0, 0.99))
def test_periodicity(p, t, frac):
    assume(not _near_switch(t, p, 1e-9))
    d = frac * 0.5 * min(p.p1, p.p2, p.p3)
    assert eval_a0(t + p.T, p) == eval_a0(t, p)
    assert eval_a_delta(t + p.T, p, d) == pytest.approx(eval_a_delta(t, p, d), abs=1e-9)


@given(st.floats(-1e6, 1e6), st.floats(1e-6, 10.0))
def test_feedback_is_odd(x, d):
    assert eval_f0(-x) == -eval_f0(x)
    assert eval_f_delta(-x, d) == -eval_f_delta(x, d)


@given(params_st, st.floats(0.0, 100.0), st.floats(0.01, 0.99))
def test_smoothed_equals_sharp_outside_windows(p, t, frac):
    d = frac * 0.5 * min(p.p1, p.p2, p.p3)
    assume(not _near_switch(t, p, d + 1e-9))
    assert eval_a_delta(t, p, d) == eval_a0(t, p)


@settings(max_examples=50)
@given(params_st, st.floats(0.01, 0.99))
def test_ramp_continuity_and_sup_bound(p, frac):
    d = frac * 0.5 * min(p.p1, p.p2, p.p3)
    v = p.plateaus
    gap = max(abs(v[0] - v[1]), abs(v[1] - v[2]), abs(v[2] - v[0]))
    for c in (0.0, p.p1, p.p1 + p.p2, p.T):
        for edge in (c - d, c + d):
            inside = eval_a_delta(edge + (c - edge) * 1e-12, p, d)
            outside = eval_a_delta(edge - (c - edge) * 1e-9, p, d)
            assert inside == pytest.approx(outside, abs=1e-7 * max(1.0, gap))
    ts = np.linspace(0, p.T, 2001)
    assert np.max(np.abs(eval_a_delta(ts, p, d) - eval_a0(ts, p))) <= gap + 1e-12
