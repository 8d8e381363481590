import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcdde.coefficients import ingest_params
from pcdde.exact import HistoryFunction
from pcdde.numeric import (GridError, RhsSpec, absorbing_bound, integrate_numeric,
                           steps_per_delay, stroboscopic_numeric)

ROW1_I = ingest_params(0.5, 0.1, -0.1, 3.0, 1.0, 0.5)
ROW1_II = ingest_params(0.5, 0.1, -0.1, 0.5, 1.0, 0.5)


def test_zero_history_stays_zero():
    traj = integrate_numeric(HistoryFunction.constant(0.0), RhsSpec(ROW1_I, 0.1), 0.01, 10.0)
    assert np.max(np.abs(traj.values)) <= 1e-14
    assert stroboscopic_numeric(traj, 2.0, 3) == [0.0] * 4


def test_type1_smoothed_run_near_fixed_point():
    traj = integrate_numeric(HistoryFunction.constant(0.28125), RhsSpec(ROW1_I, 1e-3), 1e-3, 9.0)
    assert abs(traj(4.5) - 0.28125) < 1e-3
    assert abs(traj(9.0) - 0.28125) < 1e-3
    samples = stroboscopic_numeric(traj, ROW1_I.T, 2)
    assert samples == pytest.approx([0.28125] * 3, abs=1e-3)
    assert not traj.low_accuracy


def test_type2_smoothed_run_alternates():
    traj = integrate_numeric(HistoryFunction.constant(0.1875), RhsSpec(ROW1_II, 1e-3), 1e-3, 4.0)
    assert abs(traj(2.0) + 0.1875) < 1e-3
    samples = stroboscopic_numeric(traj, ROW1_II.T, 2)
    assert samples == pytest.approx([0.1875, -0.1875, 0.1875], abs=1e-3)


def test_sharp_mode_is_flagged():
    traj = integrate_numeric(HistoryFunction.constant(0.28125), RhsSpec(ROW1_I), 0.01, 4.5)
    assert traj.low_accuracy


@pytest.mark.parametrize("step", [0.3, 0.2, 0.0, -0.01, 0.015])
def test_bad_step(step):
    with pytest.raises(GridError):
        integrate_numeric(HistoryFunction.constant(1.0), RhsSpec(ROW1_I, 0.1), step, 1.0)


def test_steps_per_delay():
    assert steps_per_delay(1e-3) == 1000
    assert steps_per_delay(0.1) == 10


def test_t_end_off_grid():
    with pytest.raises(GridError):
        integrate_numeric(HistoryFunction.constant(1.0), RhsSpec(ROW1_I, 0.1), 0.01, 1.005)


def test_stroboscopic_errors():
    traj = integrate_numeric(HistoryFunction.constant(0.3), RhsSpec(ROW1_I, 0.1), 0.01, 4.5)
    with pytest.raises(GridError):
        stroboscopic_numeric(traj, 4.5, 2)
    with pytest.raises(GridError):
        stroboscopic_numeric(traj, 0.123, 1)


def test_rhs_validation():
    with pytest.raises(ValueError):
        RhsSpec(ROW1_I, 0.1, mu=-1.0)
    with pytest.raises(ValueError):
        RhsSpec()
    with pytest.raises(ValueError):
        RhsSpec(ROW1_I, 0.3)


def test_csv_stride_keeps_endpoint():
    traj = integrate_numeric(HistoryFunction.constant(0.3), RhsSpec(ROW1_I, 0.1), 0.1, 1.0)
    lines = traj.to_csv(stride=3).splitlines()
    assert lines[0] == "t,x"
    assert [float(ln.split(",")[0]) for ln in lines[1:]] == pytest.approx([0, 0.3, 0.6, 0.9, 1.0])


def test_step_halving_order():
    # sup-norm error against a fine-step reference; delta >= 10 * step throughout
    rhs = RhsSpec(ROW1_I, 0.1)
    hist = HistoryFunction.constant(0.3)
    fine = 6400
    ref = integrate_numeric(hist, rhs, 1.0 / fine, 10.0).values
    errs = []
    for n in (100, 200, 400):
        v = integrate_numeric(hist, rhs, 1.0 / n, 10.0).values
        errs.append(np.max(np.abs(v - ref[::fine // n])))
    assert errs[0] > 1e-8
    assert errs[0] / errs[1] >= 2.0
    assert errs[1] / errs[2] >= 2.0


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(-1.0, 1.0), min_size=2, max_size=4), st.floats(0.01, 0.2))
def test_negation_is_exact(vals, delta):
    knots = list(zip(np.linspace(-1.0, 0.0, len(vals)), vals))
    try:
        hist = HistoryFunction.piecewise_linear(knots)
    except ValueError:
        return
    rhs = RhsSpec(ROW1_I, delta, mu=0.3)
    a = integrate_numeric(hist, rhs, 0.02, 6.0)
    b = integrate_numeric(-hist, rhs, 0.02, 6.0)
    np.testing.assert_array_equal(b.values, -a.values)


@settings(max_examples=20, deadline=None)
@given(st.floats(-5.0, 5.0), st.floats(0.1, 3.0), st.floats(0.1, 2.0), st.floats(0.01, 0.5))
def test_absorbing_bound(h0, a, mu, delta):
    rhs = RhsSpec(delta=delta, mu=mu, coefficient=lambda t: np.full_like(t, a))
    traj = integrate_numeric(HistoryFunction.constant(h0), rhs, 0.05, 20.0)
    bound = absorbing_bound(abs(h0), a, mu, delta)
    assert np.max(np.abs(traj.values)) <= bound + 1e-9
