"""Period detection, map fitting, convergence rates, table and smoothing studies."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .coefficients import CoefficientParams, ingest_params, validate_delta
from .exact import HistoryFunction, integrate_exact, stroboscopic_samples
from .numeric import RhsSpec, integrate_numeric, steps_per_delay, stroboscopic_numeric
from .return_map import (TYPE_I, TYPE_II_HALF, DegenerateMapError, FixedPointResult,
                         ValidityReport, type1_fixed_point, type2_cycle, validate_type1,
                         validate_type2, validity_window)
from .tables import table

PERIOD_T = "period-T"
PERIOD_2T = "period-2T"
CONVERGING = "converging"
NOT_CONVERGED = "not-converged"
DEGENERATE = "degenerate"

TABLE_REL_TOL = 5e-3
EXACT_PERIOD_TOL = 1e-9


def variant_of(name: str) -> str:
    """Accept 'I'/'II' or the map variant tags."""
    key = {"I": TYPE_I, "II": TYPE_II_HALF, TYPE_I: TYPE_I, TYPE_II_HALF: TYPE_II_HALF}
    try:
        return key[name]
    except KeyError:
        raise ValueError(f"unknown variant {name!r}") from None


def fixed_point(params: CoefficientParams, variant: str) -> FixedPointResult:
    if variant_of(variant) == TYPE_I:
        return type1_fixed_point(params)
    return type2_cycle(params)


def validate(params: CoefficientParams, h: float, variant: str) -> ValidityReport:
    if variant_of(variant) == TYPE_I:
        return validate_type1(params, h)
    return validate_type2(params, h)


def return_period(params: CoefficientParams, variant: str) -> float:
    """Time between returns of the same-signed marker: T or 2T."""
    return params.T if variant_of(variant) == TYPE_I else 2.0 * params.T


@dataclass(frozen=True)
class PeriodVerdict:
    kind: str
    residual: float
    iterations_used: int


def detect_period(samples: Sequence[float], tol: float) -> PeriodVerdict:
    """Classify the tail (last quarter, at least four values) of x(kT) samples."""
    s = np.asarray(samples, dtype=float)
    if len(s) < 4:
        raise ValueError("need at least 4 samples")
    tail = s[-max(4, math.ceil(len(s) / 4)):]
    n = len(s)
    if np.all(np.abs(tail) <= tol):
        return PeriodVerdict(DEGENERATE, float(np.max(np.abs(tail))), n)
    d1 = np.abs(np.diff(tail))
    d2 = np.abs(tail[2:] - tail[:-2])
    if d1.max() <= tol:
        return PeriodVerdict(PERIOD_T, float(d1.max()), n)
    if d2.max() <= tol and np.all(tail[1:] * tail[:-1] < 0):
        return PeriodVerdict(PERIOD_2T, float(d2.max()), n)
    for d in (d1, d2):
        if len(d) >= 2 and np.all(d[1:] < d[:-1]):
            return PeriodVerdict(CONVERGING, float(d[-1]), n)
    return PeriodVerdict(NOT_CONVERGED, float(d1.max()), n)


@dataclass(frozen=True)
class MapFit:
    m_hat: float
    b_hat: float
    max_residual: float


class InvalidGridError(ValueError):
    def __init__(self, message: str, offending: Sequence[float] = ()):
        super().__init__(message)
        self.offending = list(offending)


def one_period_value(params: CoefficientParams, h: float) -> float:
    """x(T) of the exact solution from the constant history h."""
    traj, _ = integrate_exact(HistoryFunction.constant(h), params, params.T)
    return traj(params.T)


def fit_return_map(params: CoefficientParams, h_grid: Sequence[float], variant: str) -> MapFit:
    """Least-squares line through simulated (h, x(T)) pairs.

    For Type II this fits the half-map ``F1(h) = m h - b``, so ``b_hat``
    is the intercept ``-b``.
    """
    if len(h_grid) < 2:
        raise InvalidGridError("underdetermined: need at least 2 grid points")
    bad = [h for h in h_grid if not validate(params, h, variant).passed]
    if bad:
        raise InvalidGridError(f"grid points outside the validity window: {bad}", bad)
    hs = np.asarray(h_grid, dtype=float)
    ys = np.array([one_period_value(params, h) for h in hs])
    m_hat, b_hat = np.polyfit(hs, ys, 1)
    resid = np.abs(ys - (m_hat * hs + b_hat))
    return MapFit(float(m_hat), float(b_hat), float(resid.max()))


@dataclass(frozen=True)
class RateEstimate:
    mean: float
    spread: float
    ratios: tuple[float, ...]


class RateUndefinedError(ValueError):
    pass


def convergence_rate(orbit: Sequence[float], h_star: float,
                     floor: float = 1e-12) -> RateEstimate:
    """Mean and spread of |h_{n+1} - h*| / |h_n - h*|.

    The orbit is cut at the first entry within ``floor * max(1, |h*|)`` of
    the fixed point; at least three entries must remain.
    """
    scale = floor * max(1.0, abs(h_star))
    dev = []
    for h in orbit:
        e = abs(h - h_star)
        if e <= scale:
            break
        dev.append(e)
    if len(dev) < 3:
        raise RateUndefinedError("rate undefined: orbit is at (or reaches) the fixed point")
    ratios = [b / a for a, b in zip(dev, dev[1:])]
    return RateEstimate(float(np.mean(ratios)), float(np.ptp(ratios)), tuple(ratios))


@dataclass(frozen=True)
class ConvergenceRun:
    orbit: tuple[float, ...]
    left_window: bool


def start_in_window(params: CoefficientParams, variant: str, h_star: float,
                    fraction: float = 0.5) -> float:
    """``fraction * h*``, pulled toward h* so the whole orbit stays valid.

    A contracting affine orbit stays within ``|h0 - h*|`` of h*, so h0 is
    clamped to 90% of the distance from h* to the nearer window edge.
    """
    lo, hi = validity_window(params, variant_of(variant))
    radius = 0.9 * min(h_star - lo, hi - h_star)
    if radius <= 0:
        raise ValueError("fixed point is not inside its validity window")
    return h_star - min((1.0 - fraction) * h_star, radius)


def exact_returns(params: CoefficientParams, variant: str, h0: float,
                  n_returns: int) -> ConvergenceRun:
    """x at multiples of the return period from the exact solver, h0 first."""
    variant = variant_of(variant)
    period = return_period(params, variant)
    traj, _ = integrate_exact(HistoryFunction.constant(h0), params, n_returns * period)
    per = 1 if variant == TYPE_I else 2
    samples = stroboscopic_samples(traj, params, per * n_returns)
    orbit = tuple(samples[::per])
    # Type II half-returns land at -h; check validity on magnitudes
    halves = [abs(v) for v in samples]
    left = any(not validate(params, h, variant).passed for h in halves[:-1])
    return ConvergenceRun(orbit, left)


@dataclass(frozen=True)
class TableRowResult:
    which: str
    index: int
    row_inputs: CoefficientParams
    published_h: float
    computed_h: float
    abs_err: float
    validity: ValidityReport
    simulated_confirmation: PeriodVerdict

    @property
    def rel_err(self) -> float:
        return self.abs_err / max(1.0, abs(self.published_h))

    @property
    def expected_kind(self) -> str:
        return PERIOD_T if self.which == "I" else PERIOD_2T

    @property
    def passed(self) -> bool:
        return (self.rel_err <= TABLE_REL_TOL and self.validity.passed
                and self.simulated_confirmation.kind == self.expected_kind)


def reproduce_row(which: str, index: int, row: Sequence[float],
                  n_periods: int = 8) -> TableRowResult:
    a1, a2, a3s, p1, p2, p3, published, _ = row
    params = ingest_params(a1, a2, a3s, p1, p2, p3)
    variant = TYPE_I if which == "I" else TYPE_II_HALF
    result = fixed_point(params, variant)
    traj, _ = integrate_exact(HistoryFunction.constant(result.h_star), params,
                              n_periods * params.T)
    samples = stroboscopic_samples(traj, params, n_periods)
    verdict = detect_period(samples, EXACT_PERIOD_TOL * max(1.0, result.h_star))
    return TableRowResult(which, index, params, published, result.h_star,
                          abs(published - result.h_star), result.validity, verdict)


def reproduce_table(which: str, n_periods: int = 8) -> list[TableRowResult]:
    return [reproduce_row(which, i, row, n_periods) for i, row in enumerate(table(which))]


def table_report_csv(results: Sequence[TableRowResult]) -> str:
    lines = ["table,row,a1,a2,a3_signed,p1,p2,p3,T,published_h,computed_h,abs_err,"
             "rel_err,valid,failed_checks,verdict,verdict_residual,pass"]
    for r in results:
        p = r.row_inputs
        lines.append(",".join([
            r.which, str(r.index + 1),
            *(f"{v:.17g}" for v in (p.a1, p.a2, p.a3_signed, p.p1, p.p2, p.p3, p.T,
                                     r.published_h, r.computed_h, r.abs_err, r.rel_err)),
            "yes" if r.validity.passed else "no",
            ";".join(r.validity.failed()),
            r.simulated_confirmation.kind,
            f"{r.simulated_confirmation.residual:.17g}",
            "pass" if r.passed else "FAIL",
        ]))
    return "\n".join(lines) + "\n"


def table_summary(results: Sequence[TableRowResult]) -> str:
    n_pass = sum(r.passed for r in results)
    worst = max(results, key=lambda r: r.rel_err)
    lines = [f"rows: {len(results)}", f"passed: {n_pass}", f"failed: {len(results) - n_pass}",
             f"worst_row: table {worst.which} row {worst.index + 1} "
             f"rel_err={worst.rel_err:.6g} published={worst.published_h:.6g} "
             f"computed={worst.computed_h:.6g}"]
    for r in results:
        if not r.passed:
            lines.append(f"FAIL: table {r.which} row {r.index + 1} published={r.published_h:.6g} "
                         f"computed={r.computed_h:.6g} rel_err={r.rel_err:.6g} "
                         f"valid={'yes' if r.validity.passed else 'no'} "
                         f"verdict={r.simulated_confirmation.kind}")
    return "\n".join(lines)


@dataclass(frozen=True)
class SweepPoint:
    delta: float
    h_hat: float
    err: float
    h_raw: float


def corner_value(values: np.ndarray, k: int, w1: int, w2: int) -> float:
    """Extend the affine piece sampled at k+w1, k+w2 back to grid index k."""
    x1, x2 = values[k + w1], values[k + w2]
    return float(x1 - (x2 - x1) * w1 / (w2 - w1))


def smoothing_sweep(params: CoefficientParams, deltas: Sequence[float],
                    step: float | None = None, variant: str = "I",
                    n_periods: int = 24) -> list[SweepPoint]:
    """Stroboscopic fixed point of the smoothed equation for each delta.

    ``h_hat`` is the corner value at the last return time: the affine piece
    on ``[kT + 2 delta, kT + 3 delta]`` extended back to ``kT``.  This is
    where the sharp solution has its corner; the smoothed one rounds it
    off, and ``h_raw = x(kT)`` includes that O(delta) rounding.  With
    ``step=None`` each delta uses ``step = delta / 10``.
    """
    variant = variant_of(variant)
    h_star = fixed_point(params, variant).h_star
    period = return_period(params, variant)
    n_returns = max(1, math.ceil(n_periods * params.T / period))
    out = []
    for delta in deltas:
        validate_delta(delta, params)
        if delta == 0:
            run = exact_returns(params, variant, h_star, n_returns)
            h = run.orbit[-1]
            out.append(SweepPoint(0.0, h, abs(h - h_star), h))
            continue
        if 4.0 * delta > min(params.p1, 1.0):
            raise ValueError(f"delta={delta} leaves no affine stretch after the return time")
        h_step = 1.0 / math.ceil(10.0 / delta - 1e-9) if step is None else step
        if h_step > delta / 10.0 * (1 + 1e-9):
            raise ValueError(f"step {h_step} too coarse for delta {delta}; need step <= delta/10")
        n = steps_per_delay(h_step)
        traj = integrate_numeric(HistoryFunction.constant(h_star), RhsSpec(params, delta),
                                 1.0 / n, n_returns * period + 1.0)
        samples = stroboscopic_numeric(traj, period, n_returns)
        k = round(n_returns * period * n)
        w1, w2 = round(2 * delta * n), round(3 * delta * n)
        h = corner_value(traj.values, k, w1, w2)
        out.append(SweepPoint(float(delta), h, abs(h - h_star), samples[-1]))
    return out


GRID_STABLE = "stable-valid"
GRID_UNSTABLE = "unstable"
GRID_INVALID = "invalid-shape"
GRID_DEGENERATE = "degenerate"


def classify_point(params: CoefficientParams, variant: str):
    """Returns (classification, m, b, h_star); nan where undefined."""
    try:
        res = fixed_point(params, variant)
    except DegenerateMapError:
        return GRID_DEGENERATE, 1.0 if variant_of(variant) == TYPE_I else -1.0, math.nan, math.nan
    if res.stability != "asymptotically-stable":
        kind = GRID_UNSTABLE
    elif not res.validity.passed:
        kind = GRID_INVALID
    else:
        kind = GRID_STABLE
    return kind, res.map.m, res.map.b, res.h_star
