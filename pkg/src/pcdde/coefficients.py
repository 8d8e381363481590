"""Periodic piecewise-constant coefficient and sign-type feedback.

The coefficient takes three plateau values ``a1``, ``a2`` and ``-a3`` on
consecutive segments of lengths ``p1``, ``p2``, ``p3`` and is extended
periodically with period ``T = p1 + p2 + p3``.  Smoothed variants replace
each jump by a linear ramp of half-width ``delta``.

All evaluators accept scalars or numpy arrays.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class CoefficientParams:
    """Six positive constants of the coefficient; the third plateau is ``-a3``."""

    a1: float
    a2: float
    a3: float
    p1: float
    p2: float
    p3: float
    # set when table-style input carried a positive third value
    sign_warning: bool = field(default=False, compare=False)

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "p1", "p2", "p3"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ParameterError(f"{name} must be finite and > 0, got {value!r}")

    @property
    def T(self) -> float:
        return self.p1 + self.p2 + self.p3

    @property
    def plateaus(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, -self.a3)

    @property
    def switch_offsets(self) -> tuple[float, float, float]:
        return (0.0, self.p1, self.p1 + self.p2)

    @property
    def a3_signed(self) -> float:
        return self.a3 if self.sign_warning else -self.a3

    def scaled(self, c: float) -> "CoefficientParams":
        return CoefficientParams(c * self.a1, c * self.a2, c * self.a3,
                                 self.p1, self.p2, self.p3)


def ingest_params(a1, a2, a3_signed, p1, p2, p3) -> CoefficientParams:
    """Build params from table-order input where the third value is signed.

    Table rows write the third plateau as a negative number.  A
    positive ``a3_signed`` is accepted (its magnitude is used) but flagged,
    since the mixed-feedback regime needs a negative third plateau.
    """
    a3_signed = float(a3_signed)
    if a3_signed == 0.0 or not math.isfinite(a3_signed):
        raise ParameterError(f"a3_signed must be finite and nonzero, got {a3_signed!r}")
    flagged = a3_signed > 0
    if flagged:
        warnings.warn(
            f"a3_signed={a3_signed} is positive; the third plateau is normally negative",
            stacklevel=2,
        )
    return CoefficientParams(float(a1), float(a2), abs(a3_signed),
                             float(p1), float(p2), float(p3), sign_warning=flagged)


def validate_delta(delta: float, params: CoefficientParams) -> float:
    """Check that ramp windows of half-width ``delta`` cannot overlap."""
    delta = float(delta)
    if not delta >= 0.0:
        raise ParameterError(f"delta must be >= 0, got {delta!r}")
    limit = 0.5 * min(params.p1, params.p2, params.p3)
    if delta >= limit:
        raise ParameterError(
            f"delta={delta} overlaps ramp windows; need delta < {limit} (half the shortest segment)"
        )
    return delta


def _phase(t, T):
    # floored modulo; guards the t = -tiny case where t - T*floor(t/T) rounds to T
    tau = np.asarray(t, dtype=float) - T * np.floor(np.asarray(t, dtype=float) / T)
    return np.where(tau >= T, 0.0, tau)


def _scalar_or_array(out, t):
    if np.ndim(t) == 0:
        return float(out)
    return out


def eval_a0(t, params: CoefficientParams):
    """Sharp coefficient, right-continuous at switch instants."""
    tau = _phase(t, params.T)
    a1, a2, a3 = params.plateaus
    out = np.where(tau < params.p1, a1, np.where(tau < params.p1 + params.p2, a2, a3))
    return _scalar_or_array(out, t)


def eval_f0(x):
    """Negative sign feedback: +1 for x<0, 0 at 0, -1 for x>0."""
    out = -np.sign(np.asarray(x, dtype=float))
    return _scalar_or_array(out, x)


def eval_f_delta(x, delta: float):
    """Feedback with a linear ramp of slope ``-1/delta`` on ``(-delta, delta)``."""
    if delta == 0:
        raise ParameterError("delta=0 selects the sharp feedback; use eval_f0")
    if delta < 0:
        raise ParameterError(f"delta must be > 0, got {delta!r}")
    xa = np.asarray(x, dtype=float)
    out = np.where(xa >= delta, -1.0, np.where(xa <= -delta, 1.0, -xa / delta))
    return _scalar_or_array(out, x)


def eval_a_delta(t, params: CoefficientParams, delta: float):
    """Continuous coefficient with linear ramps centred on each switch instant.

    Ramps run a1 -> a2 at p1, a2 -> -a3 at p1+p2 and -a3 -> a1 at every
    multiple of T; away from the ``(c - delta, c + delta)`` windows the value
    is the sharp plateau.  ``delta == 0`` returns the sharp coefficient.
    """
    if delta == 0:
        return eval_a0(t, params)
    validate_delta(delta, params)
    T = params.T
    v1, v2, v3 = params.plateaus
    s = _phase(t, T)
    # shift the tail of the period so the ramp around T sits at s in (-delta, 0)
    s = np.where(s >= T - delta, s - T, s)
    out = eval_a0(np.where(s < 0, s + T, s), params)
    out = np.asarray(out, dtype=float)
    for centre, before, after in ((0.0, v3, v1),
                                  (params.p1, v1, v2),
                                  (params.p1 + params.p2, v2, v3)):
        inside = np.abs(s - centre) < delta
        with np.errstate(over="ignore", invalid="ignore"):
            # masked by np.where; may overflow off-window for tiny delta
            ramp = before + (after - before) * (s - (centre - delta)) / (2.0 * delta)
        out = np.where(inside, ramp, out)
    return _scalar_or_array(out, t)
