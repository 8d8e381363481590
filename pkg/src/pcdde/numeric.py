"""Fixed-step integrator for x'(t) = -mu x(t) + a(t) f(x(t - 1)).

Classical RK4 on a uniform grid with ``step = 1/N``, so the delayed value
``x(t - 1)`` is always a stored grid node exactly ``N`` steps back; the
half-step stage reads the midpoint by linear interpolation.  Coefficient and
feedback are the smoothed ones for ``delta > 0`` and the sharp ones for
``delta == 0`` (flagged as low accuracy).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coefficients import CoefficientParams, eval_a_delta, validate_delta
from .exact import HistoryFunction

GRID_TOL = 1e-9


class GridError(ValueError):
    pass


class BlowUpError(RuntimeError):
    pass


@dataclass(frozen=True)
class RhsSpec:
    """Right-hand side data.

    ``coefficient`` overrides the periodic coefficient built from ``params``
    with any vectorised callable ``a(t)``.
    """

    params: CoefficientParams | None = None
    delta: float = 0.0
    mu: float = 0.0
    coefficient: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if not self.mu >= 0.0:
            raise ValueError(f"mu must be >= 0, got {self.mu!r}")
        if self.coefficient is None:
            if self.params is None:
                raise ValueError("need params or a coefficient callable")
            validate_delta(self.delta, self.params)
        elif not self.delta >= 0.0:
            raise ValueError(f"delta must be >= 0, got {self.delta!r}")

    def a(self, t: np.ndarray) -> np.ndarray:
        if self.coefficient is not None:
            return np.broadcast_to(np.asarray(self.coefficient(t), dtype=float), np.shape(t))
        return np.asarray(eval_a_delta(t, self.params, self.delta))


@dataclass(frozen=True, eq=False)
class DenseTrajectory:
    t0: float
    step: float
    values: np.ndarray
    low_accuracy: bool = False

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def t_end(self) -> float:
        return self.t0 + (len(self.values) - 1) * self.step

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.step * np.arange(len(self.values))

    def __call__(self, t: float) -> float:
        """Linear interpolation between grid nodes."""
        return float(np.interp(t, self.times, self.values))

    def to_csv(self, stride: int = 1) -> str:
        if stride < 1:
            raise ValueError("stride must be >= 1")
        idx = list(range(0, len(self.values), stride))
        if idx[-1] != len(self.values) - 1:
            idx.append(len(self.values) - 1)
        lines = ["t,x"]
        for k in idx:
            lines.append(f"{self.t0 + k * self.step:.17g},{self.values[k]:.17g}")
        return "\n".join(lines) + "\n"


def steps_per_delay(step: float) -> int:
    """N with step == 1/N, or GridError."""
    if not step > 0:
        raise GridError(f"step must be > 0, got {step!r}")
    n = round(1.0 / step)
    if n < 10 or abs(n * step - 1.0) > GRID_TOL:
        raise GridError(f"step must be 1/N with integer N >= 10, got {step!r}")
    return n


def integrate_numeric(history: HistoryFunction, rhs: RhsSpec, step: float,
                      t_end: float) -> DenseTrajectory:
    n_delay = steps_per_delay(step)
    h = 1.0 / n_delay
    n_steps = round(t_end / h)
    if n_steps < 1 or abs(n_steps * h - t_end) > GRID_TOL * max(1.0, t_end):
        raise GridError(f"t_end={t_end} is not a multiple of step={step}")

    delta, mu = rhs.delta, rhs.mu
    # grid index k <-> time (k - n_delay) * h; history fills k = 0..n_delay
    xs = [history((k - n_delay) * h) for k in range(n_delay + 1)]
    # coefficient at nodes and half-nodes, precomputed in one vectorised call
    a_list = rhs.a(0.5 * h * np.arange(2 * n_steps + 1)).tolist()

    if delta > 0:
        inv = 1.0 / delta

        def f(u):
            if u >= delta:
                return -1.0
            if u <= -delta:
                return 1.0
            return -u * inv
    else:
        def f(u):
            return (u < 0) - (u > 0)

    half = 0.5 * h
    for k in range(n_steps):
        i = n_delay + k
        y = xs[i]
        d0 = xs[k]
        d1 = xs[k + 1]
        f0, f1 = f(d0), f(d1)
        fm = f(0.5 * (d0 + d1))
        a0, am, a1 = a_list[2 * k], a_list[2 * k + 1], a_list[2 * k + 2]
        k1 = -mu * y + a0 * f0
        k2 = -mu * (y + half * k1) + am * fm
        k3 = -mu * (y + half * k2) + am * fm
        k4 = -mu * (y + h * k3) + a1 * f1
        xs.append(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
    out = np.array(xs[n_delay:])
    if not np.all(np.isfinite(out)):
        raise BlowUpError("non-finite value during integration")
    return DenseTrajectory(0.0, h, out, low_accuracy=delta == 0)


def stroboscopic_numeric(traj: DenseTrajectory, T: float, n: int) -> list[float]:
    """Grid reads at x(kT), k = 0..n."""
    ratio = T / traj.step
    per = round(ratio)
    if abs(per - ratio) > GRID_TOL * max(1.0, ratio):
        raise GridError(f"period {T} is not a multiple of step {traj.step}")
    if n * per > len(traj.values) - 1:
        raise GridError(f"trajectory ends at {traj.t_end}, need {n} periods")
    return [float(traj.values[k * per]) for k in range(n + 1)]


def absorbing_bound(history_sup: float, a: float, mu: float, delta: float) -> float:
    """Coarse bound max(|history|, a/mu) + delta for constant positive a."""
    return max(history_sup, a / mu if mu > 0 else math.inf) + delta
