"""Exact integration of x'(t) = a(t) * f0(x(t - 1)) with sharp coefficients.

With a piecewise-constant coefficient and sign feedback, the right-hand side
is constant between events, so the solution is piecewise affine.  Events are
the coefficient switches and the instants ``z + 1`` where ``z`` is a zero of
the solution (or of its history).  Everything is computed in closed form.
"""
from __future__ import annotations

import bisect
import heapq
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .coefficients import CoefficientParams

# events closer than this in time are treated as simultaneous
TIE_TOL = 1e-12
DEFAULT_EVENT_CAP = 10_000

SWITCH = "coefficient-switch"
DELAYED_ZERO = "delayed-zero-crossing"
HISTORY_ZERO = "history-zero"
TOUCH = "zero-touch"
# tie order at equal times: switch first, then delayed sign flips
_KIND_ORDER = {SWITCH: 0, HISTORY_ZERO: 1, DELAYED_ZERO: 1, TOUCH: 2}


class NonTransversalError(ValueError):
    pass


class EventCascadeError(RuntimeError):
    pass


class TrajectoryRangeError(ValueError):
    pass


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class HistoryFunction:
    """Initial data on [-1, 0]: a constant, or a piecewise-linear interpolant."""

    kind: str
    value: float = 0.0
    knots: tuple[tuple[float, float], ...] = ()

    @classmethod
    def constant(cls, value: float) -> "HistoryFunction":
        return cls("constant", float(value))

    @classmethod
    def piecewise_linear(cls, knots: Sequence[tuple[float, float]]) -> "HistoryFunction":
        pts = tuple((float(s), float(x)) for s, x in knots)
        if len(pts) < 2 or pts[0][0] != -1.0 or pts[-1][0] != 0.0:
            raise ValueError("knots must start at s=-1 and end at s=0")
        if any(b[0] <= a[0] for a, b in zip(pts, pts[1:])):
            raise ValueError("knot times must be strictly increasing")
        if any(not math.isfinite(x) for _, x in pts):
            raise ValueError("knot values must be finite")
        return cls("piecewise-linear", knots=pts)

    def __post_init__(self):
        if self.kind not in ("constant", "piecewise-linear"):
            raise ValueError(f"unknown history kind {self.kind!r}")
        if self.kind == "constant" and not math.isfinite(self.value):
            raise ValueError("history value must be finite")
        if self.kind == "piecewise-linear":
            self._check_transversal()

    def _check_transversal(self):
        xs = [x for _, x in self.knots]
        if all(x == 0.0 for x in xs):
            return
        for (s0, x0), (s1, x1) in zip(self.knots, self.knots[1:]):
            if x0 == 0.0 and x1 == 0.0:
                raise NonTransversalError(
                    f"non-transversal zero: history vanishes on [{s0}, {s1}]")
        for i in range(1, len(xs) - 1):
            if xs[i] == 0.0 and _sign(xs[i - 1]) == _sign(xs[i + 1]):
                raise NonTransversalError(
                    f"non-transversal zero: history touches zero without crossing at s={self.knots[i][0]}")

    @property
    def is_zero(self) -> bool:
        if self.kind == "constant":
            return self.value == 0.0
        return all(x == 0.0 for _, x in self.knots)

    def __call__(self, s: float) -> float:
        if self.kind == "constant":
            return self.value
        ss = [k[0] for k in self.knots]
        i = min(max(bisect.bisect_right(ss, s) - 1, 0), len(ss) - 2)
        (s0, x0), (s1, x1) = self.knots[i], self.knots[i + 1]
        return x0 + (x1 - x0) * (s - s0) / (s1 - s0)

    def __neg__(self) -> "HistoryFunction":
        if self.kind == "constant":
            return HistoryFunction.constant(-self.value)
        return HistoryFunction("piecewise-linear", knots=tuple((s, -x) for s, x in self.knots))

    def initial_sign(self) -> int:
        """Sign just to the right of s = -1."""
        if self.kind == "constant":
            return _sign(self.value)
        for _, x in self.knots:
            if x != 0.0:
                return _sign(x)
        return 0

    def final_sign(self) -> int:
        """Sign just to the left of s = 0."""
        if self.kind == "constant":
            return _sign(self.value)
        for _, x in reversed(self.knots):
            if x != 0.0:
                return _sign(x)
        return 0

    def sign_changes(self) -> list[tuple[float, int]]:
        """Zeros in (-1, 0) with the sign taken on afterwards.

        A zero exactly at s = 0 is left to the integrator, which sees it as a
        zero of the solution at t = 0.
        """
        if self.kind == "constant":
            return []
        out = []
        current = self.initial_sign()
        for (s0, x0), (s1, x1) in zip(self.knots, self.knots[1:]):
            if x1 == 0.0:
                continue
            new = _sign(x1)
            if new != current:
                z = s0 - x0 * (s1 - s0) / (x1 - x0) if x0 != 0.0 else s0
                if z < 0.0:
                    out.append((z, new))
                current = new
        return out


@dataclass(frozen=True)
class EventRecord:
    t: float
    kind: str
    detail: str = ""

    def to_line(self) -> str:
        return f"t={self.t:.17g} kind={self.kind} detail={self.detail}"


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Continuous piecewise-affine solution; ``slopes[i]`` holds on ``[t_i, t_{i+1})``."""

    times: np.ndarray
    values: np.ndarray
    slopes: np.ndarray
    zeros: tuple[float, ...] = ()

    def __post_init__(self):
        for arr in (self.times, self.values, self.slopes):
            arr.setflags(write=False)

    @property
    def t_start(self) -> float:
        return float(self.times[0])

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    @property
    def breakpoints(self) -> list[tuple[float, float]]:
        return list(zip(self.times.tolist(), self.values.tolist()))

    @property
    def degenerate(self) -> bool:
        """True for the identically zero solution."""
        return not np.any(self.values) and not np.any(self.slopes)

    def segment_index(self, t: float) -> int:
        if t < self.times[0] - TIE_TOL or t > self.times[-1] + TIE_TOL:
            raise TrajectoryRangeError(
                f"t={t} outside trajectory span [{self.t_start}, {self.t_end}]")
        i = int(np.searchsorted(self.times, t, side="right")) - 1
        return min(max(i, 0), len(self.slopes) - 1)

    def __call__(self, t: float) -> float:
        i = self.segment_index(t)
        if t == self.times[i]:
            return float(self.values[i])
        if t == self.times[i + 1]:
            return float(self.values[i + 1])
        return float(self.values[i] + self.slopes[i] * (t - self.times[i]))

    def __neg__(self) -> "Trajectory":
        return Trajectory(self.times.copy(), -self.values, -self.slopes,
                          tuple(self.zeros))

    def to_csv(self) -> str:
        lines = ["t,x,slope,segment_index"]
        last = len(self.slopes) - 1
        for i, (t, x) in enumerate(zip(self.times.tolist(), self.values.tolist())):
            j = min(i, last)
            lines.append(f"{t:.17g},{x:.17g},{self.slopes[j]:.17g},{j}")
        return "\n".join(lines) + "\n"


def _switches(params: CoefficientParams) -> Iterator[tuple[float, int]]:
    # switch j sits at (j // 3) * T + offset; computed from j so it never drifts
    offsets = params.switch_offsets
    T = params.T
    j = 0
    while True:
        k, r = divmod(j, 3)
        yield k * T + offsets[r], r
        j += 1


def integrate_exact(history: HistoryFunction, params: CoefficientParams, t_end: float,
                    event_cap: int = DEFAULT_EVENT_CAP) -> tuple[Trajectory, list[EventRecord]]:
    """Integrate forward from ``history`` to ``t_end``.

    Returns the trajectory and the ordered list of events that produced its
    breakpoints.  Raises :class:`NonTransversalError` if the construction
    breaks down and :class:`EventCascadeError` if more than ``event_cap``
    events occur per period.
    """
    if not t_end > 0:
        raise ValueError(f"t_end must be > 0, got {t_end!r}")
    plateaus = params.plateaus
    max_events = event_cap * max(1, math.ceil(t_end / params.T))

    switch_iter = _switches(params)
    next_switch, next_plateau = next(switch_iter)
    plateau = 2  # value in force just before t = 0

    # pending delayed sign flips: (time, sequence, new_sign, kind)
    pending: list[tuple[float, int, int, str]] = []
    seq = 0
    for z, new in history.sign_changes():
        heapq.heappush(pending, (z + 1.0, seq, new, HISTORY_ZERO))
        seq += 1
    delayed_sign = history.initial_sign()

    t = 0.0
    x = history(0.0)
    cur_sign = history.final_sign()
    times, values, slopes = [t], [x], []
    zeros: list[float] = []
    events: list[EventRecord] = []

    while True:
        while next_switch <= t + TIE_TOL:
            plateau = next_plateau
            events.append(EventRecord(next_switch, SWITCH, f"plateau={plateau + 1}"))
            next_switch, next_plateau = next(switch_iter)
        while pending and pending[0][0] <= t + TIE_TOL:
            te, _, new, kind = heapq.heappop(pending)
            delayed_sign = new
            events.append(EventRecord(te, kind, f"delayed_sign={new:+d}"))
        if len(events) > max_events:
            raise EventCascadeError(
                f"more than {event_cap} events per period before t={t}; degenerate parameters?")
        if t >= t_end:
            break

        slope = plateaus[plateau] * -delayed_sign
        heading_to_zero = slope != 0.0 and x != 0.0 and _sign(slope) != _sign(x)
        z = t - x / slope if heading_to_zero else math.inf
        # a zero inside this segment schedules a flip at z + 1, which may come first
        tn = min(next_switch, pending[0][0] if pending else math.inf, z + 1.0, t_end)
        if tn > t_end - TIE_TOL:
            tn = t_end

        if slope == 0.0 and x != 0.0:
            raise NonTransversalError(
                f"delayed signal vanishes on an interval at t={t} while x={x}")
        if slope != 0.0 and x == 0.0:
            # at a zero: the outgoing slope decides between crossing and touch
            new = _sign(slope)
            if new != cur_sign:
                zeros.append(t)
                heapq.heappush(pending, (t + 1.0, seq, new, DELAYED_ZERO))
                seq += 1
                cur_sign = new
            else:
                events.append(EventRecord(t, TOUCH, f"sign={cur_sign:+d}"))

        x_new = x + slope * (tn - t)
        if heading_to_zero:
            if z < tn - TIE_TOL:
                zeros.append(z)
                cur_sign = -cur_sign
                heapq.heappush(pending, (z + 1.0, seq, cur_sign, DELAYED_ZERO))
                seq += 1
            elif z <= tn + TIE_TOL:
                # lands on zero at the event; resolved on the next segment
                x_new = 0.0

        times.append(tn)
        values.append(x_new)
        slopes.append(slope)
        t, x = tn, x_new

    traj = Trajectory(np.array(times), np.array(values), np.array(slopes), tuple(zeros))
    events.sort(key=lambda e: (e.t, _KIND_ORDER[e.kind]))
    return traj, events


def zeros_of(traj: Trajectory) -> list[float]:
    """Transversal zeros of ``traj`` in increasing order.

    The identically zero solution yields an empty list; check
    ``traj.degenerate`` to tell it apart from a sign-definite solution.
    """
    return list(traj.zeros)


def stroboscopic_samples(traj: Trajectory, params: CoefficientParams, n: int) -> list[float]:
    """Exact values x(kT) for k = 0..n."""
    T = params.T
    if n * T > traj.t_end + TIE_TOL:
        raise TrajectoryRangeError(
            f"trajectory ends at {traj.t_end}, need {n} periods ({n * T})")
    return [traj(k * T) for k in range(n + 1)]
