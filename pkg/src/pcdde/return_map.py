"""Closed-form return maps for constant positive histories.

Starting from a constant history ``h > 0``, the value one period later is an
affine function of ``h`` as long as the solution keeps the expected shape:

* Type I (period T): two zeros ``h/a1`` and ``h/a1 + 2`` per period, positive
  again before the first switch.  ``F(h) = m h + b``.
* Type II (period 2T): one sign change per period.  The half-map is
  ``F1(h) = m h - b`` for ``h > 0`` and its mirror ``F2(h) = m h + b`` for
  ``h < 0``; a fixed point of ``F2 o F1`` is a 2T-periodic solution.

The maps are defined for any parameters; whether the shape assumptions hold
at a given ``h`` is reported separately by :func:`validate_type1` and
:func:`validate_type2`.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .coefficients import CoefficientParams

TYPE_I = "TypeI"
TYPE_II_HALF = "TypeII-half"

STABLE = "asymptotically-stable"
NEUTRAL = "neutral"
UNSTABLE = "unstable"


class DegenerateMapError(ValueError):
    pass


class DegenerateOrbitError(ValueError):
    pass


@dataclass(frozen=True)
class AffineMap:
    m: float
    b: float
    variant: str

    def __call__(self, h: float) -> float:
        if self.variant == TYPE_I:
            return self.m * h + self.b
        if h == 0.0:
            raise DegenerateOrbitError("Type II half-map is undefined at h = 0")
        return self.m * h - self.b if h > 0 else self.m * h + self.b


@dataclass(frozen=True)
class Check:
    name: str
    required: str
    value: float
    passed: bool


@dataclass(frozen=True)
class ValidityReport:
    checks: tuple[Check, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        return [f"check {c.name}: {c.required} value={c.value:.6g} "
                f"{'pass' if c.passed else 'FAIL'}" for c in self.checks]


@dataclass(frozen=True)
class FixedPointResult:
    params: CoefficientParams
    map: AffineMap
    h_star: float
    stability: str
    period: float
    validity: ValidityReport = field(default_factory=ValidityReport)

    @property
    def variant(self) -> str:
        return self.map.variant

    def to_text(self) -> str:
        p = self.params
        head = [
            f"variant: {self.variant}",
            f"params: a1={p.a1:.6g} a2={p.a2:.6g} a3={p.a3:.6g} "
            f"p1={p.p1:.6g} p2={p.p2:.6g} p3={p.p3:.6g} T={p.T:.6g}",
            f"m: {self.map.m:.17g}",
            f"b: {self.map.b:.17g}",
            f"h_star: {self.h_star:.17g}",
            f"stability: {self.stability}",
            f"period: {self.period:.17g}",
            f"valid: {'yes' if self.validity.passed else 'no'}",
        ]
        return "\n".join(head + self.validity.lines())


def _stability(m: float) -> str:
    if abs(m) < 1.0:
        return STABLE
    if abs(m) == 1.0:
        return NEUTRAL
    return UNSTABLE


def type1_offset(p: CoefficientParams) -> float:
    return p.a1 * (p.p1 - 2.0) + p.a2 * (6.0 - (2.0 * p.p1 + p.p2)) + p.a3 * p.p3


def type2_offset(p: CoefficientParams) -> float:
    return p.a1 * p.p1 + p.a2 * (2.0 - 2.0 * p.p1 - p.p2) + p.a3 * p.p3


def type1_map(params: CoefficientParams) -> AffineMap:
    return AffineMap(2.0 * params.a2 / params.a1 - 1.0, type1_offset(params), TYPE_I)


def type2_map(params: CoefficientParams) -> AffineMap:
    return AffineMap(1.0 - 2.0 * params.a2 / params.a1, type2_offset(params), TYPE_II_HALF)


def type1_values(params: CoefficientParams, h: float) -> dict[str, float]:
    """First zero and the four sampled values of the Type I construction."""
    p = params
    r = p.a2 / p.a1
    x3 = (2.0 * r - 1.0) * h + p.a1 * (p.p1 - 2.0) + p.a2 * (6.0 - (2.0 * p.p1 + p.p2))
    return {
        "t1": h / p.a1,
        "x1": -h + p.a1 * p.p1 - 2.0 * p.a1,
        "x2": (r - 1.0) * h + p.a1 * p.p1 - 2.0 * p.a1 + 3.0 * p.a2 - p.a2 * p.p1,
        "x3": x3,
        "x4": x3 + p.a3 * p.p3,
    }


def type2_values(params: CoefficientParams, h: float) -> dict[str, float]:
    """First zero and the four sampled values of the Type II construction."""
    p = params
    r = p.a2 / p.a1
    x3 = (1.0 - 2.0 * r) * h - p.a1 * p.p1 - p.a2 * (2.0 - 2.0 * p.p1 - p.p2)
    return {
        "t1": h / p.a1,
        "x1": h - p.a1 * p.p1,
        "x2": (1.0 - r) * h - p.a2 + p.p1 * (p.a2 - p.a1),
        "x3": x3,
        "x4": x3 - p.a3 * p.p3,
    }


def validate_type1(params: CoefficientParams, h: float) -> ValidityReport:
    p = params
    v = type1_values(p, h)
    t1 = v["t1"]
    b = type1_offset(p)
    checks = (
        Check("h_positive", "h > 0", h, h > 0),
        Check("p1_gt_2", "p1 > 2", p.p1, p.p1 > 2.0),
        Check("second_zero_before_p1", "t1 + 2 < p1", t1 + 2.0, t1 + 2.0 < p.p1),
        Check("t1_plus_3_in_second_segment", "p1 < t1 + 3 < p1 + p2", t1 + 3.0,
              p.p1 < t1 + 3.0 < p.p1 + p.p2),
        Check("b_positive", "b > 0", b, b > 0),
        Check("x3_positive", "x(p1 + p2) > 0", v["x3"], v["x3"] > 0),
        Check("x4_positive", "x(T) > 0", v["x4"], v["x4"] > 0),
    )
    return ValidityReport(checks)


def validate_type2(params: CoefficientParams, h: float) -> ValidityReport:
    p = params
    v = type2_values(p, h)
    t1 = v["t1"]
    b = type2_offset(p)
    ineq = p.a1 * p.p1 + p.a2 * (2.0 - 2.0 * p.p1 - p.p2)
    checks = (
        Check("h_positive", "h > 0", h, h > 0),
        Check("first_zero_before_p1", "t1 < p1", t1, t1 < p.p1),
        Check("t1_plus_1_in_second_segment", "p1 < t1 + 1 < p1 + p2", t1 + 1.0,
              p.p1 < t1 + 1.0 < p.p1 + p.p2),
        Check("x3_negative", "x(p1 + p2) < 0", v["x3"], v["x3"] < 0),
        Check("b_positive", "b > 0", b, b > 0),
        Check("existence_inequality", "a1 p1 + a2 (2 - 2 p1 - p2) > 0", ineq, ineq > 0),
    )
    return ValidityReport(checks)


def _require_distinct_rates(params: CoefficientParams):
    if params.a1 == params.a2:
        raise DegenerateMapError(
            "degenerate map: a1 == a2 gives |m| = 1 and no isolated fixed point")


def fixed_point_closed_form(params: CoefficientParams, b: float) -> float:
    """a1 b / (2 (a1 - a2)), shared by both variants."""
    return params.a1 * b / (2.0 * (params.a1 - params.a2))


def type1_fixed_point(params: CoefficientParams) -> FixedPointResult:
    _require_distinct_rates(params)
    fmap = type1_map(params)
    h = fixed_point_closed_form(params, fmap.b)
    return FixedPointResult(params, fmap, h, _stability(fmap.m), params.T,
                            validate_type1(params, h))


def type2_cycle(params: CoefficientParams) -> FixedPointResult:
    _require_distinct_rates(params)
    fmap = type2_map(params)
    h = fixed_point_closed_form(params, fmap.b)
    return FixedPointResult(params, fmap, h, _stability(fmap.m), 2.0 * params.T,
                            validate_type2(params, h))


def iterate_map(fmap: AffineMap, h0: float, n: int) -> list[float]:
    """Orbit ``[h0, F(h0), ..., F^n(h0)]``.

    For the Type II half-map each step picks ``F1`` or ``F2`` by the sign of
    the current iterate, so two steps make one full 2T return.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    orbit = [float(h0)]
    for _ in range(n):
        orbit.append(fmap(orbit[-1]))
    return orbit


def validity_window(params: CoefficientParams, variant: str) -> tuple[float, float]:
    """Open interval of ``h`` where the variant's shape checks all pass.

    Every check is affine in ``h``, so the set is an interval; returns
    ``(lo, hi)`` with ``lo >= hi`` when empty.
    """
    values = type1_values if variant == TYPE_I else type2_values
    p = params
    lo, hi = 0.0, float("inf")
    if variant == TYPE_I:
        if not (p.p1 > 2.0 and type1_offset(p) > 0):
            return (0.0, 0.0)
        hi = min(hi, p.a1 * (p.p1 - 2.0), p.a1 * (p.p1 + p.p2 - 3.0))
        lo = max(lo, p.a1 * (p.p1 - 3.0))
        keys = ("x3", "x4")
        sign = 1.0
    else:
        if p.a1 * p.p1 + p.a2 * (2.0 - 2.0 * p.p1 - p.p2) <= 0 or type2_offset(p) <= 0:
            return (0.0, 0.0)
        hi = min(hi, p.a1 * p.p1, p.a1 * (p.p1 + p.p2 - 1.0))
        lo = max(lo, p.a1 * (p.p1 - 1.0))
        keys = ("x3",)
        sign = -1.0
    for key in keys:
        # sign * value(h) > 0 with value affine in h
        c0 = sign * values(p, 0.0)[key]
        c1 = sign * values(p, 1.0)[key] - c0
        if c1 > 0:
            lo = max(lo, -c0 / c1)
        elif c1 < 0:
            hi = min(hi, -c0 / c1)
        elif c0 <= 0:
            return (0.0, 0.0)
    return (lo, hi)
