"""Flat ``key = value`` scenario files.

Example::

    # Table I, first row, started on its fixed point
    a1 = 0.5
    a2 = 0.1
    a3_signed = -0.1
    p1 = 3
    p2 = 1
    p3 = 0.5
    history = 0.28125
    t_end = 36

``history`` is either a number (constant history) or a comma-separated
knot list ``s:x, s:x, ...`` covering ``[-1, 0]``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .coefficients import CoefficientParams, ParameterError, ingest_params, validate_delta
from .exact import HistoryFunction

REQUIRED = ("a1", "a2", "a3_signed", "p1", "p2", "p3")
OPTIONAL = ("history", "delta", "mu", "step", "t_end")
KEYS = REQUIRED + OPTIONAL


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    params: CoefficientParams
    history: HistoryFunction | None = None
    delta: float = 0.0
    mu: float = 0.0
    step: float = 1e-3
    t_end: float | None = None

    def __post_init__(self):
        validate_delta(self.delta, self.params)
        if not self.mu >= 0:
            raise ScenarioError(f"mu must be >= 0, got {self.mu!r}")
        if not self.step > 0:
            raise ScenarioError(f"step must be > 0, got {self.step!r}")
        if self.t_end is not None and not self.t_end > 0:
            raise ScenarioError(f"t_end must be > 0, got {self.t_end!r}")

    @property
    def horizon(self) -> float:
        """t_end, defaulting to eight coefficient periods."""
        return self.t_end if self.t_end is not None else 8 * self.params.T

    def dumps(self) -> str:
        p = self.params
        rows = [("a1", p.a1), ("a2", p.a2), ("a3_signed", p.a3_signed),
                ("p1", p.p1), ("p2", p.p2), ("p3", p.p3)]
        lines = ["# pcdde scenario"]
        lines += [f"{k} = {v:.17g}" for k, v in rows]
        if self.history is not None:
            lines.append(f"history = {format_history(self.history)}")
        lines += [f"delta = {self.delta:.17g}", f"mu = {self.mu:.17g}",
                  f"step = {self.step:.17g}"]
        if self.t_end is not None:
            lines.append(f"t_end = {self.t_end:.17g}")
        return "\n".join(lines) + "\n"


def format_history(history: HistoryFunction) -> str:
    if history.kind == "constant":
        return f"{history.value:.17g}"
    return ", ".join(f"{s:.17g}:{x:.17g}" for s, x in history.knots)


def parse_history(text: str) -> HistoryFunction:
    text = text.strip()
    if ":" not in text:
        return HistoryFunction.constant(_number("history", text))
    knots = []
    for item in text.split(","):
        try:
            s, x = item.split(":")
            knots.append((float(s), float(x)))
        except ValueError:
            raise ScenarioError(f"bad history knot {item.strip()!r}; expected s:x") from None
    return HistoryFunction.piecewise_linear(knots)


def _number(key: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ScenarioError(f"{key}: not a number: {text!r}") from None


def loads(text: str) -> Scenario:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    return from_mapping(raw)


def from_mapping(raw: dict[str, str | float | None]) -> Scenario:
    missing = [k for k in REQUIRED if raw.get(k) is None]
    if missing:
        raise ScenarioError(f"missing keys: {', '.join(missing)}")
    num = {k: _number(k, str(raw[k])) for k in KEYS if k != "history" and raw.get(k) is not None}
    try:
        params = ingest_params(*(num[k] for k in REQUIRED))
    except ParameterError as exc:
        raise ScenarioError(str(exc)) from None
    hist = raw.get("history")
    history = parse_history(str(hist)) if hist is not None else None
    try:
        return Scenario(params, history, delta=num.get("delta", 0.0), mu=num.get("mu", 0.0),
                        step=num.get("step", 1e-3), t_end=num.get("t_end"))
    except ParameterError as exc:
        raise ScenarioError(str(exc)) from None


def load(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
