"""Reference parameter rows with their reported fixed points.

Columns are ``(a1, a2, a3_signed, p1, p2, p3, h_star, T)``; the third
coefficient is written negative.  Reported values carry four significant
digits.  Table I rows have period-T solutions, Table II rows period-2T.
"""
from __future__ import annotations

TABLE_I = (
    (0.5, 0.1, -0.1, 3.0, 1.0, 0.5, 0.2812, 4.5),
    (0.5, 0.1, -0.5, 3.0, 1.0, 0.5, 0.4062, 4.5),
    (1.0, 0.1, -0.1, 3.0, 1.0, 1.0, 0.5556, 5.0),
    (5.0, 0.1, -1.0, 3.0, 1.0, 1.0, 3.01, 5.0),
    (5.0, 1.0, -2.0, 3.0, 1.0, 1.0, 3.75, 5.0),
    (5.0, 3.0, -1.0, 3.0, 1.0, 1.0, 3.75, 5.0),
    (10.0, 0.1, -0.5, 3.0, 1.0, 1.0, 5.253, 5.0),
    (10.0, 0.5, -0.5, 3.0, 1.0, 1.0, 5.263, 5.0),
    (3.0, 0.5, -0.1, 3.0, 1.0, 5.0, 1.8, 9.0),
    (5.0, 3.0, -0.1, 3.0, 1.0, 5.0, 3.125, 9.0),
    (10.0, 0.5, -0.1, 3.0, 1.0, 5.0, 5.263, 9.0),
    (10.0, 3.0, -0.1, 3.0, 1.0, 5.0, 5.357, 9.0),
    (3.0, 0.1, -1.0, 5.0, 0.5, 5.0, 7.009, 10.5),
    (0.5, 0.1, -2.0, 5.0, 1.0, 0.5, 1.25, 6.5),
    (1.0, 0.5, -2.0, 5.0, 1.0, 1.0, 2.5, 7.0),
    (1.0, 0.1, -0.5, 5.0, 1.0, 5.0, 2.778, 11.0),
    (0.5, 0.1, -1.0, 5.0, 3.0, 1.0, 1.125, 9.0),
    (0.5, 0.1, -2.0, 5.0, 3.0, 0.5, 1.125, 8.5),
    (3.0, 0.5, -1.0, 5.0, 1.0, 5.0, 6.9, 11.0),
    (5.0, 1.0, -2.0, 5.0, 1.0, 5.0, 12.5, 11.0),
)

TABLE_II = (
    (0.5, 0.1, -0.1, 0.5, 1.0, 0.5, 0.1875, 2.0),
    (0.5, 0.1, -0.1, 1.0, 3.0, 0.5, 0.1562, 4.5),
    (0.5, 0.1, -1.0, 3.0, 1.0, 1.0, 1.25, 5.0),
    (1.0, 0.1, -0.1, 1.0, 3.0, 0.5, 0.4167, 4.5),
    (1.0, 0.5, -2.0, 3.0, 1.0, 1.0, 2.5, 5.0),
    (1.0, 0.1, -0.1, 0.5, 5.0, 0.5, 0.0833, 6.0),
    (1.0, 0.1, -0.5, 0.5, 3.0, 0.5, 0.3056, 4.0),
    (3.0, 0.1, -0.1, 0.5, 3.0, 1.0, 0.7241, 4.5),
    (3.0, 0.1, -1.0, 1.0, 1.0, 0.5, 1.759, 2.5),
    (3.0, 0.1, -2.0, 0.5, 5.0, 0.5, 1.086, 6.0),
    (5.0, 0.1, -0.1, 0.5, 1.0, 0.5, 1.301, 2.0),
    (5.0, 0.1, -0.1, 0.5, 3.0, 0.5, 0.3438, 4.0),
    (5.0, 1.0, -0.5, 0.5, 1.0, 1.0, 1.875, 2.5),
    (5.0, 1.0, -2.0, 1.0, 1.0, 1.0, 3.75, 3.0),
    (5.0, 1.0, -2.0, 1.0, 3.0, 1.0, 2.5, 5.0),
    (5.0, 3.0, -2.0, 1.0, 1.0, 0.5, 3.75, 2.5),
    (10.0, 0.1, -0.5, 0.5, 3.0, 1.0, 2.677, 4.5),
    (10.0, 0.5, -2.0, 0.5, 1.0, 0.5, 3.158, 2.0),
    (10.0, 3.0, -1.0, 1.0, 3.0, 1.0, 1.429, 5.0),
    (10.0, 5.0, -2.0, 1.0, 1.0, 1.0, 7.0, 3.0),
)


def table(which: str):
    if which == "I":
        return TABLE_I
    if which == "II":
        return TABLE_II
    raise ValueError(f"unknown table {which!r}; expected 'I' or 'II'")
