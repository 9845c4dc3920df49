"""Rounding helpers that are robust to floating-point noise."""

from __future__ import annotations

import math

SNAP_RTOL = 1e-9


def snap(x: float) -> float:
    """Return the nearest integer if ``x`` is within SNAP_RTOL of it, else ``x``."""
    r = round(x)
    if abs(x - r) <= SNAP_RTOL * max(1.0, abs(x)):
        return float(r)
    return x


def ceil_snap(x: float) -> int:
    return math.ceil(snap(x))


def ceil_odd(x: float) -> int:
    """Smallest odd integer >= x (after snapping)."""
    c = ceil_snap(x)
    return c if c % 2 else c + 1


def ceil_sqrt(n: int) -> int:
    """Exact integer ceiling of sqrt(n) for n >= 0."""
    if n <= 0:
        return 0
    return math.isqrt(n - 1) + 1


def ceil_log2(n: int) -> int:
    """Exact integer ceiling of log2(n) for n >= 1."""
    return (n - 1).bit_length()


def round_half_up(num: int, den: int) -> int:
    """Round num/den to the nearest integer, ties away from zero (num, den >= 0)."""
    return (2 * num + den) // (2 * den)
