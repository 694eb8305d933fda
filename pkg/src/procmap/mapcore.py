"""The process map f(A) = A + g sin(A) and its derivatives.

Scalar inputs go through ``math`` for speed inside long orbit loops;
ndarray inputs go through numpy so the window scanner can sweep a whole
g grid at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

TWO_PI = 2.0 * math.pi
DEFAULT_ESCAPE_BOUND = 1e12


class DomainError(ValueError):
    """Raised when g leaves the domain of an operation (e.g. g <= 1 for critical points)."""


class Escaped(ArithmeticError):
    """An iterate exceeded the escape bound.

    ``step`` is the 1-based iteration count at which |A| first exceeded
    the bound and ``value`` the offending iterate.
    """

    def __init__(self, step: int, value: float):
        super().__init__(f"orbit escaped at step {step} (|A| = {abs(value):.3e})")
        self.step = step
        self.value = value


@dataclass(frozen=True)
class MapParams:
    g: float
    escape_bound: float = DEFAULT_ESCAPE_BOUND

    def __post_init__(self):
        if not math.isfinite(self.g):
            raise DomainError(f"g must be finite, got {self.g!r}")
        if not self.escape_bound > 0:
            raise ValueError("escape_bound must be positive")


@dataclass(frozen=True)
class CriticalPair:
    a1: float
    a2: float

    def __getitem__(self, which: str) -> float:
        return {"A1": self.a1, "A2": self.a2}[which]


def _g(p: MapParams | float) -> float:
    return p.g if isinstance(p, MapParams) else float(p)


def eval_map(p: MapParams | float, a):
    """One application of the map. Works on floats and ndarrays."""
    g = _g(p)
    if isinstance(a, np.ndarray):
        return a + g * np.sin(a)
    return a + g * math.sin(a)


def deriv(p: MapParams | float, a):
    g = _g(p)
    if isinstance(a, np.ndarray):
        return 1.0 + g * np.cos(a)
    return 1.0 + g * math.cos(a)


def iterate_n(p: MapParams | float, a: float, n: int, escape_bound: float | None = None) -> float:
    """n-fold composition of the map, computed sequentially.

    Raises Escaped as soon as |A| exceeds the escape bound (taken from
    ``p`` when it is a MapParams, else DEFAULT_ESCAPE_BOUND).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    g = _g(p)
    if escape_bound is None:
        escape_bound = p.escape_bound if isinstance(p, MapParams) else DEFAULT_ESCAPE_BOUND
    sin = math.sin
    for k in range(1, n + 1):
        a = a + g * sin(a)
        if not abs(a) <= escape_bound:
            raise Escaped(k, a)
    return a


def iterate_array(g, a, n: int) -> np.ndarray:
    """Vectorized n-fold composition; g and a broadcast together. No escape check."""
    g = np.asarray(g, dtype=float)
    a = np.array(a, dtype=float, copy=True) + np.zeros_like(g)
    for _ in range(n):
        a = a + g * np.sin(a)
    return a


def orbit_points(p: MapParams | float, a: float, n: int) -> list[float]:
    """The n consecutive iterates A_0 .. A_{n-1} starting at ``a``."""
    g = _g(p)
    pts = [a]
    for _ in range(n - 1):
        a = a + g * math.sin(a)
        pts.append(a)
    return pts


def multiplier_n(p: MapParams | float, orbit: Sequence[float], n: int) -> float:
    """Chain-rule derivative of f^n: the product of f'(A_i) over the n orbit points."""
    if len(orbit) < n:
        raise ValueError(f"need {n} orbit points, got {len(orbit)}")
    g = _g(p)
    m = 1.0
    for a in orbit[:n]:
        m *= 1.0 + g * math.cos(a)
    return m


def critical_points(p: MapParams | float) -> CriticalPair:
    """Zeros of f' inside one sine period: acos(-1/g) and its mirror 2pi - acos(-1/g)."""
    g = _g(p)
    if not g > 1.0:
        raise DomainError(f"critical points need g > 1, got g = {g!r}")
    a1 = math.acos(-1.0 / g)
    return CriticalPair(a1, TWO_PI - a1)
