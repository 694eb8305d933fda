"""Periodic-window detection from iterated critical points, and Q-curves.

A parameter g satisfies the (L, I) window condition when the critical
orbit sampled every L steps alternates between beyond (2I+1)pi and
below pi:

    f^{L n}(A*) > (2I + 1) pi   for odd n,
    f^{L n}(A*) < pi            for even n,      n = 1 .. n_max.

The mirror critical point A2 = 2pi - A1 has the mirrored orbit
f^k(A2) = 2pi - f^k(A1), so its condition is the reflection of the above
about pi: f^{L n}(A2) < (1 - 2I) pi for odd n and > pi for even n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .mapcore import TWO_PI, DomainError, critical_points, iterate_array
from .roots import bisect_state

WINDOW_GRID_PER_UNIT = 20_000
BOUNDARY_TOL = 1e-6


@dataclass(frozen=True)
class WindowPredicateSpec:
    L: int = 1
    I: int = 1
    n_max: int = 20
    which: str = "A1"

    def __post_init__(self):
        if self.L < 1 or self.I < 1 or self.n_max < 1:
            raise ValueError("L, I and n_max must all be >= 1")
        if self.which not in ("A1", "A2"):
            raise ValueError("which must be 'A1' or 'A2'")


@dataclass
class WindowInterval:
    g_lo: float
    g_hi: float
    spec: WindowPredicateSpec
    refinement_n: int
    coarse: bool = False
    truncated: tuple[bool, bool] = (False, False)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.g_lo + self.g_hi)

    @property
    def width(self) -> float:
        return self.g_hi - self.g_lo

    def overlaps(self, lo: float, hi: float) -> bool:
        return self.g_lo <= hi and lo <= self.g_hi


@dataclass
class QCurve:
    n: int
    which: str
    g_grid: np.ndarray
    points: np.ndarray
    raw: np.ndarray = field(repr=False)


def critical_array(g, which: str = "A1") -> np.ndarray:
    g = np.asarray(g, dtype=float)
    if np.any(g <= 1.0):
        raise DomainError("window conditions need g > 1")
    a1 = np.arccos(-1.0 / g)
    return a1 if which == "A1" else TWO_PI - a1


def window_mask(spec: WindowPredicateSpec, g) -> np.ndarray:
    """Predicate evaluated on an array of g values."""
    g = np.atleast_1d(np.asarray(g, dtype=float))
    a = critical_array(g, spec.which)
    high = (2 * spec.I + 1) * math.pi
    ok = np.ones(g.shape, dtype=bool)
    for n in range(1, spec.n_max + 1):
        a = iterate_array(g, a, spec.L)
        if spec.which == "A1":
            ok &= (a > high) if n % 2 else (a < math.pi)
        else:
            ok &= (a < TWO_PI - high) if n % 2 else (a > math.pi)
        if not ok.any():
            break
    return ok


def window_predicate(g: float, spec: WindowPredicateSpec) -> bool:
    # one code path with window_mask so grid and refinement agree bit for bit
    return bool(window_mask(spec, g)[0])


def find_windows(spec: WindowPredicateSpec, g_lo: float, g_hi: float, grid: int | None = None,
                 refine: bool = True, tol: float = BOUNDARY_TOL) -> list[WindowInterval]:
    """Maximal runs of g where the window predicate holds.

    The predicate is sampled on a uniform grid (default 20,000 points per
    unit of g) and each interior run boundary is bisected to ``tol``.
    Runs that touch the scan edge keep that edge and are flagged in
    ``truncated``.
    """
    if not g_lo > 1.0:
        raise DomainError("find_windows needs g_lo > 1")
    if not g_hi > g_lo:
        raise ValueError("need g_hi > g_lo")
    if grid is None:
        grid = max(2, int(math.ceil(WINDOW_GRID_PER_UNIT * (g_hi - g_lo))) + 1)
    gs = np.linspace(g_lo, g_hi, grid)
    mask = window_mask(spec, gs)

    def state(g):
        return window_predicate(g, spec)

    edges = np.diff(mask.astype(np.int8))
    starts = list(np.nonzero(edges == 1)[0] + 1)
    stops = list(np.nonzero(edges == -1)[0])
    if mask[0]:
        starts.insert(0, 0)
    if mask[-1]:
        stops.append(grid - 1)

    out = []
    for i, j in zip(starts, stops):
        lo, hi = float(gs[i]), float(gs[j])
        trunc = (bool(i == 0), bool(j == grid - 1))
        if refine:
            if not trunc[0]:
                lo = bisect_state(state, float(gs[i]), float(gs[i - 1]), xtol=tol)[0]
            if not trunc[1]:
                hi = bisect_state(state, float(gs[j]), float(gs[j + 1]), xtol=tol)[0]
        out.append(WindowInterval(lo, hi, spec, spec.n_max, coarse=not refine, truncated=trunc))
    return out


def q_curve(n: int, which: str, g_grid) -> QCurve:
    """g -> f^n(A*) mod 2pi along the grid (the shadow curve of the critical point)."""
    if which not in ("A1", "A2"):
        raise ValueError("which must be 'A1' or 'A2'")
    gs = np.asarray(g_grid, dtype=float)
    raw = iterate_array(gs, critical_array(gs, which), n)
    pts = np.mod(raw, TWO_PI)
    pts[pts >= TWO_PI] = 0.0
    return QCurve(n, which, gs, pts, raw)


def critical_point(g: float, which: str = "A1") -> float:
    return critical_points(g)[which]
