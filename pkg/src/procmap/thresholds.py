"""Solvers for the bifurcation thresholds of the process map.

Three families:

* bios onset: the g at which the image of the critical point reaches the
  next sine period, A* + g sin(A*) = 2pi with A* = acos(-1/g);
* ballistic onset: g sin(A_k) = 2 m pi, minimised at A_k = pi/2, so g = 2 m pi;
* L-step onset: f^L(A_k) - A_k = 2pi, one equation in (g, A_k), solved
  for either unknown with the other fixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mapcore import TWO_PI, iterate_array, iterate_n
from .roots import BracketError, NoRoot, bisect

SOLVER_TOL = 1e-12
BIOS_BRACKET = (4.0, 5.0)
LSTEP_G_BRACKET = (4.6, TWO_PI)
LSTEP_A_BRACKET = (math.pi / 2, math.pi)
SCAN_POINTS = 4096


@dataclass(frozen=True)
class ThresholdResult:
    g: float
    residual: float
    aux: float | None
    kind: str
    order: int | None = None

    @property
    def label(self) -> str:
        return self.kind if self.order is None else f"{self.kind}({self.order})"


def bios_residual(g: float) -> float:
    a = math.acos(-1.0 / g)
    return a + g * math.sin(a) - TWO_PI


def solve_bios_onset(bracket: tuple[float, float] = BIOS_BRACKET) -> ThresholdResult:
    g = bisect(bios_residual, *bracket, xtol=1e-13)
    return ThresholdResult(g, bios_residual(g), math.acos(-1.0 / g), "BiosOnset")


def ballistic_onset(k: int) -> ThresholdResult:
    """Smallest g with g sin(A) = 2 k pi, reached where sin(A) = 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    g = k * TWO_PI
    return ThresholdResult(g, g * math.sin(math.pi / 2) - k * TWO_PI, math.pi / 2, "BallisticOnset", k)


def lstep_residual(L: int, g: float, a_k: float) -> float:
    """f^L(a_k) - a_k - 2pi, i.e. sum_{j<L} g sin(f^j(a_k)) - 2pi."""
    return iterate_n(g, a_k, L, escape_bound=math.inf) - a_k - TWO_PI


def _first_root(func, grid_values: np.ndarray, xs: np.ndarray) -> float:
    """Bisect the first sign change of ``func``, located from its values on ``xs``."""
    zero = np.nonzero(grid_values == 0.0)[0]
    first_zero = int(zero[0]) if zero.size else None
    s = np.sign(grid_values)
    for i in np.nonzero(s[:-1] * s[1:] < 0)[0]:
        if first_zero is not None and first_zero <= i:
            break
        try:
            return bisect(func, float(xs[i]), float(xs[i + 1]))
        except BracketError:
            # vectorized and scalar sin disagree in the last bit here
            continue
    if first_zero is not None:
        return float(xs[first_zero])
    raise NoRoot(f"no sign change on [{xs[0]}, {xs[-1]}]")


def solve_lstep(L: int, a_k: float, g_bracket: tuple[float, float] = LSTEP_G_BRACKET,
                points: int = SCAN_POINTS) -> ThresholdResult:
    """Smallest g in the bracket with f^L(a_k) - a_k = 2pi for fixed a_k."""
    if L < 2:
        raise ValueError("L must be >= 2")
    if not 0.0 < a_k < math.pi:
        raise NoRoot(f"a_k = {a_k!r} is outside (0, pi)")
    try:
        gs = np.linspace(*g_bracket, points)
        vals = iterate_array(gs, a_k, L) - a_k - TWO_PI
        g = _first_root(lambda g: lstep_residual(L, g, a_k), vals, gs)
    except NoRoot as e:
        raise NoRoot(f"L={L}, a_k={a_k!r}: {e}") from None
    return ThresholdResult(g, lstep_residual(L, g, a_k), a_k, "LStepOnset", L)


def solve_lstep_state(L: int, g: float, a_bracket: tuple[float, float] = LSTEP_A_BRACKET,
                      points: int = SCAN_POINTS) -> ThresholdResult:
    """Smallest a_k in the bracket with f^L(a_k) - a_k = 2pi for fixed g.

    The default bracket is the descending half (pi/2, pi) of the positive
    sine lobe; the equation usually has further roots below pi/2.
    """
    if L < 2:
        raise ValueError("L must be >= 2")
    try:
        xs = np.linspace(*a_bracket, points)
        vals = iterate_array(g, xs, L) - xs - TWO_PI
        a = _first_root(lambda a: lstep_residual(L, g, a), vals, xs)
    except NoRoot as e:
        raise NoRoot(f"L={L}, g={g!r}: {e}") from None
    return ThresholdResult(g, lstep_residual(L, g, a), a, "LStepOnset", L)


def lstep_state_roots(L: int, g: float, a_bracket: tuple[float, float] = (0.0, math.pi),
                      points: int = SCAN_POINTS) -> list[float]:
    """Every sign-change root in a_k of the L-step condition at fixed g."""
    xs = np.linspace(*a_bracket, points)
    vs = iterate_array(g, xs, L) - xs - TWO_PI
    out = []
    for i in np.nonzero(np.sign(vs[:-1]) * np.sign(vs[1:]) < 0)[0]:
        try:
            out.append(bisect(lambda a: lstep_residual(L, g, a), float(xs[i]), float(xs[i + 1])))
        except BracketError:
            continue
    return out


def scan_lstep_solutions(L: int, a_grid, g_bracket: tuple[float, float] = LSTEP_G_BRACKET,
                         dedup_tol: float = 1e-9, points: int = SCAN_POINTS) -> list[ThresholdResult]:
    """solve_lstep at each a_k of the grid; failures are skipped, duplicate g values merged."""
    a_grid = list(a_grid)
    if not a_grid:
        raise ValueError("a_grid is empty")
    results = []
    for a in a_grid:
        try:
            results.append(solve_lstep(L, float(a), g_bracket, points))
        except NoRoot:
            continue
    results.sort(key=lambda r: r.g)
    out: list[ThresholdResult] = []
    for r in results:
        if out and abs(r.g - out[-1].g) < dedup_tol:
            continue
        out.append(r)
    return out
