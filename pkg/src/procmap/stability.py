"""Fixed points of f^n, their stability, and sweeps over g."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .mapcore import TWO_PI, MapParams, iterate_array, iterate_n, multiplier_n, orbit_points
from .roots import BracketError, bisect, bisect_state, sign_change_brackets

ROOT_TOL = 1e-12
DEDUP_TOL = 1e-8
NEUTRAL_BAND = 1e-9
BOUNDARY_TOL = 1e-6


class Stability(str, enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class FixedPointRecord:
    a: float
    n: int
    multiplier: float
    stability: Stability
    residual: float


@dataclass
class StabilitySweep:
    n: int
    g_grid: np.ndarray
    records: list[list[FixedPointRecord]]

    def stable_counts(self) -> np.ndarray:
        return np.array([sum(r.stability is Stability.STABLE for r in recs) for recs in self.records])


def default_grid(n: int) -> int:
    """8192 points for n <= 4, doubled for each further doubling of n."""
    if n <= 4:
        return 8192
    return 8192 * 2 ** (math.ceil(math.log2(n)) - 2)


def classify_multiplier(m: float, neutral_band: float = NEUTRAL_BAND) -> Stability:
    if abs(m) < 1.0 - neutral_band:
        return Stability.STABLE
    if abs(m) > 1.0 + neutral_band:
        return Stability.UNSTABLE
    return Stability.NEUTRAL


def find_fixed_points(p: MapParams | float, n: int, interval: tuple[float, float] = (0.0, TWO_PI),
                      grid: int | None = None) -> list[FixedPointRecord]:
    """Roots of h(A) = f^n(A) - A on [lo, hi).

    Sign changes of h on a uniform grid are bisected to ROOT_TOL; roots
    closer than DEDUP_TOL are merged. A double root where h touches zero
    without crossing is invisible to this scan.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    lo, hi = interval
    if not lo < hi:
        raise ValueError("need lo < hi")
    grid = grid or default_grid(n)
    if grid < 2:
        raise ValueError("grid must be >= 2")
    g = p.g if isinstance(p, MapParams) else float(p)

    # include hi so the last cell is bracketed; a root exactly at hi is dropped
    xs = lo + (hi - lo) * np.arange(grid + 1) / grid
    hs = iterate_array(g, xs, n) - xs

    def h(a):
        return iterate_n(g, a, n, escape_bound=math.inf) - a

    found = [float(x) for x, v in zip(xs[:-1], hs[:-1]) if v == 0.0]
    for i, j in sign_change_brackets(xs, hs):
        try:
            found.append(bisect(h, float(xs[i]), float(xs[j]), ftol=ROOT_TOL))
        except BracketError:
            # numpy and libm sin disagree in the last bit at this grid point
            continue
    found.sort()

    roots: list[float] = []
    for r in found:
        if roots and r - roots[-1] < DEDUP_TOL:
            continue
        if lo <= r < hi:
            roots.append(r)

    out = []
    for r in roots:
        m = multiplier_n(g, orbit_points(g, r, n), n)
        out.append(FixedPointRecord(r, n, m, classify_multiplier(m), abs(h(r))))
    return out


def _sweep_one(args):
    g, n, interval, grid = args
    return find_fixed_points(g, n, interval, grid)


def sweep_stability(n: int, g_lo: float, g_hi: float, steps: int,
                    interval: tuple[float, float] = (0.0, TWO_PI), grid: int | None = None,
                    workers: int = 1) -> StabilitySweep:
    if not g_lo < g_hi:
        raise ValueError("need g_lo < g_hi")
    gs = np.linspace(g_lo, g_hi, steps)
    jobs = [(float(g), n, interval, grid) for g in gs]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(workers) as ex:
            records = list(ex.map(_sweep_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        records = [_sweep_one(j) for j in jobs]
    return StabilitySweep(n, gs, records)


def stable_count(g: float, n: int, interval=(0.0, TWO_PI), grid: int | None = None) -> int:
    return sum(r.stability is Stability.STABLE for r in find_fixed_points(g, n, interval, grid))


def locate_stability_boundary(n: int, g_bracket: tuple[float, float],
                              interval: tuple[float, float] = (0.0, TWO_PI),
                              tol: float = BOUNDARY_TOL, grid: int | None = None) -> float:
    """g at which the number of stable roots of f^n changes, by bisection on g.

    Raises BracketError if the stable count is the same at both ends.
    """
    lo, hi = g_bracket
    try:
        a, b = bisect_state(lambda g: stable_count(g, n, interval, grid), lo, hi, xtol=tol)
    except BracketError as e:
        raise BracketError(f"stable-root count of f^{n} does not change on [{lo}, {hi}]") from e
    return 0.5 * (a + b)
