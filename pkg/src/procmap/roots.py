"""Bracketed bisection used by every solver in the package.

Newton is avoided on purpose: iterates of the map oscillate wildly and
their derivatives change sign, while a sign bracket always converges.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np


class BracketError(ValueError):
    """The supplied interval does not bracket a sign (or state) change."""


class NoRoot(ValueError):
    """No sign change of the target function was found in the search interval."""


def bisect(func: Callable[[float], float], lo: float, hi: float,
           xtol: float = 0.0, ftol: float = 0.0, max_iter: int = 200) -> float:
    """Root of ``func`` in [lo, hi] by bisection.

    Stops when |func(x)| <= ftol, the bracket is narrower than xtol, or
    the bracket can no longer be split in floating point.
    """
    flo, fhi = func(lo), func(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise BracketError(f"f({lo!r}) and f({hi!r}) have the same sign")
    best, fbest = (lo, flo) if abs(flo) < abs(fhi) else (hi, fhi)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fmid = func(mid)
        if abs(fmid) < abs(fbest):
            best, fbest = mid, fmid
        if fmid == 0.0 or abs(fmid) <= ftol:
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo <= xtol:
            break
    return best


def bisect_state(state: Callable[[float], object], lo: float, hi: float,
                 xtol: float = 1e-6, max_iter: int = 200) -> tuple[float, float]:
    """Locate where a discrete-valued ``state`` changes between lo and hi.

    Returns the final bracket (a, b) with state(a) == state(lo),
    state(b) != state(lo) and |b - a| <= xtol. ``lo`` may exceed ``hi``;
    the names only say which end is the reference state.
    """
    slo, shi = state(lo), state(hi)
    if slo == shi:
        raise BracketError(f"state is {slo!r} at both ends of [{lo}, {hi}]")
    for _ in range(max_iter):
        if abs(hi - lo) <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if state(mid) == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def sign_change_brackets(xs: np.ndarray, ys: np.ndarray) -> list[tuple[int, int]]:
    """Index pairs (i, i+1) where ys changes sign strictly. Exact zeros are excluded."""
    s = np.sign(ys)
    idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
    return [(int(i), int(i) + 1) for i in idx]
