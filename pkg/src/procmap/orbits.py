"""Orbit generation, display transforms and behavior classification."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .mapcore import DEFAULT_ESCAPE_BOUND, TWO_PI, MapParams, eval_map


@dataclass(frozen=True)
class OrbitSettings:
    transient: int = 5000
    samples: int = 4096
    escape_bound: float = DEFAULT_ESCAPE_BOUND
    seed: int = 0

    def __post_init__(self):
        if self.transient < 0:
            raise ValueError("transient must be >= 0")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not self.escape_bound > 0:
            raise ValueError("escape_bound must be > 0")


@dataclass
class OrbitRecord:
    params: MapParams
    a0: float
    raw: np.ndarray
    transient: int = 0
    escape_step: int | None = None
    escape_value: float | None = None

    @property
    def escaped(self) -> bool:
        return self.escape_step is not None

    @property
    def status(self) -> str:
        return "escaped" if self.escaped else "completed"


class Behavior(str, enum.Enum):
    CONVERGED_FIXED_POINT = "ConvergedFixedPoint"
    BOUNDED_PERIODIC = "BoundedPeriodic"
    BOUNDED_CHAOTIC = "BoundedChaotic"
    BIOTIC = "Biotic"
    PERIODIC_DIVERGENT = "PeriodicDivergent"
    CHAOTIC_DIVERGENT = "ChaoticDivergent"


@dataclass
class BehaviorLabel:
    kind: Behavior
    period: int | None = None
    direction: int | None = None
    evidence: dict = field(default_factory=dict)

    def __str__(self):
        if self.kind is Behavior.BOUNDED_PERIODIC:
            return f"{self.kind.value}({self.period})"
        sign = {1: "+", -1: "-"}.get(self.direction, "?")
        if self.kind is Behavior.PERIODIC_DIVERGENT:
            return f"{self.kind.value}({self.period},{sign})"
        if self.kind is Behavior.CHAOTIC_DIVERGENT:
            return f"{self.kind.value}({sign})"
        return self.kind.value

    @property
    def divergent(self) -> bool:
        return self.kind in (Behavior.PERIODIC_DIVERGENT, Behavior.CHAOTIC_DIVERGENT)


@dataclass(frozen=True)
class Tolerances:
    eps_fix: float = 1e-8
    fix_window: int = 32
    eps_per: float = 1e-6
    max_period: int = 64
    drift_min: float = math.pi / 2
    sign_consistency: float = 0.95
    range_eps: float = 1e-9
    min_samples: int = 256
    min_escaped_samples: int = 64


def run_orbit(p: MapParams | float, a0: float, s: OrbitSettings = OrbitSettings()) -> OrbitRecord:
    """Iterate from a0, drop ``s.transient`` steps and record ``s.samples`` more.

    The record is truncated at the first iterate with |A| > escape_bound;
    that iterate is kept in ``escape_value`` and its 1-based step number
    (counted from a0, transient included) in ``escape_step``.
    """
    if not isinstance(p, MapParams):
        p = MapParams(float(p))
    g = p.g
    bound = s.escape_bound
    sin = math.sin
    a = float(a0)
    for k in range(1, s.transient + 1):
        a = a + g * sin(a)
        if not abs(a) <= bound:
            return OrbitRecord(p, a0, np.empty(0), s.transient, k, a)
    out = np.empty(s.samples)
    for i in range(s.samples):
        a = a + g * sin(a)
        if not abs(a) <= bound:
            return OrbitRecord(p, a0, out[:i].copy(), s.transient, s.transient + i + 1, a)
        out[i] = a
    return OrbitRecord(p, a0, out, s.transient)


def mod_reduce(o: OrbitRecord | np.ndarray) -> np.ndarray:
    """Fold into [0, 2pi). Negative values map to their positive representative."""
    raw = o.raw if isinstance(o, OrbitRecord) else np.asarray(o, dtype=float)
    b = np.mod(raw, TWO_PI)
    # np.mod can round a tiny negative input up to exactly 2pi
    b[b >= TWO_PI] = 0.0
    return b


def signed_log(o: OrbitRecord | np.ndarray) -> np.ndarray:
    """sign(A) * log10(1 + |A|): keeps sign, finite at zero."""
    raw = o.raw if isinstance(o, OrbitRecord) else np.asarray(o, dtype=float)
    return np.sign(raw) * np.log10(1.0 + np.abs(raw))


def _slack(x: np.ndarray) -> float:
    # differences of numbers of size |x| carry rounding error of order ulp(|x|)
    return 64.0 * float(np.spacing(np.max(np.abs(x)))) if x.size else 0.0


def classify(o: OrbitRecord, tol: Tolerances = Tolerances()) -> BehaviorLabel:
    """Assign one behavior label to a recorded orbit.

    Rules are tried in order: settled fixed point; mod-2pi periodicity
    (bounded if the raw orbit repeats, divergent if it repeats up to a
    constant multiple of 2pi); ballistic chaotic drift; finally bounded
    chaos versus bios by whether the orbit spans more than one sine
    period.
    """
    a = np.asarray(o.raw, dtype=float)
    need = tol.min_escaped_samples if o.escaped else tol.min_samples
    if a.size < need:
        raise ValueError(f"classify needs at least {need} samples, got {a.size}")
    ev: dict = {"samples": int(a.size), "escaped": o.escaped}
    slack = _slack(a)

    steps = np.diff(a)
    tail = np.abs(steps[-tol.fix_window:])
    ev["tail_step_max"] = float(tail.max())
    if tail.max() < tol.eps_fix:
        ev["limit"] = float(a[-1])
        return BehaviorLabel(Behavior.CONVERGED_FIXED_POINT, evidence=ev)

    half = a[a.size // 2:]
    b = mod_reduce(half)
    for p in range(1, min(tol.max_period, b.size // 2) + 1):
        db = np.abs(b[p:] - b[:-p])
        # wrap-around: values straddling 0/2pi are close on the circle
        db = np.minimum(db, TWO_PI - db)
        if db.max() >= tol.eps_per + slack:
            continue
        da = half[p:] - half[:-p]
        ev["period"] = p
        ev["mod_residual"] = float(db.max())
        if np.abs(da).max() < tol.eps_per + slack:
            ev["raw_residual"] = float(np.abs(da).max())
            return BehaviorLabel(Behavior.BOUNDED_PERIODIC, period=p, evidence=ev)
        m = np.round(da / TWO_PI)
        if m[0] != 0 and np.all(m == m[0]):
            resid = float(np.abs(da - TWO_PI * m[0]).max())
            if resid < tol.eps_per + slack:
                ev["shift_multiple"] = int(m[0])
                ev["raw_residual"] = resid
                return BehaviorLabel(Behavior.PERIODIC_DIVERGENT, period=p,
                                     direction=int(np.sign(m[0])), evidence=ev)
        break

    drift = (a[-1] - a[0]) / (a.size - 1)
    direction = int(np.sign(drift)) or 1
    consistency = float(np.mean(np.sign(steps) == direction))
    span = float(a.max() - a.min())
    ev.update(drift=float(drift), sign_consistency=consistency, range=span)
    if abs(drift) > tol.drift_min and consistency > tol.sign_consistency:
        return BehaviorLabel(Behavior.CHAOTIC_DIVERGENT, direction=direction, evidence=ev)
    if abs(drift) > tol.drift_min:
        # strong drift without a consistent step sign: no rule fits cleanly
        ev["inconclusive"] = True
        return BehaviorLabel(Behavior.CHAOTIC_DIVERGENT, direction=direction, evidence=ev)
    if span <= TWO_PI + tol.range_eps:
        return BehaviorLabel(Behavior.BOUNDED_CHAOTIC, evidence=ev)
    return BehaviorLabel(Behavior.BIOTIC, evidence=ev)


def cobweb_trace(p: MapParams | float, a0: float, steps: int,
                 escape_bound: float = DEFAULT_ESCAPE_BOUND) -> list[tuple[float, float]]:
    """Staircase vertices between the map graph and the identity line.

    Starts at (a0, a0) and appends (A_t, A_{t+1}), (A_{t+1}, A_{t+1}) per
    step, so a full trace has 2*steps + 1 points. Stops before the first
    iterate beyond ``escape_bound``.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    pts = [(a0, a0)]
    a = a0
    for _ in range(steps):
        nxt = eval_map(p, a)
        if not abs(nxt) <= escape_bound:
            break
        pts.append((a, nxt))
        pts.append((nxt, nxt))
        a = nxt
    return pts


def random_initial_conditions(seed: int, count: int, lo: float = 0.0, hi: float = TWO_PI) -> np.ndarray:
    """Uniform initial conditions in [lo, hi) drawn from a seeded generator."""
    return np.random.default_rng(seed).uniform(lo, hi, size=count)
