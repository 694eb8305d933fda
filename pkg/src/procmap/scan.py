"""Parameter sweeps over g and their CSV / NDJSON serialization.

Rows share the header ``g,ic,sample_index,value,status,label,seed``.
Samples of an orbit are written with status ``ok``. An orbit that
escapes gets one extra row with status ``escaped`` whose sample_index is
the escape step counted from the first recorded sample (negative when
the escape happened during the transient) and whose value is the first
out-of-bound iterate.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator

import numpy as np

from .mapcore import MapParams
from .orbits import (OrbitSettings, classify, mod_reduce, random_initial_conditions, run_orbit,
                     signed_log)

FIELDS = ("g", "ic", "sample_index", "value", "status", "label", "seed")
TRANSFORMS = ("raw", "mod2pi", "signedlog")


@dataclass(frozen=True)
class ICPolicy:
    """How initial conditions are chosen per g: one fixed value, one seeded random draw per g, or a list."""

    kind: str = "fixed"
    a0: float = math.pi / 2
    seed: int = 0
    values: tuple[float, ...] = ()

    @classmethod
    def fixed(cls, a0: float) -> "ICPolicy":
        return cls("fixed", a0=a0)

    @classmethod
    def random_per_g(cls, seed: int) -> "ICPolicy":
        return cls("random", seed=seed)

    @classmethod
    def list(cls, values) -> "ICPolicy":
        return cls("list", values=tuple(float(v) for v in values))

    def initial_conditions(self, g_steps: int) -> list[list[float]]:
        """Per grid index, the initial conditions to run there."""
        if self.kind == "fixed":
            return [[self.a0]] * g_steps
        if self.kind == "random":
            return [[float(a)] for a in random_initial_conditions(self.seed, g_steps)]
        if self.kind == "list":
            return [list(self.values)] * g_steps
        raise ValueError(f"unknown ic policy {self.kind!r}")


@dataclass(frozen=True)
class ScanGrid:
    g_lo: float
    g_hi: float
    g_steps: int
    ic_policy: ICPolicy = ICPolicy()
    orbit_settings: OrbitSettings = OrbitSettings()
    transform: str = "raw"

    def __post_init__(self):
        if self.g_steps < 1:
            raise ValueError("g_steps must be >= 1")
        if not self.g_lo <= self.g_hi:
            raise ValueError("need g_lo <= g_hi")
        if self.transform not in TRANSFORMS:
            raise ValueError(f"transform must be one of {TRANSFORMS}")

    def g_values(self) -> np.ndarray:
        if self.g_steps == 1:
            return np.array([self.g_lo])
        return np.linspace(self.g_lo, self.g_hi, self.g_steps)

    @property
    def seed(self) -> int:
        return self.ic_policy.seed if self.ic_policy.kind == "random" else self.orbit_settings.seed


@dataclass
class OrbitBlock:
    """All rows produced by one (g, initial condition) orbit."""

    g: float
    ic: float
    values: np.ndarray
    label: str
    escape_index: int | None = None
    escape_value: float | None = None


@dataclass
class ScanResult:
    grid: ScanGrid
    blocks: list[OrbitBlock]
    metadata: dict = field(default_factory=dict)

    def rows(self) -> Iterator[tuple]:
        seed = self.grid.seed
        for b in self.blocks:
            for i, v in enumerate(b.values):
                yield (b.g, b.ic, i, float(v), "ok", b.label, seed)
            if b.escape_index is not None:
                yield (b.g, b.ic, b.escape_index, b.escape_value, "escaped", b.label, seed)

    def subscan(self, ic: float) -> list[OrbitBlock]:
        return [b for b in self.blocks if b.ic == ic]

    def labels(self) -> list[tuple[float, float, str]]:
        return [(b.g, b.ic, b.label) for b in self.blocks]


def apply_transform(values: np.ndarray, transform: str) -> np.ndarray:
    if transform == "raw":
        return np.asarray(values, dtype=float)
    if transform == "mod2pi":
        return mod_reduce(values)
    if transform == "signedlog":
        return signed_log(values)
    raise ValueError(f"unknown transform {transform!r}")


def _scan_point(args) -> list[OrbitBlock]:
    g, ics, settings, transform = args
    p = MapParams(g, settings.escape_bound)
    blocks = []
    for a0 in ics:
        rec = run_orbit(p, a0, settings)
        try:
            label = str(classify(rec))
        except ValueError:
            label = ""
        values = apply_transform(rec.raw, transform)
        esc_i = esc_v = None
        if rec.escaped:
            esc_i = rec.escape_step - settings.transient - 1
            esc_v = float(apply_transform(np.array([rec.escape_value]), transform)[0])
        blocks.append(OrbitBlock(g, float(a0), values, label, esc_i, esc_v))
    return blocks


def default_workers() -> int:
    return int(os.environ.get("PROCMAP_THREADS", "1") or 1)


def bifurcation_scan(grid: ScanGrid, workers: int | None = None) -> ScanResult:
    """Run, transform and label one orbit per (g, initial condition).

    Output order follows the g grid and the IC list regardless of how
    many worker processes run, so results are reproducible.
    """
    workers = default_workers() if workers is None else workers
    gs = grid.g_values()
    ics = grid.ic_policy.initial_conditions(len(gs))
    jobs = [(float(g), ic, grid.orbit_settings, grid.transform) for g, ic in zip(gs, ics)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            parts = list(ex.map(_scan_point, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        parts = [_scan_point(j) for j in jobs]
    blocks = [b for part in parts for b in part]
    return ScanResult(grid, blocks, {"seed": grid.seed, "grid": _grid_dict(grid)})


def multistability_scan(grid: ScanGrid, workers: int | None = None) -> ScanResult:
    """Same as bifurcation_scan but requires a list of at least two initial conditions."""
    if grid.ic_policy.kind != "list" or len(grid.ic_policy.values) < 2:
        raise ValueError("multistability_scan needs an IC list with at least two values")
    return bifurcation_scan(grid, workers)


def _grid_dict(grid: ScanGrid) -> dict:
    d = asdict(grid)
    d["ic_policy"]["values"] = list(d["ic_policy"]["values"])
    return d


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def write_rows(rows, out, fmt: str = "csv", fields=FIELDS) -> None:
    """Write rows to a text stream; floats use the shortest round-trip repr."""
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([_fmt(x) for x in r])
    elif fmt == "ndjson":
        for r in rows:
            rec = {k: (float(v) if isinstance(v, np.floating) else v) for k, v in zip(fields, r)}
            out.write(json.dumps(rec, allow_nan=True) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def emit(result: ScanResult, fmt: str = "csv") -> str:
    buf = io.StringIO()
    write_rows(result.rows(), buf, fmt)
    return buf.getvalue()


def _parse_value(key: str, text: str):
    if key in ("sample_index", "seed"):
        return int(text)
    if key in ("g", "ic", "value"):
        return float(text)
    return text


def parse_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    return [{k: _parse_value(k, v) for k, v in row.items()} for row in reader]


def parse_ndjson(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def save(result: ScanResult, path: str, fmt: str = "csv", extra_meta: dict | None = None) -> str:
    """Write the rows to ``path`` and the metadata to ``path + '.meta.json'``.

    The row file is byte-identical for identical inputs; run-specific
    metadata such as timestamps live only in the sidecar.
    """
    from datetime import datetime, timezone

    from . import __version__

    with open(path, "w", newline="") as fh:
        write_rows(result.rows(), fh, fmt)
    meta = dict(result.metadata)
    meta.update(extra_meta or {})
    meta.setdefault("tool_version", __version__)
    meta.setdefault("created", datetime.now(timezone.utc).isoformat())
    with open(path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=2, default=str)
    return path
