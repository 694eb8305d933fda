"""Named recipes that write the data behind each reproducible figure as CSV.

Every recipe takes an output directory and a ``quick`` flag (coarser grids,
for smoke tests) and returns the paths it wrote. Bifurcation data use the
mod-2pi reduction where the figure shows A in [0, 2pi].
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import scan
from .mapcore import iterate_array
from .orbits import OrbitSettings, cobweb_trace, mod_reduce, run_orbit
from .scan import ICPolicy, ScanGrid, bifurcation_scan, multistability_scan
from .stability import sweep_stability
from .windows import WindowPredicateSpec, critical_array, find_windows, q_curve

PI = math.pi
HALF_PI = math.pi / 2


class UnknownRecipe(KeyError):
    def __str__(self):
        return f"unknown recipe {self.args[0]!r}; available: {', '.join(sorted(RECIPES))}"


def _settings(quick: bool) -> OrbitSettings:
    return OrbitSettings(transient=1000 if quick else 5000, samples=256 if quick else 512)


def _steps(full: int, quick: bool) -> int:
    return max(8, full // 40) if quick else full


def _bif(out_dir, name, g_lo, g_hi, steps, ic, transform, quick, multi=False):
    grid = ScanGrid(g_lo, g_hi, _steps(steps, quick), ic, _settings(quick), transform)
    result = multistability_scan(grid) if multi else bifurcation_scan(grid)
    return scan.save(result, os.path.join(out_dir, name), extra_meta={"recipe": name})


def _write_table(path, header, rows):
    with open(path, "w", newline="") as fh:
        scan.write_rows(rows, fh, "csv", fields=header)
    return path


def _cobweb(out_dir, name, g, a0, steps):
    rows = [(g, a0, i, x, y) for i, (x, y) in enumerate(cobweb_trace(g, a0, steps))]
    return _write_table(os.path.join(out_dir, name), ("g", "ic", "point_index", "x", "y"), rows)


def _timeseries(out_dir, name, g, a0, samples, transient=0):
    rec = run_orbit(g, a0, OrbitSettings(transient=transient, samples=samples))
    b = mod_reduce(rec)
    rows = [(g, a0, i, float(v), float(m)) for i, (v, m) in enumerate(zip(rec.raw, b))]
    return _write_table(os.path.join(out_dir, name), ("g", "ic", "t", "value", "mod2pi"), rows)


def _fixed_points(out_dir, name, n, quick):
    sw = sweep_stability(n, 1.5, 3.5, _steps(400, quick), grid=2048 if quick else None)
    rows = [(float(g), r.n, r.a, r.multiplier, r.stability.value)
            for g, recs in zip(sw.g_grid, sw.records) for r in recs]
    return _write_table(os.path.join(out_dir, name), ("g", "n", "a", "multiplier", "stability"), rows)


def _iterates(out_dir, name, g_lo, g_hi, steps, ns, which="A1", L=1):
    gs = np.linspace(g_lo, g_hi, steps)
    a = critical_array(gs, which)
    rows = []
    cols = {}
    for n in range(1, max(ns) + 1):
        a = iterate_array(gs, a, L)
        if n in ns:
            cols[n] = a.copy()
    for i, g in enumerate(gs):
        for n in ns:
            rows.append((float(g), n * L, float(cols[n][i])))
    return _write_table(os.path.join(out_dir, name), ("g", "iterate", "value"), rows)


def _windows(out_dir, name, jobs):
    rows = []
    for spec, lo, hi in jobs:
        for w in find_windows(spec, lo, hi):
            rows.append((spec.L, spec.I, spec.n_max, spec.which, w.g_lo, w.g_hi,
                         int(w.truncated[0]), int(w.truncated[1])))
    header = ("L", "I", "n_max", "which", "g_lo", "g_hi", "truncated_lo", "truncated_hi")
    return _write_table(os.path.join(out_dir, name), header, rows)


def fig1a(out_dir, quick=False):
    return [_bif(out_dir, "fig1a.csv", 0.0, 6.0, 1200, ICPolicy.fixed(HALF_PI), "mod2pi", quick)]


def fig1b(out_dir, quick=False):
    return [_bif(out_dir, "fig1b.csv", 0.0, 6.0, 1200, ICPolicy.fixed(HALF_PI), "signedlog", quick)]


def fig3a(out_dir, quick=False):
    return [_fixed_points(out_dir, "fig3a.csv", 2, quick)]


def fig3b(out_dir, quick=False):
    return [_fixed_points(out_dir, "fig3b.csv", 4, quick)]


def fig4(out_dir, quick=False):
    ics = ICPolicy.list([HALF_PI - 0.2, HALF_PI])
    return [_bif(out_dir, "fig4.csv", 2.5, 4.6, 800, ics, "mod2pi", quick, multi=True)]


def fig6(out_dir, quick=False):
    return [_cobweb(out_dir, "fig6_cobweb.csv", 4.62, HALF_PI, 500),
            _timeseries(out_dir, "fig6_timeseries.csv", 4.62, HALF_PI, 2000)]


def fig7(out_dir, quick=False):
    ic = ICPolicy.random_per_g(seed=7)
    return [_bif(out_dir, "fig7a.csv", 0.0, 10.0, 2000, ic, "signedlog", quick),
            _bif(out_dir, "fig7b.csv", 0.0, 10.0, 2000, ic, "mod2pi", quick)]


def fig9(out_dir, quick=False):
    paths = []
    for tag, g in (("a", 6.7332), ("c", 6.8832)):
        paths.append(_cobweb(out_dir, f"fig9{tag}_cobweb.csv", g, HALF_PI, 100))
        paths.append(_timeseries(out_dir, f"fig9{tag}_mod2pi.csv", g, HALF_PI, 500, transient=1000))
    return paths


def fig10(out_dir, quick=False):
    lo, hi = 2 * PI - 0.3, 2 * PI + 0.5
    return [_bif(out_dir, "fig10a.csv", lo, hi, 800, ICPolicy.random_per_g(seed=10), "mod2pi", quick),
            _bif(out_dir, "fig10bc.csv", lo, hi, 800, ICPolicy.list([HALF_PI, 3 * HALF_PI]), "mod2pi",
                 quick, multi=True)]


def fig13(out_dir, quick=False):
    return [_bif(out_dir, "fig13.csv", 9.205, 9.6838, 800, ICPolicy.fixed(HALF_PI), "raw", quick)]


def fig14(out_dir, quick=False):
    steps = 400 if quick else 16000
    return [_iterates(out_dir, "fig14a_iterates.csv", 8.5, 16.5, steps, (1, 2, 3)),
            _iterates(out_dir, "fig14b_iterates.csv", 9.0, 10.0, steps // 8, (20,)),
            _iterates(out_dir, "fig14c_iterates.csv", 15.5, 16.0, steps // 8, (20,)),
            _windows(out_dir, "fig14_windows.csv", [
                (WindowPredicateSpec(1, 1, 3), 8.5, 10.5),
                (WindowPredicateSpec(1, 1, 20), 9.0, 10.0),
                (WindowPredicateSpec(1, 2, 3), 15.0, 16.5),
                (WindowPredicateSpec(1, 2, 20), 15.0, 16.5)])]


def fig16(out_dir, quick=False):
    ic = ICPolicy.fixed(HALF_PI)
    return [_bif(out_dir, "fig16a.csv", 4.6, 2 * PI, 1600, ic, "mod2pi", quick),
            _bif(out_dir, "fig16b.csv", 5.45, 2 * PI, 1600, ic, "mod2pi", quick)]


def fig17(out_dir, quick=False):
    paths = []
    for tag, g in zip("abcdef", (4.915, 5.39, 5.5835, 5.6845, 5.805, 5.921)):
        rec = run_orbit(g, HALF_PI, OrbitSettings(transient=5000, samples=1))
        start = float(rec.raw[-1]) if rec.raw.size else HALF_PI
        paths.append(_cobweb(out_dir, f"fig17{tag}_cobweb.csv", g, start, 24))
    return paths


def fig18(out_dir, quick=False):
    ic = ICPolicy.fixed(1.73)
    return [_bif(out_dir, "fig18a.csv", 4.91, 4.95, 800, ic, "signedlog", quick),
            _bif(out_dir, "fig18b.csv", 4.91, 4.95, 800, ic, "mod2pi", quick)]


def fig19(out_dir, quick=False):
    steps = 400 if quick else 4000
    return [_iterates(out_dir, "fig19a_iterates.csv", 5.3, 6.0, steps, (1, 2, 3, 4, 5, 6), L=1),
            _iterates(out_dir, "fig19b_iterates.csv", 5.3683, 5.44, steps, (24,), L=2),
            _iterates(out_dir, "fig19c_iterates.csv", 5.68, 5.689, steps, (24,), L=3),
            _iterates(out_dir, "fig19d_iterates.csv", 5.91, 5.935, steps, (24,), L=3),
            _windows(out_dir, "fig19_windows.csv", [
                (WindowPredicateSpec(2, 1, 24), 5.3, 5.5),
                (WindowPredicateSpec(3, 1, 24), 5.6, 5.75),
                (WindowPredicateSpec(3, 2, 24), 5.9, 5.95)])]


def fig20(out_dir, quick=False):
    lo, hi = 4.6, 2 * PI
    paths = [_bif(out_dir, "fig20_bifurcation.csv", lo, hi, 1600, ICPolicy.fixed(HALF_PI), "mod2pi", quick)]
    gs = np.linspace(lo, hi, _steps(1600, quick))
    for n in (1, 2):
        for which in ("A1", "A2"):
            q = q_curve(n, which, gs)
            rows = [(float(g), n, which, float(v)) for g, v in zip(q.g_grid, q.points)]
            paths.append(_write_table(os.path.join(out_dir, f"fig20_q{n}_{which}.csv"),
                                      ("g", "n", "which", "value"), rows))
    return paths


RECIPES = {f.__name__: f for f in (fig1a, fig1b, fig3a, fig3b, fig4, fig6, fig7, fig9, fig10, fig13,
                                   fig14, fig16, fig17, fig18, fig19, fig20)}


def run_recipe(name: str, out_dir: str = ".", quick: bool = False) -> list[str]:
    if name not in RECIPES:
        raise UnknownRecipe(name)
    os.makedirs(out_dir, exist_ok=True)
    return RECIPES[name](out_dir, quick)
