import math

import numpy as np
import pytest

from procmap.mapcore import DomainError, eval_map
from procmap.orbits import Behavior, classify, run_orbit
from procmap.windows import (WindowPredicateSpec, critical_point, find_windows, q_curve, window_mask,
                             window_predicate)

TWO_PI = 2 * math.pi


def brute_predicate(g, L, I, n_max):
    a = math.acos(-1 / g)
    for n in range(1, n_max + 1):
        for _ in range(L):
            a = a + g * math.sin(a)
        if n % 2 and not a > (2 * I + 1) * math.pi:
            return False
        if n % 2 == 0 and not a < math.pi:
            return False
    return True


def circ(a, b):
    d = abs(a - b) % TWO_PI
    return min(d, TWO_PI - d)


@pytest.mark.parametrize("g, spec, expected", [
    (9.21, WindowPredicateSpec(1, 1, 20), True),
    (8.5, WindowPredicateSpec(1, 1, 20), False),
    (15.6, WindowPredicateSpec(1, 2, 20), True),
    (5.6845, WindowPredicateSpec(3, 1, 24), True),
])
def test_predicate_examples(g, spec, expected):
    assert window_predicate(g, spec) is expected


def test_predicate_needs_critical_point():
    with pytest.raises(DomainError):
        window_predicate(0.9, WindowPredicateSpec())


def test_spec_validation():
    with pytest.raises(ValueError):
        WindowPredicateSpec(L=0)
    with pytest.raises(ValueError):
        WindowPredicateSpec(which="A3")


@pytest.mark.parametrize("L, I, n_max, lo, hi", [(1, 1, 3, 8.5, 10.5), (1, 2, 20, 15.0, 16.5), (3, 1, 24, 5.6, 5.75)])
def test_mask_agrees_with_brute_force(L, I, n_max, lo, hi):
    gs = np.linspace(lo, hi, 3001)
    mask = window_mask(WindowPredicateSpec(L, I, n_max), gs)
    brute = np.array([brute_predicate(float(g), L, I, n_max) for g in gs])
    # libm and numpy sin may differ in the last bit; allow a handful of boundary flips
    assert np.sum(mask != brute) <= 2


def test_mirror_critical_point_gives_same_windows():
    for spec in (WindowPredicateSpec(1, 1, 20), WindowPredicateSpec(1, 2, 3)):
        a1 = find_windows(spec, 8.5, 16.5, grid=40_001, refine=False)
        mirror = WindowPredicateSpec(spec.L, spec.I, spec.n_max, "A2")
        a2 = find_windows(mirror, 8.5, 16.5, grid=40_001, refine=False)
        assert [(w.g_lo, w.g_hi) for w in a1] == [(w.g_lo, w.g_hi) for w in a2]


def test_first_window_coarse_conditions():
    ws = find_windows(WindowPredicateSpec(1, 1, 3), 8.5, 10.5)
    assert ws[0].g_lo == pytest.approx(9.0065, abs=0.01)
    assert ws[0].g_hi == pytest.approx(9.7558, abs=0.01)


def test_first_window_refined_conditions():
    (w,) = find_windows(WindowPredicateSpec(1, 1, 20), 9.0, 10.0)
    assert w.g_lo == pytest.approx(9.205, abs=0.01)
    assert w.g_hi == pytest.approx(9.6838, abs=0.01)
    assert w.truncated == (False, False) and not w.coarse


def test_refined_boundaries_bracket_predicate():
    spec = WindowPredicateSpec(1, 1, 20)
    for w in find_windows(spec, 9.0, 10.0) + find_windows(WindowPredicateSpec(3, 1, 24), 5.6, 5.75):
        assert window_predicate(w.midpoint, w.spec)
        assert not window_predicate(w.g_lo - 1e-5, w.spec)
        assert not window_predicate(w.g_hi + 1e-5, w.spec)


def test_window_touching_scan_edge_is_flagged():
    (w,) = find_windows(WindowPredicateSpec(1, 1, 20), 9.3, 10.0)
    assert w.truncated == (True, False)
    assert w.g_lo == 9.3


def test_find_windows_empty():
    assert find_windows(WindowPredicateSpec(1, 1, 20), 2.0, 4.0) == []


def _covered(inner, outer):
    return all(any(o.g_lo - 1e-6 <= w.g_lo and w.g_hi <= o.g_hi + 1e-6 for o in outer) for w in inner)


@pytest.mark.parametrize("L, I, lo, hi", [(1, 1, 8.5, 10.5), (1, 2, 15.0, 16.5), (2, 1, 5.3, 5.5)])
def test_n_max_monotonicity(L, I, lo, hi):
    for m in (3, 8, 20):
        coarse = find_windows(WindowPredicateSpec(L, I, m), lo, hi)
        fine = find_windows(WindowPredicateSpec(L, I, m + 1), lo, hi)
        assert _covered(fine, coarse)


@pytest.mark.parametrize("n_max", [3, 20])
def test_second_window_family_inside_first(n_max):
    inner = find_windows(WindowPredicateSpec(1, 2, n_max), 8.5, 16.5)
    outer = find_windows(WindowPredicateSpec(1, 1, n_max), 8.5, 16.5)
    assert inner and _covered(inner, outer)


@pytest.mark.parametrize("I, lo, hi", [(1, 9.0, 10.0), (2, 15.0, 16.5)])
def test_window_left_edge_is_bounded_periodic(I, lo, hi):
    for w in find_windows(WindowPredicateSpec(1, I, 20), lo, hi):
        for frac in (0.02, 0.05, 0.1):
            g = w.g_lo + frac * w.width
            lab = classify(run_orbit(g, critical_point(g)))
            assert lab.kind is Behavior.BOUNDED_PERIODIC, (g, str(lab))


def test_qcurve_at_bios_onset_hits_zero():
    q = q_curve(1, "A1", [4.6033388488])
    assert circ(q.points[0], 0.0) < 1e-8


def test_qcurve_mirror_relation():
    gs = np.linspace(1.5, 20, 400)
    q1 = q_curve(1, "A1", gs)
    q2 = q_curve(1, "A2", gs)
    # f(2 pi - a) = 2 pi - f(a), so the A2 image is the reflection of the A1 image
    for a, b in zip(q1.points, q2.points):
        assert circ(b, TWO_PI - a) < 1e-9


def test_qcurve_shadows_period_two_attractor():
    g = 2.5
    attractor = np.mod(run_orbit(g, math.pi / 2).raw[-2:], TWO_PI)
    q = q_curve(2, "A1", [g]).points[0]
    # measured 6e-5; the critical orbit lands next to the superstable-adjacent branch
    assert min(circ(q, a) for a in attractor) < 1e-4
    q_late = q_curve(200, "A1", [g]).points[0]
    assert min(circ(q_late, a) for a in attractor) < 1e-9


def test_qcurve_recurrence():
    gs = np.linspace(1.1, 16, 500)
    for which in ("A1", "A2"):
        prev = q_curve(1, which, gs)
        for n in range(2, 6):
            cur = q_curve(n, which, gs)
            expected = [eval_map(float(g), float(a)) for g, a in zip(gs, prev.raw)]
            np.testing.assert_allclose(cur.raw, expected, atol=1e-9, rtol=0)
            assert np.all((cur.points >= 0) & (cur.points < TWO_PI))
            prev = cur
