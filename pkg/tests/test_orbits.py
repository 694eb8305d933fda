import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from procmap.mapcore import MapParams, iterate_n
from procmap.orbits import (Behavior, OrbitRecord, OrbitSettings, classify, cobweb_trace, mod_reduce,
                            random_initial_conditions, run_orbit, signed_log)

HALF_PI = math.pi / 2


def _rec(values):
    return OrbitRecord(MapParams(1.0), 0.0, np.asarray(values, dtype=float))


def test_run_orbit_settles_on_pi():
    rec = run_orbit(1.5, HALF_PI, OrbitSettings(transient=1000, samples=10))
    assert rec.status == "completed"
    np.testing.assert_allclose(rec.raw, math.pi, atol=1e-9)


def test_run_orbit_matches_iterate_n():
    s = OrbitSettings(transient=17, samples=9)
    rec = run_orbit(4.62, 0.3, s)
    for i, v in enumerate(rec.raw):
        assert v == iterate_n(4.62, 0.3, s.transient + i + 1)


def test_zero_feedback_is_constant():
    rec = run_orbit(0.0, 2.2, OrbitSettings(transient=5, samples=20))
    assert np.all(rec.raw == 2.2)


def test_ballistic_orbit_escapes():
    s = OrbitSettings(transient=0, samples=10_000, escape_bound=1e4)
    rec = run_orbit(2 * math.pi, HALF_PI, s)
    assert rec.escaped
    np.testing.assert_allclose(np.diff(rec.raw), 2 * math.pi, atol=1e-9)
    assert abs(rec.escape_value) > 1e4
    assert rec.raw.size == rec.escape_step - 1


def test_escape_during_transient():
    rec = run_orbit(2 * math.pi, HALF_PI, OrbitSettings(transient=100, samples=10, escape_bound=50.0))
    assert rec.escaped and rec.raw.size == 0 and rec.escape_step <= 100


def test_orbit_settings_validation():
    with pytest.raises(ValueError):
        OrbitSettings(samples=0)
    with pytest.raises(ValueError):
        OrbitSettings(transient=-1)
    with pytest.raises(ValueError):
        OrbitSettings(escape_bound=0)


def test_mod_reduce_examples():
    np.testing.assert_allclose(mod_reduce(_rec([math.pi])), [math.pi])
    assert mod_reduce(_rec([2 * math.pi]))[0] == 0.0
    np.testing.assert_allclose(mod_reduce(_rec([-HALF_PI])), [3 * HALF_PI])
    # tiny negative values must not come back as exactly 2 pi
    assert mod_reduce(np.array([-1e-300]))[0] < 2 * math.pi


def test_signed_log_examples():
    np.testing.assert_allclose(signed_log(_rec([0.0, 9.0, -99.0])), [0.0, 1.0, -2.0])


@settings(max_examples=300)
@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=20), st.integers(-50, 50))
def test_mod_reduce_range_and_shift_invariance(values, k):
    raw = np.array(values)
    b = mod_reduce(raw)
    assert np.all((b >= 0) & (b < 2 * math.pi))
    shifted = mod_reduce(raw + 2 * math.pi * k)
    d = np.abs(shifted - b)
    d = np.minimum(d, 2 * math.pi - d)
    assert np.all(d < 1e-8)


def test_cobweb_identity_orbit():
    assert cobweb_trace(0.0, 1.0, 2) == [(1.0, 1.0)] * 5


def test_cobweb_one_step():
    pts = cobweb_trace(1.5, HALF_PI, 1)
    assert pts == [(HALF_PI, HALF_PI), (HALF_PI, HALF_PI + 1.5), (HALF_PI + 1.5, HALF_PI + 1.5)]


def test_cobweb_biotic_spans_several_periods():
    pts = np.array(cobweb_trace(4.62, HALF_PI, 500))
    assert len(pts) == 1001
    assert np.ptp(pts[:, 0]) > 2 * math.pi


def test_cobweb_truncates_on_escape():
    pts = cobweb_trace(2 * math.pi, HALF_PI, 100, escape_bound=50.0)
    assert len(pts) < 201 and len(pts) % 2 == 1


@pytest.mark.parametrize("g, expected", [
    (1.5, "ConvergedFixedPoint"),
    (6.7332, "PeriodicDivergent(2,+)"),
    (6.8832, "ChaoticDivergent(+)"),
    (4.62, "Biotic"),
    (9.21, "BoundedPeriodic(2)"),
])
def test_classify_labeled_cases(g, expected):
    assert str(classify(run_orbit(g, HALF_PI))) == expected


def test_classify_mirror_initial_condition_flips_direction():
    lab = classify(run_orbit(6.7332, 3 * HALF_PI))
    assert str(lab) == "PeriodicDivergent(2,-)"


def test_classify_ballistic_fixed_phase():
    # g = 2 pi from pi/2: same sine phase every step
    s = OrbitSettings(transient=0, samples=512)
    lab = classify(run_orbit(2 * math.pi, HALF_PI, s))
    assert lab.kind is Behavior.PERIODIC_DIVERGENT and lab.period == 1 and lab.direction == 1


def test_classify_bounded_chaos_before_bios_onset():
    lab = classify(run_orbit(4.5, HALF_PI))
    assert lab.kind is Behavior.BOUNDED_CHAOTIC
    assert lab.evidence["range"] <= 2 * math.pi


def test_classify_is_deterministic():
    rec = run_orbit(4.62, HALF_PI)
    assert str(classify(rec)) == str(classify(rec))
    assert classify(rec).evidence == classify(rec).evidence


def test_classify_needs_enough_samples():
    with pytest.raises(ValueError):
        classify(run_orbit(1.5, HALF_PI, OrbitSettings(samples=100)))


def test_biotic_has_small_drift():
    lab = classify(run_orbit(4.62, HALF_PI))
    assert abs(lab.evidence["drift"]) < math.pi / 2 and lab.evidence["range"] > 2 * math.pi


def test_periodic_divergent_shift_is_whole_turns():
    rec = run_orbit(6.7332, HALF_PI)
    lab = classify(rec)
    p, m = lab.period, lab.evidence["shift_multiple"]
    tail = rec.raw[rec.raw.size // 2:]
    np.testing.assert_allclose(tail[p:] - tail[:-p], 2 * math.pi * m, atol=1e-6)


def test_small_g_converges_to_odd_multiple_of_pi():
    rng = np.random.default_rng(1234)
    gs = rng.uniform(0.1, 1.9, 1000)
    a0s = rng.uniform(0.05, 2 * math.pi - 0.05, 1000)
    s = OrbitSettings(transient=3000, samples=256)
    for g, a0 in zip(gs, a0s):
        rec = run_orbit(float(g), float(a0), s)
        lab = classify(rec)
        assert lab.kind is Behavior.CONVERGED_FIXED_POINT, (g, a0, str(lab))
        k = lab.evidence["limit"] / math.pi
        assert abs(k - round(k)) < 1e-8 and round(k) % 2 == 1


def test_random_initial_conditions_are_seeded():
    a = random_initial_conditions(42, 10)
    assert np.array_equal(a, random_initial_conditions(42, 10))
    assert np.all((a >= 0) & (a < 2 * math.pi))
    assert not np.array_equal(a, random_initial_conditions(43, 10))
