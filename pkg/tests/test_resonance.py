import math

import numpy as np
import pytest

from torus_scan import (IrrationalityConfig, OrbitClass, ResonanceHit,
                        RotationResult, TORUS_THRESHOLD,
                        classify_rotation_vector, mean_log10_order,
                        order_band, resonance_distance, resonance_order,
                        resonance_statistics)

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)
CFG = IrrationalityConfig()


def oracle_order(omega, delta, max_order=50):
    """Independent double loop over all (m, n) with small order."""
    best = None
    for order in range(1, max_order + 1):
        hits = []
        for m1 in range(-order, order + 1):
            m2mag = order - abs(m1)
            for m2 in {m2mag, -m2mag}:
                if m1 == 0 and m2 == 0:
                    continue
                for n in range(-order - 1, order + 2):
                    d = abs(m1 * omega[0] + m2 * omega[1] - n) / math.hypot(m1, m2)
                    if d < delta:
                        hits.append((m1, m2, n))
        if hits:
            best = order
            break
    return best


class TestResonanceDistance:
    def test_on_line(self):
        assert resonance_distance((0.5, 0.5), (1, 1), 1) == 0.0
        assert resonance_distance((0.25, 1.0 / 3.0), (0, 3), 1) == 0.0

    def test_point_line_value(self):
        # vertical line x = 0: horizontal distance from (0.5, 0.9)
        assert resonance_distance((0.5, 0.9), (1, 0), 0) == pytest.approx(0.5)
        assert resonance_distance((0.5, 0.5), (1, -1), 0) == 0.0

    def test_sign_invariance(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            omega = rng.random(2)
            m = tuple(int(v) for v in rng.integers(-9, 10, 2))
            if m == (0, 0):
                m = (1, 0)
            n = int(rng.integers(-9, 10))
            assert resonance_distance(omega, m, n) == resonance_distance(
                omega, (-m[0], -m[1]), -n)

    def test_zero_m_rejected(self):
        with pytest.raises(ValueError):
            resonance_distance((0.3, 0.4), (0, 0), 1)


class TestResonanceOrder:
    def test_rank_one_example(self):
        # (3*sqrt(2), 2*sqrt(2)-1) mod 1 lies on the order-5 line (2,-3)
        omega = ((3 * SQRT2) % 1.0, (2 * SQRT2 - 1.0) % 1.0)
        hit = resonance_order(omega, 1e-9)
        assert hit.m == (2, -3)
        assert hit.n == -2  # n shifts with the mod-1 reduction
        assert hit.order == 5

    def test_half_half(self):
        hit = resonance_order((0.5, 0.5), 1e-9)
        assert hit.order == 2

    def test_incommensurate_regression(self):
        omega = (SQRT2 - 1.0, SQRT5 - 2.0)
        hit = resonance_order(omega, 1e-9)
        assert hit.order == 1495  # frozen from the enumeration itself
        lo, hi = order_band(1e-9)
        assert lo <= hit.order <= hi
        assert resonance_order(omega, 1e-9, cap=255) is None

    def test_canonical_sign(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            hit = resonance_order(rng.random(2), 1e-4)
            first_nonzero = hit.m[0] if hit.m[0] != 0 else hit.m[1]
            assert first_nonzero > 0
            assert hit.order == abs(hit.m[0]) + abs(hit.m[1])
            assert hit.distance < 1e-4

    def test_monotone_in_delta(self):
        rng = np.random.default_rng(29)
        for _ in range(1000):
            omega = rng.random(2)
            loose = resonance_order(omega, 1e-4).order
            tight = resonance_order(omega, 1e-6).order
            assert loose <= tight

    def test_oracle_equivalence(self):
        rng = np.random.default_rng(31)
        for _ in range(1000):
            omega = rng.random(2)
            hit = resonance_order(omega, 1e-3)
            assert hit.order == oracle_order(omega, 1e-3)

    def test_nearest_integer_minimizes(self):
        rng = np.random.default_rng(37)
        for _ in range(500):
            omega = rng.random(2)
            m = tuple(int(v) for v in rng.integers(-20, 21, 2))
            if m == (0, 0):
                continue
            dot = m[0] * omega[0] + m[1] * omega[1]
            best_n = min(range(math.floor(dot) - 2, math.floor(dot) + 3),
                         key=lambda n: abs(dot - n))
            assert (resonance_distance(omega, m, round(dot))
                    == resonance_distance(omega, m, best_n))

    def test_validation(self):
        with pytest.raises(ValueError):
            resonance_order((0.3, 0.4), 0.0)
        with pytest.raises(ValueError):
            resonance_order((0.3, 0.4), 1e-9, cap=0)
        with pytest.raises(ValueError):
            ResonanceHit(m=(1, 2), n=0, order=5, distance=0.0)


class TestOrderBand:
    def test_mean_formula(self):
        assert mean_log10_order(1e-9) == pytest.approx(2.915, abs=1e-12)

    def test_band_at_default_delta(self):
        # formula-derived integers; the log-range matches the published
        # criterion band (log10 256, log10 2673) to within 0.01
        lo, hi = order_band(1e-9)
        assert (lo, hi) == (252, 2679)
        assert math.log10(lo) == pytest.approx(math.log10(256), abs=0.01)
        assert math.log10(hi) == pytest.approx(math.log10(2673), abs=0.01)

    def test_band_shrinks_with_delta(self):
        lo9, hi9 = order_band(1e-9)
        lo6, hi6 = order_band(1e-6)
        assert lo6 < lo9 and hi6 < hi9


class TestClassify:
    def test_resonant_attracting_circle(self):
        r = RotationResult(np.array([0.83947029089469, 0.83947029089470]), 15.26)
        oc = classify_rotation_vector(r, TORUS_THRESHOLD, CFG, 1e-9)
        assert oc.tag == "resonant"
        assert oc.hit.m == (1, -1)
        assert oc.hit.n == 0

    def test_periodic_rational_pair(self):
        r = RotationResult(np.array([0.5, 0.25]), 16.0)
        oc = classify_rotation_vector(r, TORUS_THRESHOLD, CFG, 1e-9)
        assert oc.tag == "periodic"

    def test_chaotic_short_circuits(self):
        r = RotationResult(np.array([0.5, 0.25]), 4.05)
        oc = classify_rotation_vector(r, TORUS_THRESHOLD, CFG, 1e-9)
        assert oc.tag == "chaotic"
        assert oc.hit is None

    def test_incommensurate(self):
        r = RotationResult(np.array([SQRT2 - 1.0, SQRT5 - 2.0]), 14.0)
        oc = classify_rotation_vector(r, TORUS_THRESHOLD, CFG, 1e-9)
        assert oc.tag == "nonresonant"
        assert oc.order == 1495

    def test_rational_vectors_periodic(self):
        rng = np.random.default_rng(41)
        for _ in range(30):
            q = int(rng.integers(2, 101))
            p1 = int(rng.integers(0, q))
            p2 = int(rng.integers(0, q))
            r = RotationResult(np.array([p1 / q, p2 / q]), 16.0)
            oc = classify_rotation_vector(r, TORUS_THRESHOLD, CFG, 1e-9)
            assert oc.tag == "periodic", (p1, p2, q)

    def test_requires_2d(self):
        with pytest.raises(ValueError):
            classify_rotation_vector(RotationResult(np.array([0.5]), 16.0),
                                     TORUS_THRESHOLD, CFG, 1e-9)

    def test_orbitclass_factories(self):
        assert OrbitClass.chaotic().tag == "chaotic"
        assert OrbitClass.nonresonant(order=500).order == 500
        hit = ResonanceHit(m=(1, -1), n=0, order=2, distance=0.0)
        assert OrbitClass.resonant(hit).order == 2


class TestResonanceStatistics:
    def test_deterministic(self):
        a = resonance_statistics(1000, 1e-6, seed=4)
        b = resonance_statistics(1000, 1e-6, seed=4)
        assert a == b

    def test_mean_tracks_formula(self):
        st = resonance_statistics(2000, 1e-6, seed=8)
        assert st.mean_log10 == pytest.approx(mean_log10_order(1e-6), abs=0.03)
        assert st.sigma == pytest.approx(0.171, abs=0.02)
        assert st.misclassified_fraction == pytest.approx(
            st.below_band_fraction + st.above_band_fraction, abs=1e-15)

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            resonance_statistics(10, 1e-6, seed=0)
