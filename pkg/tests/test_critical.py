import math

import numpy as np
import pytest

from torus_scan import (BracketError, DegenerateMapError, Torus2Params,
                        det_df, eps_crit, min_det_df, parameter_catalog)
from torus_scan.maps import TWO_PI

# frozen from this implementation (bisection + independent quadratic-root
# oracle agree to < 2e-5); case 6 differs from the published table, see the
# acceptance suite
COMPUTED_EPS_CRIT = {
    0: 2.220447, 1: 2.207047, 2: 2.456630, 3: 2.056427,
    4: 1.314809, 5: 2.343359, 6: 5.125076, 7: 1.543581,
}


def eps_crit_quadratic_oracle(params, n=2048):
    """det(Df) is quadratic in eps at fixed x: minimize its positive root."""
    a1, a2, a3, a4 = params.amps
    p1, p2, p3, p4 = params.phases
    x = np.arange(n) / n
    s1 = np.sin(TWO_PI * (x + p1))
    s2 = np.sin(TWO_PI * (x + p2))
    s3 = np.sin(TWO_PI * (x + p3))
    s4 = np.sin(TWO_PI * (x + p4))
    d = a1 * a4 * s1[:, None] * s4[None, :] - a2 * a3 * s2[None, :] * s3[:, None]
    t = -(a1 * s1[:, None] + a4 * s4[None, :] * np.ones((n, 1)))
    best = np.inf
    with np.errstate(all="ignore"):
        disc = t * t - 4.0 * d
        ok = (d != 0) & (disc >= 0)
        sq = np.sqrt(np.where(ok, disc, np.nan))
        for sgn in (-1.0, 1.0):
            r = (-t + sgn * sq) / (2.0 * d)
            best = min(best, float(np.min(np.where(ok & (r > 0), r, np.inf))))
        lin = np.where((d == 0) & (t < 0), -1.0 / t, np.inf)
        best = min(best, float(np.min(lin)))
    return best


class TestMinDet:
    def test_unit_at_zero_eps(self):
        md = min_det_df(parameter_catalog(0), 0.0)
        assert md.value == pytest.approx(1.0, abs=1e-12)

    def test_case0_vanishes_at_critical(self):
        md = min_det_df(parameter_catalog(0), 2.22044)
        assert abs(md.value) < 1e-4

    def test_det_df_matches_jacobian(self):
        from torus_scan import jacobian
        rng = np.random.default_rng(3)
        params = parameter_catalog(2, eps=1.9)
        for _ in range(50):
            x = rng.random(2)
            assert det_df(params, 1.9, x[0], x[1]) == pytest.approx(
                np.linalg.det(jacobian(x, params)), abs=1e-12)

    def test_case4_product_structure(self):
        # uncoupled: det = (1 - eps a1 s1)(1 - eps a4 s4)
        params = parameter_catalog(4, eps=1.1)
        a1, a4 = params.amps[0], params.amps[3]
        p1, p4 = params.phases[0], params.phases[3]
        rng = np.random.default_rng(4)
        for _ in range(50):
            x = rng.random(2)
            s1 = math.sin(TWO_PI * (x[0] + p1))
            s4 = math.sin(TWO_PI * (x[1] + p4))
            expected = (1.0 - 1.1 * a1 * s1) * (1.0 - 1.1 * a4 * s4)
            assert det_df(params, 1.1, x[0], x[1]) == pytest.approx(expected, abs=1e-12)


class TestEpsCrit:
    @pytest.mark.parametrize("case", range(8))
    def test_regression_values(self, case):
        res = eps_crit(parameter_catalog(case))
        assert res.eps_crit == pytest.approx(COMPUTED_EPS_CRIT[case], abs=5e-5)
        assert res.residual <= 1e-4

    @pytest.mark.parametrize("case", range(8))
    def test_quadratic_root_oracle(self, case):
        res = eps_crit(parameter_catalog(case))
        assert res.eps_crit == pytest.approx(
            eps_crit_quadratic_oracle(parameter_catalog(case)), abs=2e-5)

    @pytest.mark.parametrize("case", range(8))
    def test_bracketing(self, case):
        params = parameter_catalog(case)
        ec = eps_crit(params).eps_crit
        assert min_det_df(params, ec - 1e-3).value > 0.0
        assert min_det_df(params, ec + 1e-3).value < 0.0

    @pytest.mark.parametrize("case", range(8))
    def test_negative_det_beyond_critical(self, case):
        # a point with det(Df) < 0 exists once eps is well past critical
        params = parameter_catalog(case)
        ec = eps_crit(params).eps_crit
        assert min_det_df(params, 2.0 * ec).value < 0.0

    def test_uncoupled_closed_form(self):
        params = parameter_catalog(4)
        expected = 1.0 / max(params.amps[0], params.amps[3])
        assert eps_crit(params).eps_crit == pytest.approx(expected, abs=1e-3)

    def test_anticoupled_closed_form(self):
        params = parameter_catalog(5)
        expected = (params.amps[1] * params.amps[2]) ** -0.5
        assert eps_crit(params).eps_crit == pytest.approx(expected, abs=1e-3)

    def test_semidirect_closed_form(self):
        params = parameter_catalog(7)
        expected = 1.0 / params.amps[3]
        assert eps_crit(params).eps_crit == pytest.approx(expected, abs=1e-3)

    def test_phase_integer_shift_invariance(self):
        base = parameter_catalog(1)
        shifted = Torus2Params(omega=base.omega, eps=base.eps, amps=base.amps,
                               phases=tuple(p + k for p, k in
                                            zip(base.phases, (3, -2, 1, 5))))
        assert eps_crit(shifted).eps_crit == eps_crit(base).eps_crit

    def test_degenerate_family_rejected(self):
        for amps in ((0.0, 1.0, 0.0, 0.0), (0.0, 0.0, 1.0, 0.0)):
            params = Torus2Params(omega=(0.0, 0.0), eps=0.0, amps=amps,
                                  phases=(0.1, 0.2, 0.3, 0.4))
            with pytest.raises(DegenerateMapError):
                eps_crit(params)

    def test_bracket_error_unreachable_families_guarded(self):
        # a tiny eps ceiling forces a bracket failure on a valid family
        with pytest.raises(BracketError):
            eps_crit(parameter_catalog(6), eps_ceiling=2.0)
