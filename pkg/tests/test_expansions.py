import math

import numpy as np
import pytest

import oracles
from qdist import expansions as ex
from qdist.errors import SingularityError, ValidationError

PS = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]


class TestCoefficients:
    def test_half(self):
        c = ex.jsd_series_coeffs(0.5)
        assert c.c2 == 0.5 and c.c3 == 0.0
        # -(7/192)(3/4 - 3/2 + 1)/((1/8)(-1/8)) = 7/12
        assert c.c4 == pytest.approx(0.58333333333333333333, rel=1e-15)
        w = ex.wootters_sq_half_series_coeffs(0.5)
        assert w.c2 == 0.5 and w.c3 == 0.0

    def test_c3_sign_flips(self):
        assert ex.jsd_series_coeffs(0.3).c3 < 0 < ex.jsd_series_coeffs(0.7).c3

    @pytest.mark.parametrize("p", [0.0, 1.0])
    def test_singular(self, p):
        with pytest.raises(SingularityError):
            ex.jsd_series_coeffs(p)

    @pytest.mark.parametrize("p", PS)
    def test_against_taylor_oracle(self, p):
        tj = oracles.taylor_coefficients(oracles.binary_jsd, p)
        tw = oracles.taylor_coefficients(oracles.binary_half_wootters_sq, p)
        cj, cw = ex.jsd_series_coeffs(p), ex.wootters_sq_half_series_coeffs(p)
        for got, ref in zip((cj.c2, cj.c3, cj.c4, cw.c2, cw.c3, cw.c4), tj[2:] + tw[2:]):
            assert got == pytest.approx(ref, rel=1e-8, abs=1e-14)

    def test_shared_low_orders(self, rng):
        for p in rng.uniform(0.01, 0.99, 100):
            a, b = ex.jsd_series_coeffs(p), ex.wootters_sq_half_series_coeffs(p)
            assert abs(a.c2 - b.c2) <= 1e-14 * abs(a.c2)
            assert abs(a.c3 - b.c3) <= 1e-14 * max(abs(a.c3), 1.0)

    def test_fourth_order_gap_is_not_constant(self):
        # 1/192 would be p-independent; the true gap is (2p^2-2p+1)/(384 p^3 (p-1)^3)
        assert ex.fourth_order_gap(0.5) == pytest.approx(-1 / 12, rel=1e-14)
        for p in PS:
            ref = (2 * p * p - 2 * p + 1) / (384 * p**3 * (p - 1) ** 3)
            assert ex.fourth_order_gap(p) == pytest.approx(ref, rel=1e-12)
        assert ex.fourth_order_gap(0.2) != pytest.approx(ex.fourth_order_gap(0.5))


class TestSeriesAccuracy:
    def test_jsd_series_residual(self):
        p, dp = 0.3, 1e-3
        c = ex.jsd_series_coeffs(p)
        exact = float(oracles.binary_jsd(p, oracles.mp.mpf(dp)))
        assert abs(float(ex.binary_jsd(p, dp)) - exact) <= 1e-20
        assert abs(float(c(dp)) - exact) <= 10 * dp**5

    def test_wootters_series_residual(self):
        p, dp = 0.3, 1e-3
        c = ex.wootters_sq_half_series_coeffs(p)
        exact = float(oracles.binary_half_wootters_sq(p, oracles.mp.mpf(dp)))
        assert abs(float(c(dp)) - exact) <= 10 * dp**5

    def test_bad_order(self):
        with pytest.raises(ValueError):
            ex.jsd_series_coeffs(0.3)(0.1, order=5)


class TestOrderFit:
    def test_own_series_order_five(self):
        p = 0.3
        c = ex.jsd_series_coeffs(p)
        fit = ex.verify_expansion_order(lambda d: ex.binary_jsd(p, d), lambda d: c(d, 4), p, np.geomspace(1e-1, 1e-3, 12))
        assert 4.8 <= fit.estimated_order <= 5.2

    def test_cubic_truncation_order_four(self):
        p = 0.3
        c = ex.jsd_series_coeffs(p)
        fit = ex.verify_expansion_order(lambda d: ex.binary_jsd(p, d), lambda d: c(d, 3), p, np.geomspace(1e-1, 1e-3, 12))
        assert 3.8 <= fit.estimated_order <= 4.2
        assert fit.r_squared > 0.999

    @pytest.mark.parametrize("p", PS)
    def test_jsd_vs_half_wootters_sq(self, p):
        dps = np.geomspace(min(p, 1 - p) / 4, 1e-4, 14)
        fit = ex.verify_expansion_order(lambda d: ex.binary_jsd(p, d), lambda d: ex.binary_half_wootters_sq(p, d), p, dps)
        assert fit.estimated_order >= 3.8

    def test_degenerate(self):
        f = lambda d: ex.binary_jsd(0.3, d)
        fit = ex.verify_expansion_order(f, f, 0.3, np.geomspace(1e-2, 1e-4, 5))
        assert fit.degenerate and math.isinf(fit.estimated_order)

    def test_steps_must_stay_inside(self):
        with pytest.raises(ValidationError):
            ex.verify_expansion_order(np.sin, np.sin, 0.1, [0.2, 0.1, 0.01])


class TestInfinitesimal:
    @pytest.mark.parametrize("metric,limit,tol", [
        ("jsd", 1 / 8, 1e-4),
        ("half_wootters_sq", 1 / 8, 1e-4),
        ("wootters_sq", 1 / 4, 1e-4),
        ("chi2_half_sq", 1 / 4, 1e-6),
    ])
    def test_limits(self, metric, limit, tol):
        r = ex.infinitesimal_ratio_check(metric, [0.3, 0.7], [1, -1])
        assert abs(r.at(1e-4) - limit) <= tol
        assert abs(r.limit - limit) <= tol / 10

    def test_fubini_study_angle_squared_limit_is_one(self):
        # theta_FS = 2 arccos|<psi|eta>|, so theta_FS^2 ~ sum dp^2/p
        r = ex.infinitesimal_ratio_check("fubini_study_sq", [0.3, 0.7], [1, -1])
        assert abs(r.at(1e-4) - 1.0) <= 4e-4
        assert abs(r.limit - 1.0) <= 1e-5

    def test_three_outcomes(self):
        r = ex.infinitesimal_ratio_check("jsd", [0.2, 0.3, 0.5], [1, 0.5, -1.5])
        assert abs(r.at(1e-4) - 0.125) <= 1e-4

    def test_boundary_point(self):
        with pytest.raises(SingularityError):
            ex.infinitesimal_ratio_check("jsd", [1.0, 0.0], [1, -1])

    def test_direction_must_sum_to_zero(self):
        with pytest.raises(ValidationError):
            ex.infinitesimal_ratio_check("jsd", [0.3, 0.7], [1, 1])


def gaussian(sigma=1.0, half_width=12.0, step=1e-3):
    x = np.arange(-half_width, half_width + step / 2, step)
    return np.exp(-(x**2) / (2 * sigma**2)) / (sigma * math.sqrt(2 * math.pi)), step


class TestFisher:
    def test_gaussian_information(self):
        dens, step = gaussian()
        assert abs(ex.fisher_shift_check(dens, step, 0.0).fisher - 1.0) <= 1e-3

    def test_gaussian_sigma_two(self):
        dens, step = gaussian(2.0, 24.0)
        assert ex.fisher_shift_check(dens, step, 0.0).fisher == pytest.approx(0.25, abs=1e-3)

    def test_small_shift_ratio(self):
        dens, step = gaussian()
        r = ex.fisher_shift_check(dens, step, 0.01)
        assert abs(r.ratio - 1.0) <= 1e-3

    def test_zero_shift(self):
        dens, step = gaussian()
        assert ex.fisher_shift_check(dens, step, 0.0).jsd == 0.0

    def test_rejects_nonpositive(self):
        dens, step = gaussian()
        dens[5] = 0.0
        with pytest.raises(ValidationError):
            ex.fisher_shift_check(dens, step, 0.01)

    def test_rejects_boundary_mass(self):
        dens, step = gaussian(half_width=3.0)
        with pytest.raises(ValidationError, match="boundary"):
            ex.fisher_shift_check(dens, step, 0.01)

    def test_rejects_fractional_shift(self):
        dens, step = gaussian()
        with pytest.raises(ValidationError):
            ex.fisher_shift_check(dens, step, 0.0105)
