import math

import pytest
from hypothesis import given, strategies as st

from spinrevival.errors import DomainError, EstimateInvalidError
from spinrevival.timing import (field_revival_estimate, spin_revival_denominator,
                                spin_revival_estimate)

from analysis import entropy_dip_time, revival_peak_time
from conftest import run_preset

FIELD_TR = 2 * math.pi * 6


def eq9_by_hand(z, n):
    # Term-by-term evaluation written independently of the library.
    num = 2 * math.pi * math.sqrt(n * z / (n + z))
    t1 = 3 * z / (2 * (n + z))
    t2 = (n + z) / (n * z)
    t3 = (z / (4 * n ** 2)) * (n * (z - 1) + z * (n - 1)) / (n + z) ** 2
    return num / (1 - t1 - t2 + t3)


class TestField:
    def test_headline(self):
        est = field_revival_estimate(36, 1.0)
        assert est.t_revival == pytest.approx(37.699, abs=5e-4)
        assert est.t_collapse == 2.0
        assert not est.approximate_collapse

    def test_lambda_scaling(self):
        one, two = field_revival_estimate(36, 1.0), field_revival_estimate(36, 2.0)
        assert two.t_revival == pytest.approx(one.t_revival / 2, rel=1e-15)
        assert two.t_collapse == pytest.approx(one.t_collapse / 2, rel=1e-15)

    def test_unit(self):
        assert field_revival_estimate(1, 1.0).t_revival == pytest.approx(2 * math.pi, rel=1e-15)

    def test_derived_times(self):
        est = field_revival_estimate(36, 1.0)
        assert est.t_attractor == est.t_revival / 4
        assert est.t_second_attractor == 3 * est.t_revival / 4
        assert est.t_entanglement_revival == est.t_revival / 2
        assert 0 < est.t_collapse < est.t_attractor < est.t_revival

    @pytest.mark.parametrize("n_bar,lam", [(0, 1), (-1, 1), (36, 0), (36, -1)])
    def test_domain(self, n_bar, lam):
        with pytest.raises(DomainError):
            field_revival_estimate(n_bar, lam)


class TestSpin:
    def test_headline(self):
        est = spin_revival_estimate(25, 150, 1.0)
        assert est.t_revival == pytest.approx(39.35, abs=5e-3)
        assert est.t_revival == pytest.approx(eq9_by_hand(25, 150), rel=1e-13)
        assert est.approximate_collapse
        assert est.t_collapse == 2.0

    def test_fig9_horizon(self):
        t = spin_revival_estimate(9, 25, 1.0).t_revival
        assert math.isfinite(t) and t > 0
        assert t == pytest.approx(eq9_by_hand(9, 25), rel=1e-13)

    def test_large_n_near_field_value(self):
        t = spin_revival_estimate(36, 10 ** 6, 1.0).t_revival
        assert abs(t - FIELD_TR) / FIELD_TR < 0.04

    def test_large_n_limit(self):
        # N -> oo leaves only the 1/|ζ|² correction in the denominator.
        limit = FIELD_TR / (1 - 1 / 36)
        assert spin_revival_estimate(36, 10 ** 9, 1.0).t_revival == pytest.approx(limit, rel=1e-6)

    def test_monotone_in_n(self):
        ts = [spin_revival_estimate(36, n, 1.0).t_revival for n in (10 ** 2, 10 ** 3, 10 ** 4)]
        limit = FIELD_TR / (1 - 1 / 36)
        assert ts[0] > ts[1] > ts[2] > limit

    @pytest.mark.parametrize("z", [0.5, 1.0])
    def test_invalid_small_zeta(self, z):
        assert spin_revival_denominator(z, 10) <= 0
        with pytest.raises(EstimateInvalidError):
            spin_revival_estimate(z, 10, 1.0)

    @pytest.mark.parametrize("args", [(0, 10, 1), (9, 0, 1), (9, 10, 0)])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            spin_revival_estimate(*args)

    def test_invalid_when_zeta_rivals_n(self):
        assert spin_revival_denominator(93, 50) <= 0
        with pytest.raises(EstimateInvalidError):
            spin_revival_estimate(93, 50, 1.0)

    @given(st.floats(4, 400), st.integers(2000, 10 ** 6), st.floats(0.1, 10))
    def test_inverse_lambda_scaling(self, z, n, lam):
        base = spin_revival_estimate(z, n, 1.0).t_revival
        assert spin_revival_estimate(z, n, lam).t_revival == pytest.approx(base / lam, rel=1e-12)


class TestAgainstSimulation:
    def test_field_revival_peak_within_5_percent(self):
        s = run_preset("fig1")
        tr = s.estimate.t_revival
        assert abs(revival_peak_time(s) - tr) / tr < 0.05

    @pytest.mark.parametrize("preset", ["fig1", "fig4"])
    def test_entropy_dip_within_5_percent_of_quarter_revival(self, preset):
        s = run_preset(preset)
        tq = s.estimate.t_attractor
        assert abs(entropy_dip_time(s) - tq) / tq < 0.05

    def test_small_spin_revival_peak_within_10_percent(self):
        s = run_preset("fig9a")
        tr = s.estimate.t_revival
        assert abs(revival_peak_time(s) - tr) / tr < 0.10
