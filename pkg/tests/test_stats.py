import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paritystates import ModelParams, heralded_amplitudes
from paritystates import stats
from paritystates.errors import UndefinedBoundError
from paritystates.oracle import moments_from_amplitudes


def sq_vacuum(s):
    return ModelParams(s, 1.0)


class TestSqueezedVacuumLimit:
    def test_mean_is_sinh_squared(self):
        assert stats.mean_photon(sq_vacuum(1.0), 0) == pytest.approx(1.3810978, abs=1e-7)

    def test_variance(self):
        sh2 = math.sinh(1.0) ** 2
        assert stats.photon_variance(sq_vacuum(1.0), 0) == pytest.approx(2 * (sh2**2 + sh2), rel=1e-12)

    @pytest.mark.parametrize("s", [0.1, 0.5, 1.0, 2.0, 3.0])
    def test_quadratures(self, s):
        vx1, vx2 = stats.quadrature_variances(sq_vacuum(s), 0)
        assert vx1 == pytest.approx(math.exp(2 * s) / 4, rel=1e-10)
        assert vx2 == pytest.approx(math.exp(-2 * s) / 4, rel=1e-10)
        assert math.sqrt(vx1 * vx2) == pytest.approx(0.25, abs=1e-12)

    @pytest.mark.parametrize("s, mean", [(0.5, 0.27154), (3.0, 100.358), (4.0, 744.739)])
    def test_reference_table(self, s, mean):
        assert stats.smsv_reference(s).mean == pytest.approx(mean, abs=1e-3)

    def test_reference_matches_heralded_path(self):
        ref = stats.smsv_reference(1.3)
        p = sq_vacuum(1.3)
        assert ref.mean == pytest.approx(stats.mean_photon(p, 0), rel=1e-12)
        assert ref.variance == pytest.approx(stats.photon_variance(p, 0), rel=1e-12)
        assert ref.qcr == pytest.approx(stats.qcr_bound(p, 0), rel=1e-12)

    def test_qcr_example(self):
        sh2 = math.sinh(1.0) ** 2
        assert stats.qcr_bound(sq_vacuum(1.0), 0) == pytest.approx(1 / math.sqrt(2 * (sh2**2 + sh2)), rel=1e-14)
        assert stats.qcr_bound(sq_vacuum(1.0), 0) == pytest.approx(0.38993, abs=2e-5)

    def test_gain_is_exactly_zero(self):
        for s in (0.2, 1.0, 2.7):
            assert stats.sensitivity_gain(sq_vacuum(s), 0) == 0.0


class TestReductions:
    def test_no_click_mean_independent(self):
        p = ModelParams(1.0, 0.9)
        y = p.y1
        z = 1 / math.sqrt(1 - 4 * y * y)
        assert stats.mean_photon(p, 0) == pytest.approx(4 * y * y * z * z, rel=1e-12)
        # hand-evaluated: y1 = 0.9^2 tanh(1)/2
        assert stats.mean_photon(p, 0) == pytest.approx(0.6143479, abs=1e-7)

    @pytest.mark.parametrize("s, t", [(0.5, 0.6), (1.0, 0.9), (1.5, 0.98)])
    def test_single_click(self, s, t):
        p = ModelParams(s, t)
        y = p.y1
        n1 = 1 + 12 * y * y / (1 - 4 * y * y)
        assert stats.mean_photon(p, 1) == pytest.approx(n1, rel=1e-10)
        assert stats.photon_variance(p, 1) == pytest.approx(2 * (n1 * n1 + n1 - 2) / 3, rel=1e-10)

    def test_quarter_y(self):
        # at y1 = 1/4: Var X2 = 1/4 - y/(1+2y) = 1/12
        t = 0.9
        p = ModelParams(math.atanh(0.5 / t**2), t)
        assert p.y1 == pytest.approx(0.25, abs=1e-15)
        assert stats.quadrature_variances(p, 0)[1] == pytest.approx(1 / 12, rel=1e-10)


class TestSmallY:
    def _params(self, y1, t=0.01):
        return ModelParams(math.atanh(2 * y1 / t**2), t)

    def test_odd_state_is_single_photon(self):
        p = self._params(1e-6)
        assert stats.mean_photon(p, 1) == pytest.approx(1.0, abs=1e-9)
        assert stats.quadrature_variances(p, 1)[1] == pytest.approx(0.75, abs=1e-5)

    def test_single_click_variance_vanishes(self):
        # |1> is a number state, so the variance tends to zero, not 4/3
        assert stats.photon_variance(self._params(1e-6), 1) < 1e-9

    def test_even_state_is_vacuum(self):
        p = self._params(1e-6)
        assert stats.mean_photon(p, 0) < 1e-11
        assert stats.quadrature_variances(p, 0)[1] == pytest.approx(0.25, abs=1e-5)


def test_undefined_bound(monkeypatch):
    monkeypatch.setattr(stats, "photon_variance", lambda p, n: 0.0)
    with pytest.raises(UndefinedBoundError):
        stats.qcr_bound(ModelParams(1.0, 0.9), 3)
    rec = stats.herald_stats(ModelParams(1.0, 0.9), 3)
    assert math.isnan(rec.qcr) and math.isnan(rec.gain_db)


def test_herald_stats_record():
    rec = stats.herald_stats(ModelParams(1.0, 0.9), 2).as_record()
    assert list(rec)[:3] == ["s", "t", "n"]
    assert rec["qfi"] == rec["variance"]
    assert rec["qcr"] == pytest.approx(1 / math.sqrt(rec["qfi"]), rel=1e-15)


@pytest.mark.parametrize("n", [0, 1, 4, 7])
def test_against_direct_summation(n):
    p = ModelParams(0.8, 0.9)
    om = moments_from_amplitudes(heralded_amplitudes(p, n, 1e-30))
    vx1, vx2 = stats.quadrature_variances(p, n)
    assert om.mean == pytest.approx(stats.mean_photon(p, n), rel=1e-10)
    assert om.variance == pytest.approx(stats.photon_variance(p, n), rel=1e-9)
    assert om.var_x1 == pytest.approx(vx1, rel=1e-10)
    assert om.var_x2 == pytest.approx(vx2, rel=1e-9)


params = st.builds(
    ModelParams,
    s=st.floats(0.05, 3.0),
    t=st.floats(0.5, 1.0),
)


@settings(max_examples=60, deadline=None)
@given(params, st.integers(0, 60))
def test_uncertainty_relation(p, n):
    vx1, vx2 = stats.quadrature_variances(p, n)
    assert vx1 * vx2 >= 1 / 16 * (1 - 1e-9)


def test_variance_bracketed_by_mean():
    # <n>^2 > dn > <n> for clicks n >= 1.  Fails for y1 < 1/4 (sub-Poissonian at
    # small y1 and large n, or dn > <n>^2 just above <n> = 2), so the check is
    # restricted to y1 >= 1/4 with <n> > 2.
    checked = 0
    for s in np.arange(0.3, 3.01, 0.1):
        for t in (0.9, 0.98, 0.99, 1.0):
            p = ModelParams(float(s), t)
            if p.y1 < 0.25:
                continue
            for n in range(1, 101, 3):
                mean, var = stats.mean_photon(p, n), stats.photon_variance(p, n)
                if mean > 2:
                    checked += 1
                    assert mean * mean > var > mean
    assert checked > 1000


@settings(max_examples=60, deadline=None)
@given(params, st.integers(0, 10))
def test_odd_states_less_squeezed_than_vacuum(p, m):
    assert stats.ratios(p, 2 * m + 1)[2] > 1


def test_gain_grows_with_clicks():
    p = ModelParams(3.0, 0.99)
    gains = [stats.sensitivity_gain(p, n) for n in range(0, 101, 10)]
    assert np.all(np.diff(gains) > 0)
