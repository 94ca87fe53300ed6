import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paritystates.errors import DomainError
from paritystates.oracle import bs_transform, project_and_normalize
from paritystates.states import (
    FockVector,
    ModelParams,
    heralded_amplitudes,
    smsv_amplitudes,
    truncation_cutoff,
)
from paritystates.validation import pad_diff


class TestModelParams:
    def test_derived(self):
        p = ModelParams(1.0, 0.9)
        assert p.y0 == pytest.approx(math.tanh(1) / 2)
        assert p.y1 == pytest.approx(0.81 * math.tanh(1) / 2)
        assert p.t**2 + p.r**2 == pytest.approx(1.0, abs=1e-15)
        assert p.gap1 == pytest.approx(1 - 2 * p.y1, abs=1e-15)

    @pytest.mark.parametrize("s,t", [(0, 0.5), (-1, 0.5), (1, 0), (1, 1.2), (30, 0.9), (float("nan"), 0.5)])
    def test_domain(self, s, t):
        with pytest.raises(DomainError):
            ModelParams(s, t)

    @given(st.floats(0.01, 8), st.floats(0.01, 1))
    def test_y_ordering(self, s, t):
        p = ModelParams(s, t)
        assert 0 < p.y1 <= p.y0 < 0.5


class TestSmsv:
    def test_examples(self):
        v = smsv_amplitudes(1.0, 1e-16)
        # 1/sqrt(cosh 1)
        assert v.amps[0] == pytest.approx(1 / math.sqrt(math.cosh(1.0)), rel=1e-14)
        assert v.amps[0] == pytest.approx(0.8050182, abs=1e-7)
        assert v.amps[1] / v.amps[0] == pytest.approx(math.tanh(1) / 2 * math.sqrt(2), rel=1e-14)
        assert v.amps[1] / v.amps[0] == pytest.approx(0.5385, abs=1e-4)

    @pytest.mark.parametrize("s", [0.2, 1.0, 2.5])
    def test_normalisation_improves(self, s):
        deficits = [1 - smsv_amplitudes(s, c).norm_sq for c in (1e-2, 1e-6, 1e-12)]
        assert deficits[0] >= deficits[1] >= deficits[2] - 1e-15
        assert abs(deficits[2]) <= 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            smsv_amplitudes(0.0, 1e-10)

    @pytest.mark.parametrize("s", [0.3, 1.0, 2.0, 3.0])
    def test_reduction_of_heralded(self, s):
        a = smsv_amplitudes(s, 1e-20).amps
        b = heralded_amplitudes(ModelParams(s, 1.0), 0, 1e-20).amps
        assert pad_diff(a, b) <= 1e-12


class TestHeralded:
    @pytest.mark.parametrize("n", range(6))
    def test_small_y_limit(self, n):
        t = 0.01
        p = ModelParams(math.atanh(2e-6 / t**2), t)
        assert p.y1 == pytest.approx(1e-6)
        v = heralded_amplitudes(p, n)
        assert v.overlap_with_fock(n % 2) > 1 - 1e-8

    @pytest.mark.parametrize("n", range(8))
    def test_parity_and_sign(self, n):
        v = heralded_amplitudes(ModelParams(1.2, 0.8), n, 1e-14)
        assert v.parity == ("odd" if n % 2 else "even")
        assert np.all(v.fock_numbers % 2 == n % 2)
        assert np.all(v.amps >= 0)
        dense = v.dense()
        assert np.all(dense[1 - n % 2 :: 2] == 0)

    def test_against_simulation(self):
        p = ModelParams(1.0, 0.9)
        sim, _ = project_and_normalize(bs_transform(smsv_amplitudes(1.0, 1e-32), 0.9), 2)
        assert pad_diff(heralded_amplitudes(p, 2, 1e-30).amps, sim.amps) <= 1e-10

    @given(st.floats(0.05, 3.0), st.floats(0.3, 1.0), st.integers(0, 100), st.sampled_from([1e-4, 1e-9, 1e-14]))
    @settings(max_examples=60, deadline=None)
    def test_norm_certified(self, s, t, n, eps):
        v = heralded_amplitudes(ModelParams(s, t), n, eps)
        assert v.tail_bound <= eps
        # amplitudes come from exp of log-weights of size ~|ln Z^(n)|; allow that rounding
        assert 1 - v.norm_sq <= v.tail_bound + 1e-12
        assert v.norm_sq <= 1 + 1e-12


class TestTruncation:
    def test_monotone_in_eps(self):
        p = ModelParams(1.5, 0.95)
        for n in (0, 1, 7, 30):
            ks = [truncation_cutoff(p, n, e) for e in (1e-2, 1e-5, 1e-9, 1e-14, 1e-25)]
            assert ks == sorted(ks)

    def test_tiny_y(self):
        t = 0.01
        p = ModelParams(math.atanh(2e-6 / t**2), t)
        assert truncation_cutoff(p, 0, 1e-12) <= 3

    def test_bound_holds_against_long_sum(self):
        p = ModelParams(1.0, 0.9)
        K = truncation_cutoff(p, 0, 1e-12)
        assert heralded_amplitudes(p, 0, 1e-12).norm_sq >= 1 - 1e-12
        # the discarded mass, summed explicitly from a much longer vector
        long = heralded_amplitudes(p, 0, 1e-40).amps
        assert math.fsum(long[K + 1 :] ** 2) <= heralded_amplitudes(p, 0, 1e-12).tail_bound

    def test_eps_domain(self):
        with pytest.raises(DomainError):
            truncation_cutoff(ModelParams(1, 0.9), 0, 0.0)


def test_fockvector_validation():
    with pytest.raises(ValueError):
        FockVector("both", 0, [1.0], 0, 0.0)
