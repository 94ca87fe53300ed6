"""Photon statistics, quadrature variances and phase-estimation bounds in closed form.

Every quantity is a ratio of derivatives of Z(y1): for the n-heralded state

    <n>   = y Z^(n+1) / Z^(n)
    <n^2> = y^2 Z^(n+2) / Z^(n) + <n>
    Var X1,2 = 1/4 + <n>/2 +- y (yZ)^(n+1) / Z^(n)

with y = y1.  Ratios are formed by subtracting log magnitudes; only the final
combinations are done in ordinary floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConsistencyError, UndefinedBoundError
from .herald import success_probability
from .numerics import yz_derivative
from .states import ModelParams, _check_n

__all__ = [
    "HeraldStats",
    "SmsvReference",
    "mean_photon",
    "second_moment",
    "photon_variance",
    "quadrature_variances",
    "qfi",
    "qcr_bound",
    "sensitivity_gain",
    "ratios",
    "smsv_reference",
    "herald_stats",
]

_VAR_TOL = 1e-9


@dataclass(frozen=True)
class SmsvReference:
    s: float
    mean: float
    variance: float
    var_x1: float
    var_x2: float
    qcr: float

    @property
    def dx2(self) -> float:
        return math.sqrt(self.var_x2)


def smsv_reference(s: float) -> SmsvReference:
    """Squeezed-vacuum benchmarks: <n> = sinh^2 s, dn = 2(sinh^4 s + sinh^2 s)."""
    ModelParams(s, 1.0)
    sh2 = math.sinh(s) ** 2
    var = 2.0 * (sh2 * sh2 + sh2)
    return SmsvReference(
        s=s,
        mean=sh2,
        variance=var,
        var_x1=math.exp(2 * s) / 4,
        var_x2=math.exp(-2 * s) / 4,
        qcr=1.0 / math.sqrt(var),
    )


def _ratio(params: ModelParams, num: int, den: int) -> float:
    ladder = params.ladder(num)
    return (ladder[num] / ladder[den]).to_real()


def mean_photon(params: ModelParams, n: int) -> float:
    n = _check_n(n)
    return params.y1 * _ratio(params, n + 1, n)


def second_moment(params: ModelParams, n: int) -> float:
    n = _check_n(n)
    y = params.y1
    return y * y * _ratio(params, n + 2, n) + mean_photon(params, n)


def photon_variance(params: ModelParams, n: int) -> float:
    """<n^2> - <n>^2, clamped at zero when negative by less than 1e-9."""
    n = _check_n(n)
    y = params.y1
    mean = mean_photon(params, n)
    var = y * y * _ratio(params, n + 2, n) + mean - mean * mean
    if var < 0:
        if var < -_VAR_TOL:
            raise ConsistencyError(f"photon variance {var!r} is negative beyond rounding")
        return 0.0
    return var


def quadrature_variances(params: ModelParams, n: int) -> tuple[float, float]:
    """(Var X1, Var X2) with X1 = (a + a+)/2, X2 = (a - a+)/2i; vacuum gives 1/4.

    Since (yZ)^(k) = y Z^(k) + k Z^(k-1), the cross term equals
    y <n> + (n + 1) y, so Var X2 = 1/4 + <n> (1 - 2y)/2 - (n + 1) y.  That
    arrangement, with 1 - 2y taken from the exact gap, avoids subtracting two
    numbers of size <n>/2 when X2 is strongly squeezed.
    """
    n = _check_n(n)
    ladder = params.ladder(n + 1)
    y = params.y1
    mean = mean_photon(params, n)
    cross = (yz_derivative(ladder, n + 1) * y / ladder[n]).to_real()
    var_x1 = 0.25 + mean / 2.0 + cross
    var_x2 = 0.25 + (mean * params.gap1 / 2.0 - (n + 1) * y)
    return var_x1, var_x2


def qfi(params: ModelParams, n: int) -> float:
    """Quantum Fisher information for the generator n/2: 4 Var(n/2) = Var(n)."""
    return photon_variance(params, n)


def qcr_bound(params: ModelParams, n: int) -> float:
    """Quantum Cramer-Rao bound 1/sqrt(F) on the phase error."""
    f = qfi(params, n)
    if f <= 0:
        raise UndefinedBoundError(
            f"Fisher information vanishes for n={n} at s={params.s}, t={params.t}"
        )
    return 1.0 / math.sqrt(f)


def _qcr_smsv(s: float) -> float:
    # The squeezed vacuum is the no-click state at t = 1; evaluating it on the
    # same path makes the gain exactly zero there.
    return qcr_bound(ModelParams(s, 1.0), 0)


def sensitivity_gain(params: ModelParams, n: int) -> float:
    """Gain in dB, -10 log10(bound_n / bound_smsv); positive beats the squeezed vacuum."""
    return -10.0 * math.log10(qcr_bound(params, n) / _qcr_smsv(params.s)) + 0.0


def ratios(params: ModelParams, n: int) -> tuple[float, float, float]:
    """(<n>/<n>_smsv, sqrt(dn/dn_smsv), dX2/dX2_smsv)."""
    ref = smsv_reference(params.s)
    rn = mean_photon(params, n) / ref.mean
    rv = math.sqrt(photon_variance(params, n) / ref.variance)
    rs = math.sqrt(quadrature_variances(params, n)[1] / ref.var_x2)
    return rn, rv, rs


@dataclass(frozen=True)
class HeraldStats:
    params: ModelParams
    n: int
    mean: float
    second_moment: float
    variance: float
    var_x1: float
    var_x2: float
    qfi: float
    qcr: float
    rn: float
    rv: float
    rs: float
    gain_db: float
    prob: float

    @property
    def sqrt_variance(self) -> float:
        return math.sqrt(self.variance)

    @property
    def dx2(self) -> float:
        return math.sqrt(self.var_x2)

    def as_record(self) -> dict:
        """Flat mapping of field names to values (params flattened to s, t)."""
        rec = {"s": self.params.s, "t": self.params.t, "n": self.n}
        for name in (
            "mean", "second_moment", "variance", "var_x1", "var_x2",
            "qfi", "qcr", "rn", "rv", "rs", "gain_db", "prob",
        ):
            rec[name] = getattr(self, name)
        return rec


def herald_stats(params: ModelParams, n: int) -> HeraldStats:
    """All statistics of the n-heralded state.  Undefined bounds are reported as nan."""
    n = _check_n(n)
    mean = mean_photon(params, n)
    var = photon_variance(params, n)
    vx1, vx2 = quadrature_variances(params, n)
    rn, rv, rs = ratios(params, n)
    try:
        qcr = qcr_bound(params, n)
        gain = sensitivity_gain(params, n)
    except UndefinedBoundError:
        qcr = gain = math.nan
    return HeraldStats(
        params=params,
        n=n,
        mean=mean,
        second_moment=second_moment(params, n),
        variance=var,
        var_x1=vx1,
        var_x2=vx2,
        qfi=var,
        qcr=qcr,
        rn=rn,
        rv=rv,
        rs=rs,
        gain_db=gain,
        prob=success_probability(params, n),
    )
