"""Self-check of every closed form against independent evaluation routes.

Each group returns a :class:`GroupResult`; :func:`run_validation` runs them all.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .herald import complete_distribution, success_probability
from .numerics import z_derivative_series, z_ladder
from .oracle import (
    bs_transform,
    coherent_overlap_check,
    moments_from_amplitudes,
    project_and_normalize,
    squeezed_overlap_amplitudes,
)
from .states import ModelParams, heralded_amplitudes, smsv_amplitudes
from . import stats

__all__ = ["GroupResult", "run_validation", "GROUPS", "pad_diff"]

# Oracle inputs are truncated far below the comparison tolerance so that
# renormalised projections of unlikely clicks stay accurate.
ORACLE_CUTOFF = 1e-32
STATE_CUTOFF = 1e-30


@dataclass
class GroupResult:
    name: str
    passed: bool
    worst: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: worst={self.worst:.3g} tol={self.tolerance:.0e} {self.detail}".rstrip()


def pad_diff(a: np.ndarray, b: np.ndarray) -> float:
    n = max(len(a), len(b))
    x, y = np.zeros(n), np.zeros(n)
    x[: len(a)], y[: len(b)] = a, b
    return float(np.max(np.abs(x - y)))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b else abs(a)


def check_z_ladder(deep: bool = False, **_) -> GroupResult:
    worst = 0.0
    for y in (0.05, 0.2, 0.3, 0.45):
        ladder = z_ladder(y, 110)
        for j in range(111):
            series = z_derivative_series(y, j)
            worst = max(worst, abs(math.expm1(ladder.log(j) - series.log_mag)))
    for s in np.linspace(0.1, 6.0, 60):
        p = ModelParams(float(s), 1.0)
        worst = max(worst, _rel(p.ladder(0)[0].to_real(), math.cosh(s)))
    return GroupResult("z_ladder", worst <= 1e-10, worst, 1e-10)


def _oracle_grid(deep: bool):
    return [(s, t) for s in ((0.5, 1.0, 1.5) if deep else (0.5, 1.0)) for t in (0.6, 0.9)]


def check_oracle_equivalence(deep: bool = False, perturb: float = 0.0, **_) -> GroupResult:
    """Closed-form states and probabilities vs the simulated beam splitter."""
    worst_a = worst_p = 0.0
    for s, t in _oracle_grid(deep):
        two = bs_transform(smsv_amplitudes(s, ORACLE_CUTOFF), t)
        params = ModelParams(s, t)
        for n in range(7):
            sim, prob = project_and_normalize(two, n)
            cf = heralded_amplitudes(params, n, STATE_CUTOFF).amps.copy()
            if perturb:
                cf[0] += perturb
            worst_a = max(worst_a, pad_diff(cf, sim.amps))
            worst_p = max(worst_p, abs(prob - success_probability(params, n)))
    worst = max(worst_a, worst_p)
    return GroupResult(
        "oracle_equivalence", worst <= 1e-10, worst, 1e-10,
        f"(amplitudes {worst_a:.2g}, probabilities {worst_p:.2g})",
    )


def check_completeness(deep: bool = False, **_) -> GroupResult:
    worst = 0.0
    for s in (0.25, 0.5, 1.0, 1.5, 2.0):
        for t in (0.5, 0.7, 0.9, 0.99):
            worst = max(worst, complete_distribution(ModelParams(s, t), 1e-8).tail)
    return GroupResult("completeness", worst <= 1e-8, worst, 1e-8)


def _grid():
    return [ModelParams(s, t) for s in (0.5, 1.0, 1.5) for t in (0.6, 0.9, 0.98)]


def check_reductions(**_) -> GroupResult:
    worst = 0.0
    for p in _grid():
        y, z = p.y1, p.ladder(0)[0].to_real()
        n0 = 4 * y * y * z * z
        n1 = 1 + 12 * y * y * z * z
        pairs = [
            (stats.mean_photon(p, 0), n0),
            (stats.photon_variance(p, 0), 2 * (n0 * n0 + n0)),
            (stats.mean_photon(p, 1), n1),
            (stats.photon_variance(p, 1), 2 * (n1 * n1 + n1 - 2) / 3),
            (stats.quadrature_variances(p, 0)[1], 0.25 - y / (1 + 2 * y)),
            (stats.quadrature_variances(p, 0)[0], 0.25 + y / (1 - 2 * y)),
        ]
        worst = max(worst, *(_rel(a, b) for a, b in pairs))
    return GroupResult("closed_form_reductions", worst <= 1e-10, worst, 1e-10)


def check_smsv_limits(**_) -> GroupResult:
    worst_v = worst_u = 0.0
    for s in (0.1, 0.5, 1.0, 2.0, 3.0):
        vx1, vx2 = stats.quadrature_variances(ModelParams(s, 1.0), 0)
        worst_v = max(worst_v, _rel(vx1, math.exp(2 * s) / 4), _rel(vx2, math.exp(-2 * s) / 4))
        worst_u = max(worst_u, abs(math.sqrt(vx1 * vx2) - 0.25))
    ok = worst_v <= 1e-10 and worst_u <= 1e-12
    return GroupResult("smsv_quadrature_limits", ok, worst_v, 1e-10, f"(uncertainty product {worst_u:.2g})")


def check_moments(**_) -> GroupResult:
    worst = 0.0
    for p in _grid():
        for n in range(9):
            om = moments_from_amplitudes(heralded_amplitudes(p, n, STATE_CUTOFF))
            vx1, vx2 = stats.quadrature_variances(p, n)
            worst = max(
                worst,
                _rel(om.mean, stats.mean_photon(p, n)),
                _rel(om.second_moment, stats.second_moment(p, n)),
                _rel(om.variance, stats.photon_variance(p, n)),
                _rel(om.var_x1, vx1),
                _rel(om.var_x2, vx2),
            )
    return GroupResult("moments_vs_summation", worst <= 1e-9, worst, 1e-9)


def check_qfi(**_) -> GroupResult:
    worst = 0.0
    ok = True
    for p in _grid():
        for n in (0, 1, 5, 20):
            f = stats.qfi(p, n)
            ok &= f == stats.photon_variance(p, n)
            worst = max(worst, _rel(stats.qcr_bound(p, n), 1 / math.sqrt(f)))
    for s in (0.3, 1.0, 2.5):
        ok &= stats.sensitivity_gain(ModelParams(s, 1.0), 0) == 0.0
    return GroupResult("qfi_qcr_identities", ok and worst <= 1e-15, worst, 1e-15)


def check_limits(**_) -> GroupResult:
    """At y1 = 1e-6 even states approach |0>, odd states |1> with Var X2 = 3/4."""
    t = 0.01
    p = ModelParams(math.atanh(2e-6 / t**2), t)
    worst_overlap = worst_var = 0.0
    for n in range(6):
        v = heralded_amplitudes(p, n)
        worst_overlap = max(worst_overlap, 1 - v.overlap_with_fock(n % 2))
        if n % 2:
            worst_var = max(worst_var, abs(stats.quadrature_variances(p, n)[1] - 0.75))
    ok = worst_overlap <= 1e-8 and worst_var <= 1e-5
    return GroupResult(
        "vacuum_and_single_photon_limits", ok, worst_overlap, 1e-8,
        f"(odd-state |Var X2 - 0.75| {worst_var:.2g}, tol 1e-05)",
    )


def check_overlap(**_) -> GroupResult:
    worst = 0.0
    for R in (0.5, 1.0, 2.0):
        for a in (0.0, 0.5, 1.0):
            series, closed = coherent_overlap_check(R, a)
            worst = max(worst, _rel(series, closed))
    for s in (0.5, 1.0, 2.0):
        a = squeezed_overlap_amplitudes(math.exp(-s), 1e-30)
        worst = max(worst, pad_diff(a, smsv_amplitudes(s, 1e-30).amps))
    return GroupResult("coherent_overlap", worst <= 1e-10, worst, 1e-10)


def check_squeezing_order(**_) -> GroupResult:
    worst_even = 0.0
    ok = True
    for s in np.linspace(0.05, 3.0, 60):
        ref = stats.smsv_reference(float(s)).dx2
        for t in (0.9, 0.99):
            p = ModelParams(float(s), t)
            for m in range(11):
                dx_even = math.sqrt(stats.quadrature_variances(p, 2 * m)[1])
                dx_odd = math.sqrt(stats.quadrature_variances(p, 2 * m + 1)[1])
                worst_even = max(worst_even, dx_even)
                ok &= dx_even < 0.5 and dx_odd > ref
    return GroupResult("squeezing_ordering", ok, worst_even, 0.5, "(largest even-state dX2)")


GROUPS: dict[str, Callable[..., GroupResult]] = {
    "z_ladder": check_z_ladder,
    "oracle_equivalence": check_oracle_equivalence,
    "completeness": check_completeness,
    "closed_form_reductions": check_reductions,
    "smsv_quadrature_limits": check_smsv_limits,
    "moments_vs_summation": check_moments,
    "qfi_qcr_identities": check_qfi,
    "vacuum_and_single_photon_limits": check_limits,
    "coherent_overlap": check_overlap,
    "squeezing_ordering": check_squeezing_order,
}


def run_validation(deep: bool = False, perturb: float = 0.0, report: Callable[[str], None] | None = None) -> list[GroupResult]:
    """Run every group; ``perturb`` shifts one closed-form amplitude (sensitivity hook)."""
    results = []
    for name, fn in GROUPS.items():
        t0 = time.perf_counter()
        res = fn(deep=deep, perturb=perturb)
        res.detail = f"{res.detail} [{time.perf_counter() - t0:.2f}s]".strip()
        results.append(res)
        if report:
            report(res.line())
    return results
