"""Brute-force checks that share no closed form with the rest of the package.

The beam splitter is simulated on a truncated two-mode Fock space and the
reflected mode is projected onto a photon number, producing heralded states and
probabilities by plain linear algebra.  Moments are then obtained by direct
summation over amplitudes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import CapacityError, ConvergenceError, DomainError, NoSupportError
from .numerics import log_factorial, log_factorials
from .states import FockVector

__all__ = [
    "TwoModeAmplitudes",
    "bs_transform",
    "project_and_normalize",
    "moments_from_amplitudes",
    "coherent_overlap_check",
    "OracleMoments",
]


@dataclass(frozen=True, eq=False)
class TwoModeAmplitudes:
    """amps[j, k] is the amplitude of |j>_1 |k>_2; nonzero only for j + k <= N_total."""

    amps: np.ndarray
    N_total: int
    tail: float = 0.0

    @property
    def norm_sq(self) -> float:
        return math.fsum(self.amps.ravel() ** 2)


def bs_transform(state: FockVector, t: float, N_total: int | None = None) -> TwoModeAmplitudes:
    """Send ``state`` (mode 1) and vacuum (mode 2) through a beam splitter.

    Creation operators map as a1+ -> t a1+ - r a2+, so

        |m, 0>  ->  sum_j sqrt(C(m, j)) t^j (-r)^(m-j) |j, m-j>.
    """
    if not (0.0 < t <= 1.0):
        raise DomainError(f"transmittance must satisfy 0 < t <= 1, got {t!r}")
    if N_total is None:
        N_total = state.trunc_N
    if N_total < state.trunc_N:
        raise CapacityError(f"N_total={N_total} cannot hold input support up to {state.trunc_N}")
    r = math.sqrt((1.0 - t) * (1.0 + t))
    log_t = math.log(t)
    log_r = math.log(r) if r > 0 else -math.inf

    out = np.zeros((N_total + 1, N_total + 1))
    for m, c in zip(state.fock_numbers, state.amps):
        if c == 0.0:
            continue
        m = int(m)
        j = np.arange(m + 1)
        k = m - j
        lb = 0.5 * (log_factorial(m) - log_factorials(j) - log_factorials(k))
        with np.errstate(invalid="ignore"):
            lr = np.where(k == 0, 0.0, k * log_r)
        coef = np.exp(lb + j * log_t + lr)
        coef[k % 2 == 1] *= -1.0
        out[j, k] += c * coef
    return TwoModeAmplitudes(out, N_total, state.tail_bound)


def project_and_normalize(state: TwoModeAmplitudes, n: int) -> tuple[FockVector, float]:
    """Condition on ``n`` photons in mode 2.

    Returns the normalised mode-1 state (sign fixed so the first nonzero
    amplitude is positive) and the squared norm of the slice, i.e. the
    heralding probability.
    """
    if n < 0 or n > state.N_total:
        raise CapacityError(f"n={n} outside 0..{state.N_total}")
    col = state.amps[:, n]
    prob = math.fsum(col**2)
    if prob == 0.0:
        raise NoSupportError(f"no amplitude with {n} photons in mode 2")
    nz = np.flatnonzero(col)
    parity = int(nz[0]) % 2
    if np.any(nz % 2 != parity):
        raise ValueError("projected slice mixes parities")
    top = state.N_total - n
    top -= (top - parity) % 2
    vec = col[parity : top + 1 : 2] / math.sqrt(prob)
    if vec[np.flatnonzero(vec)[0]] < 0:
        vec = -vec
    fv = FockVector(
        parity="odd" if parity else "even",
        herald_n=n,
        amps=vec,
        trunc_N=top,
        tail_bound=state.tail / prob,
    )
    return fv, prob


@dataclass(frozen=True)
class OracleMoments:
    mean: float
    second_moment: float
    var_x1: float
    var_x2: float

    @property
    def variance(self) -> float:
        return self.second_moment - self.mean**2


def moments_from_amplitudes(state: FockVector) -> OracleMoments:
    """Photon-number and quadrature moments by direct summation.

    For real amplitudes of definite parity <X1> = <X2> = 0 and
    <X1^2>, <X2^2> = (1 + 2<n> +- 2<a^2>) / 4.  The vector is renormalised
    by its own norm so truncation does not bias the result.
    """
    c = np.asarray(state.amps, dtype=float)
    f = state.fock_numbers.astype(float)
    norm = math.fsum(c**2)
    mean = math.fsum(f * c**2) / norm
    second = math.fsum(f * f * c**2) / norm
    a2 = math.fsum(c[:-1] * c[1:] * np.sqrt((f[:-1] + 1) * (f[:-1] + 2))) / norm
    return OracleMoments(
        mean=mean,
        second_moment=second,
        var_x1=(1.0 + 2.0 * mean + 2.0 * a2) / 4.0,
        var_x2=(1.0 + 2.0 * mean - 2.0 * a2) / 4.0,
    )


def squeezed_overlap_amplitudes(R: float, tol: float = 1e-17, max_terms: int = 100_000) -> np.ndarray:
    """a_2n = sqrt(2R/(1+R^2)) ((1-R^2)/(2(1+R^2)))^n sqrt((2n)!)/n!, until |a_2n|^2 < tol."""
    if not R > 0:
        raise DomainError(f"R must be positive, got {R!r}")
    y = (1.0 - R * R) / (2.0 * (1.0 + R * R))
    pref = 0.5 * math.log(2.0 * R / (1.0 + R * R))
    if y == 0.0:
        return np.array([math.exp(pref)])
    sign = -1.0 if y < 0 else 1.0
    k = np.arange(max_terms)
    la = pref + k * math.log(abs(y)) + 0.5 * log_factorials(2 * k) - log_factorials(k)
    small = np.flatnonzero((2 * la < math.log(tol)) & (np.diff(la, append=-np.inf) < 0))
    if not small.size:
        raise ConvergenceError(f"overlap amplitudes at R={R!r} did not decay within {max_terms} terms")
    K = int(small[0])
    return np.exp(la[: K + 1]) * sign ** k[: K + 1]


def coherent_overlap_check(R: float, alpha: float, tol: float = 1e-16) -> tuple[float, float]:
    """<alpha|SS> two ways: Fock-space series and the Gaussian-integral closed form.

    Series: sum_n a_2n e^(-alpha^2/2) alpha^(2n) / sqrt((2n)!).
    Closed: sqrt(2R/(1+R^2)) exp(-R^2 alpha^2 / (1+R^2)).
    """
    alpha = float(alpha)
    a = squeezed_overlap_amplitudes(R, tol)
    k = np.arange(len(a))
    if alpha == 0.0:
        series = float(a[0])
    else:
        lc = -alpha * alpha / 2.0 + 2 * k * math.log(abs(alpha)) - 0.5 * log_factorials(2 * k)
        terms = np.abs(a)
        with np.errstate(divide="ignore"):
            lt = np.log(terms) + lc
        signs = np.sign(a)
        pos = logsumexp(lt[signs > 0]) if np.any(signs > 0) else -np.inf
        neg = logsumexp(lt[signs < 0]) if np.any(signs < 0) else -np.inf
        series = math.exp(pos) - (math.exp(neg) if neg > -np.inf else 0.0)
    closed = math.sqrt(2.0 * R / (1.0 + R * R)) * math.exp(-R * R * alpha * alpha / (1.0 + R * R))
    return series, closed
