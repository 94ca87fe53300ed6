"""Fock amplitudes of the squeezed vacuum and of its photon-subtracted descendants.

A squeezed vacuum with amplitude ``s`` passes a beam splitter of transmittance
``t``; detecting ``n`` photons in the reflected arm leaves the transmitted mode
in a state of definite parity (even for even ``n``, odd for odd ``n``).  All
states depend on a single series parameter ``y1 = t^2 tanh(s) / 2``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ConvergenceError, DomainError
from .numerics import DEFAULT_ORDER, Y_MAX, ZLadder, log_factorials, z_ladder

__all__ = [
    "ModelParams",
    "FockVector",
    "smsv_amplitudes",
    "heralded_amplitudes",
    "truncation_cutoff",
    "log_cosh",
    "ladder_for",
]

_MAX_INDEX = 10**6


def log_cosh(s: float) -> float:
    """ln cosh(s) without overflow."""
    s = abs(s)
    return s + math.log1p(math.exp(-2.0 * s)) - math.log(2.0)


@dataclass(frozen=True)
class ModelParams:
    """Squeezing amplitude ``s > 0`` and beam-splitter transmittance ``0 < t <= 1``."""

    s: float
    t: float

    def __post_init__(self):
        s, t = float(self.s), float(self.t)
        if not (math.isfinite(s) and s > 0):
            raise DomainError(f"squeezing amplitude must satisfy s > 0, got s={self.s!r}")
        if not (0.0 < t <= 1.0):
            raise DomainError(f"transmittance must satisfy 0 < t <= 1, got t={self.t!r}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        if self.y0 > Y_MAX:
            raise DomainError(
                f"s={s!r} gives y0 = tanh(s)/2 too close to 1/2 (maximal squeezing is unphysical)"
            )

    @property
    def r2(self) -> float:
        """Reflectance squared, 1 - t^2."""
        return (1.0 - self.t) * (1.0 + self.t)

    @property
    def r(self) -> float:
        return math.sqrt(self.r2)

    @property
    def y0(self) -> float:
        return math.tanh(self.s) / 2.0

    @property
    def y1(self) -> float:
        return self.t * self.t * self.y0

    @property
    def gap0(self) -> float:
        """1 - 2 y0 = 1 - tanh(s), free of cancellation."""
        return 2.0 / (math.exp(2.0 * self.s) + 1.0)

    @property
    def gap1(self) -> float:
        """1 - 2 y1 = r^2 + t^2 (1 - tanh s), free of cancellation."""
        return self.r2 + self.t * self.t * self.gap0

    def ladder(self, order: int = DEFAULT_ORDER) -> ZLadder:
        """Derivatives of Z at y1 up to at least ``order`` (cached)."""
        return ladder_for(self.y1, self.gap1, order)


def ladder_for(y: float, gap: float, order: int) -> ZLadder:
    # Round capacity up so one cached ladder serves a whole range of n.
    capacity = max(DEFAULT_ORDER, -(-int(order) // DEFAULT_ORDER) * DEFAULT_ORDER)
    return _cached_ladder(y, gap, capacity)


@functools.lru_cache(maxsize=512)
def _cached_ladder(y: float, gap: float, capacity: int) -> ZLadder:
    return z_ladder(y, capacity, gap=gap)


@dataclass(frozen=True, eq=False)
class FockVector:
    """Real amplitudes of a single-mode state supported on one parity.

    ``amps[k]`` is the coefficient of |2k> (even) or |2k+1> (odd).
    ``tail_bound`` certifies the probability discarded by truncation.
    """

    parity: str
    herald_n: int
    amps: np.ndarray
    trunc_N: int
    tail_bound: float

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        amps = np.array(self.amps, dtype=float)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def offset(self) -> int:
        return 0 if self.parity == "even" else 1

    @property
    def fock_numbers(self) -> np.ndarray:
        return 2 * np.arange(len(self.amps)) + self.offset

    @property
    def norm_sq(self) -> float:
        return math.fsum(self.amps**2)

    def dense(self, size: int | None = None) -> np.ndarray:
        """Amplitudes over all Fock numbers 0..size-1 (zeros on the other parity)."""
        size = self.trunc_N + 1 if size is None else size
        out = np.zeros(size)
        f = self.fock_numbers
        keep = f < size
        out[f[keep]] = self.amps[keep]
        return out

    def overlap_with_fock(self, number: int) -> float:
        """|<number|psi>|^2."""
        if (number - self.offset) % 2 or number > self.trunc_N:
            return 0.0
        return float(self.amps[(number - self.offset) // 2] ** 2)


# --- truncation ---------------------------------------------------------------

def _certify(log_weight: Callable[[np.ndarray], np.ndarray], y: float, eps: float) -> tuple[int, float]:
    """Smallest K with a geometric tail bound <= eps for weights exp(log_weight(k)).

    Relies on the consecutive-weight ratio being nonincreasing once it has
    dropped below rho (it tends to 4y^2 from above), or staying below 4y^2
    throughout; both hold for every member of the family.
    """
    if not (0.0 < eps < 1.0):
        raise DomainError(f"tolerance must lie in (0, 1), got {eps!r}")
    rho = max(4.0 * y * y, 0.9 * 4.0 * y * y + 0.1)
    log_factor = math.log(rho) - math.log1p(-rho)
    log_rho, log_eps = math.log(rho), math.log(eps)
    chunk, start = 256, 0
    while start < _MAX_INDEX:
        k = np.arange(start, start + chunk + 1)
        lw = log_weight(k)
        ratio = np.diff(lw)
        ok = (ratio <= log_rho) & (lw[:-1] + log_factor <= log_eps)
        hits = np.flatnonzero(ok)
        if hits.size:
            K = int(start + hits[0])
            return K, math.exp(lw[hits[0]] + log_factor)
        start += chunk
    raise ConvergenceError(f"cannot certify a tail below {eps!r} within index {_MAX_INDEX}")


def _heralded_log_weights(params: ModelParams, n: int, ladder: ZLadder):
    """Normalised squared amplitudes (log) of the n-heralded state."""
    y = params.y1
    p, m = n % 2, n // 2
    log_y = math.log(y)
    log_norm = ladder.log(n)

    def log_weight(k):
        k = np.asarray(k, dtype=np.int64)
        q = k + m + p
        return (
            (2 * k + p) * log_y
            + 2.0 * (log_factorials(2 * q) - log_factorials(q))
            - log_factorials(2 * k + p)
            - log_norm
        )

    return log_weight


def truncation_cutoff(params: ModelParams, n: int, eps: float) -> int:
    """Highest kept index K such that the certified discarded probability is <= eps."""
    n = _check_n(n)
    ladder = params.ladder(n)
    K, _ = _certify(_heralded_log_weights(params, n, ladder), params.y1, eps)
    return K


def heralded_amplitudes(params: ModelParams, n: int, cutoff: float = 1e-16) -> FockVector:
    """State left in the transmitted mode after ``n`` photons are detected.

    Even n = 2m:
        c_k ~ y1^k (2(k+m))! / ((k+m)! sqrt((2k)!)),        norm Z^(2m)(y1)
    odd n = 2m + 1:
        c_k ~ y1^k (2(k+m+1))! / ((k+m+1)! sqrt((2k+1)!)),  norm Z^(2m+1)(y1) / y1

    on Fock numbers 2k or 2k+1 respectively.
    """
    n = _check_n(n)
    ladder = params.ladder(n)
    log_weight = _heralded_log_weights(params, n, ladder)
    K, bound = _certify(log_weight, params.y1, cutoff)
    amps = np.exp(0.5 * log_weight(np.arange(K + 1)))
    p = n % 2
    return FockVector(
        parity="odd" if p else "even",
        herald_n=n,
        amps=amps,
        trunc_N=2 * K + p,
        tail_bound=bound,
    )


def smsv_amplitudes(s: float, cutoff: float = 1e-16) -> FockVector:
    """Squeezed vacuum: c_k = y0^k sqrt((2k)!) / (k! sqrt(cosh s)) on |2k>.

    Normalised by cosh s directly, not through the Z ladder.
    """
    if not (math.isfinite(s) and s > 0):
        raise DomainError(f"squeezing amplitude must satisfy s > 0, got s={s!r}")
    y0 = ModelParams(s, 1.0).y0
    log_y, lc = math.log(y0), log_cosh(s)

    def log_weight(k):
        k = np.asarray(k, dtype=np.int64)
        return 2 * k * log_y + log_factorials(2 * k) - 2.0 * log_factorials(k) - lc

    K, bound = _certify(log_weight, y0, cutoff)
    amps = np.exp(0.5 * log_weight(np.arange(K + 1)))
    return FockVector("even", 0, amps, 2 * K, bound)


def _check_n(n) -> int:
    if int(n) != n or n < 0:
        raise DomainError(f"detected photon number must be an integer >= 0, got {n!r}")
    return int(n)
