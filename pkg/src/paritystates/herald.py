"""Heralding probabilities for an ideal photon-number-resolving detector."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError
from .numerics import ZLadder, log_factorial
from .states import ModelParams, _check_n, log_cosh

__all__ = [
    "HeraldDistribution",
    "success_probability",
    "herald_distribution",
    "complete_distribution",
]

_PROB_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class HeraldDistribution:
    params: ModelParams
    probs: np.ndarray
    tail: float

    @property
    def n_max(self) -> int:
        return len(self.probs) - 1


def _log_probability(params: ModelParams, n: int, ladder: ZLadder) -> float:
    # ((1 - t^2)/t^2)^n y1^n = (r^2 y0)^n, which stays finite as t -> 0.
    if n and params.r2 == 0.0:
        return -math.inf
    return (
        -log_cosh(params.s)
        + n * (math.log(params.r2) + math.log(params.y0) if n else 0.0)
        - log_factorial(n)
        + ladder.log(n)
    )


def _clamp(p: float, n: int) -> float:
    if p < -_PROB_TOL or p > 1.0 + _PROB_TOL:
        raise ConsistencyError(f"P_{n} = {p!r} lies outside [0, 1] beyond rounding")
    return min(max(p, 0.0), 1.0)


def success_probability(params: ModelParams, n: int) -> float:
    """Probability of detecting exactly ``n`` reflected photons.

        P_n = (1 / cosh s) ((1 - t^2) / t^2)^n (y1^n / n!) Z^(n)(y1)
    """
    n = _check_n(n)
    return _clamp(math.exp(_log_probability(params, n, params.ladder(n))), n)


def herald_distribution(params: ModelParams, n_max: int) -> HeraldDistribution:
    """P_0 .. P_{n_max} and the missing mass 1 - sum."""
    n_max = _check_n(n_max)
    ladder = params.ladder(n_max)
    probs = np.array(
        [_clamp(math.exp(_log_probability(params, n, ladder)), n) for n in range(n_max + 1)]
    )
    tail = 1.0 - math.fsum(probs)
    if tail < -_PROB_TOL:
        raise ConsistencyError(f"probabilities sum to {1 - tail!r} > 1")
    return HeraldDistribution(params, probs, max(tail, 0.0))


def complete_distribution(
    params: ModelParams, target: float = 1e-8, n_start: int = 32, ceiling: int = 10_000
) -> HeraldDistribution:
    """Double n_max until the missing mass drops below ``target`` (or the ceiling is hit)."""
    n_max = n_start
    while True:
        dist = herald_distribution(params, n_max)
        if dist.tail < target or n_max >= ceiling:
            return dist
        n_max = min(2 * n_max, ceiling)
