"""Extended-range arithmetic and the derivative ladder of Z(y) = (1 - 4y^2)^(-1/2).

Every normalisation constant and moment of the heralded states is a ratio of
high-order derivatives of Z.  Those derivatives grow factorially (Z^(103) at
y ~ 0.48 is far beyond 1e308), so they are carried as (sign, log|x|) pairs.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import CapacityError, ConvergenceError, DomainError

__all__ = [
    "SignedLog",
    "ZLadder",
    "Y_MAX",
    "log_factorial",
    "log_factorials",
    "z_ladder",
    "z_derivative_series",
    "yz_derivative",
    "DEFAULT_ORDER",
]

#: Largest admissible series parameter; Z and all its derivatives diverge at 1/2.
Y_MAX = 0.5 - 1e-9

#: Default ladder capacity: n = 100 plus the +3 derivative offset of the moments.
DEFAULT_ORDER = 128

# Opposite-sign operands closer than this in log magnitude cancel to exact zero.
_CANCEL_TOL = 1e-15


@dataclass(frozen=True)
class SignedLog:
    """A real number stored as ``sign * exp(log_mag)``.

    ``sign`` is -1, 0 or +1.  Zero is canonicalised to ``log_mag = -inf`` so
    structural equality works.
    """

    sign: int
    log_mag: float = -math.inf

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0 and self.log_mag != -math.inf:
            object.__setattr__(self, "log_mag", -math.inf)
        if self.sign != 0 and math.isnan(self.log_mag):
            raise ValueError("log_mag is NaN")

    @classmethod
    def zero(cls) -> "SignedLog":
        return cls(0)

    @classmethod
    def from_real(cls, x: float) -> "SignedLog":
        if x == 0:
            return cls(0)
        if not math.isfinite(x):
            raise ValueError(f"cannot represent {x!r}")
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, log_mag: float, sign: int = 1) -> "SignedLog":
        if log_mag == -math.inf:
            return cls(0)
        return cls(sign, log_mag)

    def to_real(self) -> float:
        """Convert back to a float; raises OverflowError beyond the float range."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_mag)

    __float__ = to_real

    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    def __neg__(self) -> "SignedLog":
        return SignedLog(-self.sign, self.log_mag)

    def __abs__(self) -> "SignedLog":
        return SignedLog(abs(self.sign), self.log_mag)

    def __mul__(self, other) -> "SignedLog":
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return SignedLog(0)
        return SignedLog(self.sign * other.sign, self.log_mag + other.log_mag)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SignedLog":
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("SignedLog division by zero")
        if self.sign == 0:
            return SignedLog(0)
        return SignedLog(self.sign * other.sign, self.log_mag - other.log_mag)

    def __rtruediv__(self, other) -> "SignedLog":
        return _coerce(other) / self

    def __add__(self, other) -> "SignedLog":
        other = _coerce(other)
        if other.sign == 0:
            return self
        if self.sign == 0:
            return other
        big, small = (self, other) if self.log_mag >= other.log_mag else (other, self)
        gap = small.log_mag - big.log_mag
        if big.sign == small.sign:
            return SignedLog(big.sign, big.log_mag + math.log1p(math.exp(gap)))
        if -gap <= _CANCEL_TOL:
            return SignedLog(0)
        return SignedLog(big.sign, big.log_mag + math.log1p(-math.exp(gap)))

    __radd__ = __add__

    def __sub__(self, other) -> "SignedLog":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "SignedLog":
        return _coerce(other) - self

    def __pow__(self, p: float) -> "SignedLog":
        if self.sign == 0:
            if p <= 0:
                raise ZeroDivisionError("zero to a non-positive power")
            return SignedLog(0)
        if self.sign < 0 and p != int(p):
            raise ValueError("fractional power of a negative number")
        sign = -1 if (self.sign < 0 and int(p) % 2) else 1
        return SignedLog(sign, self.log_mag * p)

    def sqrt(self) -> "SignedLog":
        if self.sign < 0:
            raise ValueError("square root of a negative number")
        return self ** 0.5


def _coerce(x) -> SignedLog:
    if isinstance(x, SignedLog):
        return x
    return SignedLog.from_real(float(x))


# --- factorials ---------------------------------------------------------------

class _LogFactorialTable:
    """Prefix table of ln(k!) grown by compensated cumulative summation.

    Readers always see a consistent prefix: the table is replaced, never
    mutated in place, and growth is serialised by a lock.
    """

    def __init__(self, size: int = 512):
        self._lock = threading.Lock()
        self._table = np.zeros(1)
        self._total = 0.0
        self._comp = 0.0
        self._extend(size)

    def _extend(self, size: int) -> None:
        with self._lock:
            old = self._table
            if size < len(old):
                return
            new_size = max(size + 1, 2 * len(old))
            out = np.empty(new_size)
            out[: len(old)] = old
            total = self._total
            comp = self._comp
            for k in range(len(old), new_size):
                # Neumaier summation keeps relative error near one ulp.
                term = math.log(k)
                t = total + term
                if abs(total) >= abs(term):
                    comp += (total - t) + term
                else:
                    comp += (term - t) + total
                total = t
                out[k] = total + comp
            self._total = total
            self._comp = comp
            self._table = out

    def get(self, n: int) -> float:
        table = self._table
        if n >= len(table):
            self._extend(n)
            table = self._table
        return float(table[n])

    def array(self, upto: int) -> np.ndarray:
        if upto >= len(self._table):
            self._extend(upto)
        return self._table[: upto + 1]


_FACTORIALS = _LogFactorialTable()


def log_factorial(n: int) -> float:
    """Return ln(n!) for a nonnegative integer ``n``."""
    n = int(n)
    if n < 0:
        raise DomainError(f"log_factorial needs n >= 0, got {n}")
    return _FACTORIALS.get(n)


def log_factorials(n) -> np.ndarray:
    """Vectorised :func:`log_factorial` over an integer array."""
    n = np.asarray(n, dtype=np.int64)
    if n.size == 0:
        return np.zeros(n.shape)
    if n.min() < 0:
        raise DomainError("log_factorials needs nonnegative integers")
    return _FACTORIALS.array(int(n.max()))[n]


# --- the Z ladder -------------------------------------------------------------

def _check_y(y: float) -> float:
    y = float(y)
    if not (0.0 <= y <= Y_MAX):
        raise DomainError(
            f"series parameter y must lie in [0, 0.5) (at most {Y_MAX!r}), got {y!r}"
        )
    return y


def _log_one_minus_4y2(y: float, gap: Optional[float]) -> float:
    # 1 - 4y^2 = (1 - 2y)(1 + 2y); ``gap`` = 1 - 2y supplied exactly by callers
    # that know it avoids the cancellation in 1 - 2y near y = 1/2.
    if gap is None:
        gap = 1.0 - 2.0 * y
    return math.log(gap) + math.log(2.0 - gap)


@dataclass(frozen=True)
class ZLadder:
    """Derivatives ``Z^(0) .. Z^(order)`` of Z at a fixed ``y``."""

    y: float
    order: int
    values: tuple
    log_values: np.ndarray = field(repr=False, compare=False)

    def __getitem__(self, j: int) -> SignedLog:
        if j < 0 or j > self.order:
            raise CapacityError(f"derivative order {j} outside ladder 0..{self.order}")
        return self.values[j]

    def __len__(self) -> int:
        return self.order + 1

    def log(self, j: int) -> float:
        """ln Z^(j)(y); -inf for the exact zeros at y = 0."""
        self[j]
        return float(self.log_values[j])

    def ratio(self, i: int, j: int) -> float:
        """Z^(i) / Z^(j) formed in the log domain."""
        return (self[i] / self[j]).to_real()


def z_ladder(y: float, K: int = DEFAULT_ORDER, *, gap: Optional[float] = None) -> ZLadder:
    """Derivatives of Z(y) up to order ``K`` by a three-term recurrence.

    Differentiating ``(1 - 4y^2) Z' = 4 y Z`` n times gives

        Z^(n+1) = [(8n + 4) y Z^(n) + 4 n^2 Z^(n-1)] / (1 - 4y^2),

    seeded with Z = (1 - 4y^2)^(-1/2) and Z' = 4 y Z^3.  Both terms are
    nonnegative on [0, 1/2), so no cancellation occurs.

    ``gap``, when given, is ``1 - 2y`` computed without cancellation.
    """
    y = _check_y(y)
    K = int(K)
    if K < 0:
        raise DomainError(f"ladder order must be >= 0, got {K}")
    if gap is not None:
        if not (0.0 < gap <= 1.0) or abs((1.0 - 2.0 * y) - gap) > 1e-12:
            raise DomainError(f"gap {gap!r} inconsistent with y = {y!r}")
    log_d = _log_one_minus_4y2(y, gap)

    z0 = SignedLog(1, -0.5 * log_d)
    vals = [z0]
    if K >= 1:
        vals.append(SignedLog(0) if y == 0.0 else SignedLog(1, math.log(4.0 * y) + 3.0 * z0.log_mag))
    inv_d = SignedLog(1, -log_d)
    for n in range(1, K):
        a = vals[n] * ((8 * n + 4) * y)
        b = vals[n - 1] * (4.0 * n * n)
        vals.append((a + b) * inv_d)
    logs = np.array([v.log_mag for v in vals])
    logs.setflags(write=False)
    return ZLadder(y=y, order=K, values=tuple(vals), log_values=logs)


def z_derivative_series(y: float, j: int, tol: float = 1e-16, *, max_terms: int = 100_000) -> SignedLog:
    """j-th derivative of Z by term-wise differentiation of its Taylor series.

    Z(y) = sum_k C(2k, k) y^(2k), so

        Z^(j)(y) = sum_{k >= ceil(j/2)} C(2k, k) (2k)! / (2k - j)! y^(2k - j).

    Terms are accumulated in the log domain until the current term drops below
    ``tol`` times the running sum while the terms are decreasing.
    """
    y = _check_y(y)
    j = int(j)
    if j < 0:
        raise DomainError(f"derivative order must be >= 0, got {j}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    k0 = (j + 1) // 2
    if y == 0.0:
        if j % 2:
            return SignedLog(0)
        k = j // 2
        return SignedLog(1, float(gammaln(2 * k + 1)) + float(gammaln(2 * k + 1)) - 2 * float(gammaln(k + 1)))

    log_y = math.log(y)
    log_tol = math.log(tol)
    running = -math.inf
    chunk = 256
    start = k0
    while start - k0 < max_terms:
        k = np.arange(start, start + chunk, dtype=np.float64)
        p = 2.0 * k - j
        terms = (
            2.0 * gammaln(2.0 * k + 1.0)
            - 2.0 * gammaln(k + 1.0)
            - gammaln(p + 1.0)
            + p * log_y
        )
        running = float(np.logaddexp(running, logsumexp(terms)))
        # Terms are unimodal in k; once decreasing they stay decreasing.
        decreasing = terms[-1] <= terms[-2]
        if decreasing and terms[-1] - running < log_tol:
            return SignedLog(1, float(running))
        start += chunk
    raise ConvergenceError(
        f"Z^({j}) series at y={y!r} did not reach tol={tol!r} within {max_terms} terms"
    )


def yz_derivative(ladder: ZLadder, k: int) -> SignedLog:
    """k-th derivative of the product y Z(y): ``y Z^(k) + k Z^(k-1)``."""
    if k < 0:
        raise DomainError(f"derivative order must be >= 0, got {k}")
    if k > ladder.order:
        raise CapacityError(f"need Z^({k}) but ladder stops at order {ladder.order}")
    out = ladder[k] * ladder.y
    if k >= 1:
        out = out + ladder[k - 1] * k
    return out


def log_binomial_sqrt(m: int, js: Sequence[int]) -> np.ndarray:
    """ln sqrt(C(m, j)) for each j in ``js``."""
    js = np.asarray(js, dtype=np.int64)
    return 0.5 * (log_factorial(m) - log_factorials(js) - log_factorials(m - js))
