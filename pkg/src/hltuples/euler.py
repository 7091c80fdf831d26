"""
Tail corrections for convergent Euler products.

For a product over primes whose log-factor expands as
``sum_j c_j p**-j`` with ``c_1 == 0``, the omitted part beyond a
truncation point P is ``sum_j c_j T_j(P)`` where
``T_j(P) = sum_{p > P} p**-j``. ``T_j`` is obtained exactly as the prime
zeta value minus the sieved partial sum, so the only approximations left
are the finite expansion order and floating-point rounding, both bounded.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np

from .primes import primes_up_to

EPS = sys.float_info.epsilon


@lru_cache(maxsize=64)
def prime_zeta(s: int) -> float:
    """Sum of p**-s over all primes, s >= 2."""
    with mpmath.workdps(30):
        return float(mpmath.primezeta(s))


@lru_cache(maxsize=256)
def prime_power_tail(s: int, P: int) -> float:
    """``sum_{p > P} p**-s`` for integer s >= 2."""
    ps = primes_up_to(P).astype(np.float64)
    partial = math.fsum(ps ** (-float(s)))
    return max(prime_zeta(s) - partial, 0.0)


def _tail_majorant(s: int, P: int) -> float:
    # primes beyond P are odd: sum over odd n > P of n**-s
    return P ** (-float(s)) + P ** (1.0 - s) / (2.0 * (s - 1))


@dataclass(frozen=True)
class TailCorrection:
    log_correction: float
    bound: float  # absolute bound on the error of log_correction

    @property
    def low(self) -> float:
        return self.log_correction - self.bound

    @property
    def high(self) -> float:
        return self.log_correction + self.bound


def log_tail(coeffs: Sequence[float], P: int, radius: float) -> TailCorrection:
    """
    Tail of ``sum_{p > P} sum_j c_j p**-j``.

    ``coeffs[j-1]`` holds ``c_j``; ``radius`` must satisfy ``|c_j| <= radius**j``
    for every j beyond the supplied ones, and ``radius < P/2``.
    """
    if abs(coeffs[0]) > 1e-12:
        raise ValueError("first-order coefficient must vanish for convergence")
    if not 2 * radius < P:
        raise ValueError("truncation point too small for the expansion")
    order = len(coeffs)
    terms = []
    rounding = 0.0
    for j in range(2, order + 1):
        c = float(coeffs[j - 1])
        terms.append(c * prime_power_tail(j, P))
        rounding += abs(c) * 4 * EPS * prime_zeta(j)
    x = radius / P
    remainder = x ** (order + 1) / (1 - x) * (1 + P / (2.0 * order))
    return TailCorrection(math.fsum(terms), rounding + remainder)


def log_series(g: Sequence[Fraction], order: int) -> list[Fraction]:
    """
    Coefficients ``L_1..L_order`` of ``log(1 + g(u))`` where
    ``g(u) = sum_{j>=1} g[j-1] u**j``.
    """
    g = list(g) + [Fraction(0)] * max(0, order - len(g))
    L: list[Fraction] = []
    for n in range(1, order + 1):
        acc = n * g[n - 1]
        for m in range(1, n):
            acc -= m * L[m - 1] * g[n - m - 1]
        L.append(acc / n)
    return L


def estimate_radius(coeffs: Sequence[Fraction], start: int, margin: float = 1.5) -> float:
    """Growth rate ``max |c_j|**(1/j)`` over ``j > start``, inflated by ``margin``."""
    r = 1.0
    for j in range(start + 1, len(coeffs) + 1):
        c = abs(float(coeffs[j - 1]))
        if c > 0:
            r = max(r, c ** (1.0 / j))
    return margin * r


def compensated_log_sum(vals: np.ndarray, scale: np.ndarray | None = None) -> tuple[float, float]:
    """
    Exactly rounded sum of per-prime log-factors and a bound on its error.

    ``scale`` gives the magnitude of the parts each term was formed from
    (terms are usually differences of nearly equal logs); defaults to ``|vals|``.
    """
    total = math.fsum(vals.tolist())
    mags = np.abs(vals) if scale is None else scale
    return total, 4 * EPS * float(mags.sum()) + EPS * abs(total)


@dataclass(frozen=True)
class SeriesEstimate:
    """Partial sum of a prime series with a bracket on the omitted tail."""

    label: str
    P: int
    partial: float
    tail_low: float
    tail_high: float

    @property
    def low(self) -> float:
        return self.partial + self.tail_low

    @property
    def high(self) -> float:
        return self.partial + self.tail_high
