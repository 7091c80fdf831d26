"""
The multiplicative function h(n) = prod_{p | n, p > 2} (p-1)/(p-2).

Single values are exact ``Fraction`` objects. Bulk scans over n <= N run
segment by segment: each segment is factored by sieving with primes up to
sqrt(N), which leaves a cofactor that is 1 or a single large prime.
Numerators and denominators stay exact in int64 (both are at most n).
"""
from __future__ import annotations

import csv
import json
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any

import numpy as np

from .errors import CapacityError, DomainError
from .euler import (
    SeriesEstimate,
    compensated_log_sum,
    estimate_radius,
    log_series,
    log_tail,
    prime_power_tail,
)
from .primes import odd_prime_divisors, primes_up_to, small_primes
from .singular import C2, TAIL_ORDER

SCAN_CEILING = 10**8
SCAN_SEGMENT = 1 << 20
MAX_MOMENT = 8
DEFAULT_P = 10**6
MERTENS_COEFFICIENT = math.exp(np.euler_gamma) / (2 * C2)


def h(n: int) -> Fraction:
    """Exact h(n); h(1) = h(2**k) = 1."""
    if n < 1:
        raise DomainError("h is defined for n >= 1")
    out = Fraction(1)
    for p in odd_prime_divisors(n):
        out *= Fraction(p - 1, p - 2)
    return out


def odd_part(d: int) -> int:
    while d and d % 2 == 0:
        d //= 2
    return d


def f(d: int) -> float:
    """f(d) = 2*C2*h(d), the twin-type constant C(0, d) for even d."""
    if d < 2 or d % 2:
        raise DomainError("f is defined on even d >= 2")
    v = h(odd_part(d))
    return 2 * C2 * v.numerator / v.denominator


# ---------------------------------------------------------------- bulk scans


def h_segment(lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced numerators and denominators of h(n) for lo <= n < hi (lo >= 1)."""
    n = np.arange(lo, hi, dtype=np.int64)
    rem = n.copy()
    num = np.ones_like(n)
    den = np.ones_like(n)
    last = hi - 1
    q = 2
    while q <= last:
        rem[(-lo) % q :: q] //= 2
        q *= 2
    for p in small_primes(math.isqrt(last)).tolist()[1:]:
        first = (-lo) % p
        num[first::p] *= p - 1
        den[first::p] *= p - 2
        q = p
        while q <= last:
            rem[(-lo) % q :: q] //= p
            q *= p
    big = rem > 1
    num[big] *= rem[big] - 1
    den[big] *= rem[big] - 2
    g = np.gcd(num, den)
    return num // g, den // g


def _segments(N: int, size: int = SCAN_SEGMENT) -> list[tuple[int, int]]:
    return [(lo, min(lo + size, N + 1)) for lo in range(1, N + 1, size)]


def scan(N: int, reducer: Callable[[int, np.ndarray, np.ndarray], Any], threads: int = 1) -> list:
    """
    Apply ``reducer(lo, num, den)`` to every segment of [1, N] and return
    the results in segment order. Boundaries are fixed, so results do not
    depend on ``threads``.
    """
    if N > SCAN_CEILING:
        raise CapacityError(f"scan limit {N} exceeds {SCAN_CEILING}")
    segs = _segments(N)

    def work(seg):
        lo, hi = seg
        num, den = h_segment(lo, hi)
        return reducer(lo, num, den)

    if threads <= 1:
        return [work(s) for s in segs]
    with ThreadPoolExecutor(threads) as pool:
        return list(pool.map(work, segs))


def h_values(N: int) -> tuple[np.ndarray, np.ndarray]:
    """Numerators and denominators of h(1..N) as arrays."""
    if N < 1:
        return np.array([], np.int64), np.array([], np.int64)
    return h_segment(1, N + 1)


# ---------------------------------------------------------- theoretical side


def wintner_mean(P: int = DEFAULT_P, tail: bool = True) -> float:
    """
    prod_{p > 2} (1 + 1/(p(p-2))), which equals 1/C2.

    With ``tail=False`` the plain partial product over 2 < p <= P is returned.
    """
    ps = primes_up_to(P)[1:].astype(np.float64)
    total, _ = compensated_log_sum(np.log1p(1.0 / (ps * (ps - 2))))
    if not tail:
        return math.exp(total)
    if P <= 4:
        raise DomainError("tail correction needs P > 4")
    tail = log_tail([(2**j - 2) / j for j in range(1, TAIL_ORDER + 1)], P, radius=2.0)
    return math.exp(total + tail.log_correction)


@lru_cache(maxsize=16)
def _moment_coefficients(k: int, order: int = 40) -> list[Fraction]:
    # local factor as a series in u = 1/p: 1 - u + u (1-u)**k (1-2u)**-k
    a = [Fraction(math.comb(k, j) * (-1) ** j) for j in range(order + 1)]
    b = [Fraction(math.comb(k + j - 1, j) * 2**j) for j in range(order + 1)]
    ab = [sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(order + 1)]
    g = [Fraction(0)] * order
    g[0] = Fraction(-1) + ab[0]
    for j in range(2, order + 1):
        g[j - 1] = ab[j - 1]
    return log_series(g, order)


def moment_product(k: int, P: int = DEFAULT_P) -> float:
    """
    Mean of h(n)**k as the Euler product with factor 1 at p = 2 and
    1 - 1/p + ((p-1)/(p-2))**k / p at odd p.
    """
    if k < 0:
        raise DomainError("moment order must be non-negative")
    if k == 0:
        return 1.0
    if k > MAX_MOMENT:
        raise DomainError(f"moment order above {MAX_MOMENT} is not supported")
    ps = primes_up_to(P)[1:].astype(np.float64)
    growth = np.expm1(k * np.log1p(1.0 / (ps - 2)))
    total, _ = compensated_log_sum(np.log1p(growth / ps))
    coeffs = _moment_coefficients(k)
    tail = log_tail([float(c) for c in coeffs[:TAIL_ORDER]], P, estimate_radius(coeffs, TAIL_ORDER))
    return math.exp(total + tail.log_correction)


def mean_f() -> float:
    return 2 * C2 * moment_product(1)


def variance_h() -> float:
    return moment_product(2) - moment_product(1) ** 2


def variance_f() -> float:
    return 4 * C2**2 * moment_product(2) - (2 * C2 * moment_product(1)) ** 2


@dataclass(frozen=True)
class MomentReport:
    k: int
    theoretical: float
    empirical: float
    N: int
    gap: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def empirical_moment(k: int, N: int, threads: int = 1) -> MomentReport:
    """(1/N) sum_{n <= N} h(n)**k alongside the Euler-product value."""
    if N < 1:
        raise DomainError("N must be positive")
    parts = scan(N, lambda lo, num, den: float(np.sum((num / den) ** k)), threads)
    emp = math.fsum(parts) / N
    theo = moment_product(k)
    return MomentReport(k, theo, emp, N, (emp - theo) / theo)


# ------------------------------------------------------------ extreme values


@dataclass(frozen=True)
class MaxScan:
    x: int
    argmax: int
    value: Fraction
    ratio_lnlnx: float | None  # max / ln ln x
    claimed_coefficient: float = 2.0
    mertens_coefficient: float = MERTENS_COEFFICIENT


def _segment_max(lo: int, num: np.ndarray, den: np.ndarray) -> tuple[int, Fraction]:
    vals = num / den
    top = vals.max()
    cand = np.flatnonzero(vals >= top * (1 - 1e-9))
    best_i, best = None, None
    for i in cand.tolist():
        v = Fraction(int(num[i]), int(den[i]))
        if best is None or v > best:
            best_i, best = i, v
    return lo + best_i, best


def max_scan(x: int, threads: int = 1) -> MaxScan:
    """Exhaustive maximum of h over n <= x; the smallest maximiser wins ties."""
    if x < 3:
        return MaxScan(max(x, 1), 1, Fraction(1), None)
    best_n, best = None, None
    for n, v in scan(x, _segment_max, threads):
        if best is None or v > best:
            best_n, best = n, v
    lnln = math.log(math.log(x))
    ratio = float(best) / lnln if lnln > 0 else None
    return MaxScan(x, best_n, best, ratio)


# ------------------------------------------------------ limiting distribution


def _ew(label: str, P: int, partial: float, lo: float, hi: float) -> SeriesEstimate:
    return SeriesEstimate(label, P, partial, lo, hi)


def erdos_wintner_series(P: int = DEFAULT_P) -> tuple[SeriesEstimate, SeriesEstimate, SeriesEstimate]:
    """
    The three Erdos-Wintner series for ln h(p) = ln((p-1)/(p-2)), truncated at P.

    No prime has |ln h(p)| > 1 (the largest is ln 2 at p = 3), so the first
    series is empty. Tails use ln(1+x) between x/(1+x) and x with x = 1/(p-2).
    """
    if P < 3:
        raise DomainError("P must be at least 3")
    ps = primes_up_to(P)[1:].astype(np.float64)
    fp = np.log1p(1.0 / (ps - 2))
    if np.any(np.abs(fp) > 1):
        raise AssertionError("unexpected |f(p)| > 1")
    s2 = math.fsum((fp / ps).tolist())
    s3 = math.fsum((fp * fp / ps).tolist())
    m = P + 1 if P % 2 == 0 else P + 2  # smallest odd number beyond P
    t2_hi = 1.0 / (2.0 * (m - 2))
    t3_hi = (m - 2.0) ** -3 + 1.0 / (4.0 * (m - 2.0) ** 2)
    return (
        _ew("EW1", P, 0.0, 0.0, 0.0),
        _ew("EW2", P, s2, prime_power_tail(2, P), t2_hi),
        _ew("EW3", P, s3, prime_power_tail(3, P), t3_hi),
    )


def _complex_log1p(re: np.ndarray, im: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return 0.5 * np.log1p(2 * re + re * re + im * im), np.arctan2(im, 1 + re)


def char_function(t: float, P: int = DEFAULT_P) -> complex:
    """
    Limiting characteristic function of ln h(n):
    prod_p (1 - 1/p)(1 + sum_j p**-j exp(i t ln h(p**j))).

    Since h(p**j) = h(p), each odd factor collapses to 1 + (e**(i t ln h(p)) - 1)/p;
    the p = 2 factor is 1.
    """
    if t == 0:
        return complex(1.0, 0.0)
    ps = primes_up_to(P)[1:].astype(np.float64)
    theta = t * np.log1p(1.0 / (ps - 2))
    re = -2.0 * np.sin(theta / 2) ** 2 / ps
    im = np.sin(theta) / ps
    lr, li = _complex_log1p(re, im)
    log_re = math.fsum(lr.tolist())
    log_im = math.fsum(li.tolist()) + t * prime_power_tail(2, P)
    return complex(math.exp(log_re) * math.cos(log_im), math.exp(log_re) * math.sin(log_im))


def empirical_char_function(t: float, N: int, threads: int = 1) -> complex:
    """(1/N) sum_{n <= N} exp(i t ln h(n))."""

    def red(lo, num, den):
        ang = t * (np.log(num) - np.log(den))
        return float(np.sum(np.cos(ang))), float(np.sum(np.sin(ang)))

    parts = scan(N, red, threads)
    return complex(math.fsum(p[0] for p in parts) / N, math.fsum(p[1] for p in parts) / N)


@dataclass(frozen=True)
class DistributionSnapshot:
    """Exact frequency table of h(n), n <= N, sorted by value."""

    N: int
    numerators: np.ndarray
    denominators: np.ndarray
    frequencies: np.ndarray

    @property
    def values(self) -> np.ndarray:
        return self.numerators / self.denominators

    def support(self) -> list[tuple[Fraction, int]]:
        return [
            (Fraction(int(a), int(b)), int(c))
            for a, b, c in zip(self.numerators, self.denominators, self.frequencies)
        ]

    def cdf(self, t: float) -> float:
        i = np.searchsorted(self.values, t, side="right")
        return float(self.frequencies[:i].sum()) / self.N

    def mean(self) -> float:
        return math.fsum((self.values * self.frequencies).tolist()) / self.N

    def median(self) -> Fraction:
        cum = np.cumsum(self.frequencies)
        i = int(np.searchsorted(cum, (self.N + 1) // 2))
        return Fraction(int(self.numerators[i]), int(self.denominators[i]))

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["numerator", "denominator", "frequency"])
            for a, b, c in zip(self.numerators, self.denominators, self.frequencies):
                w.writerow([int(a), int(b), int(c)])


def _pack(num, den):
    return (num << 31) | den


def distribution_snapshot(N: int, threads: int = 1) -> DistributionSnapshot:
    if N > 10**7:
        raise CapacityError("distribution snapshots are limited to N <= 10**7")

    def red(lo, num, den):
        return np.unique(_pack(num, den), return_counts=True)

    parts = scan(N, red, threads)
    keys = np.concatenate([p[0] for p in parts])
    counts = np.concatenate([p[1] for p in parts])
    uk, inv = np.unique(keys, return_inverse=True)
    freq = np.bincount(inv, weights=counts).astype(np.int64)
    num = uk >> 31
    den = uk & ((1 << 31) - 1)
    order = np.lexsort((den, num / den))
    return DistributionSnapshot(N, num[order], den[order], freq[order])


def ks_distance(a: DistributionSnapshot, b: DistributionSnapshot) -> float:
    """Sup-distance between the empirical CDFs of two snapshots."""
    grid = np.union1d(a.values, b.values)

    def F(s):
        cum = np.concatenate([[0], np.cumsum(s.frequencies)]) / s.N
        return cum[np.searchsorted(s.values, grid, side="right")]

    return float(np.max(np.abs(F(a) - F(b))))
