"""
Hardy-Littlewood constants and the three tuple-count models.

``singular_series`` evaluates the Euler product over p <= P in log space
and adds an exact tail for p > P (every such prime sees k distinct
residues once P >= diameter). ``twin_constant_for`` is the closed form
for two-element patterns.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import DomainError, InadmissibleError
from .euler import EPS, compensated_log_sum, log_tail
from .patterns import Pattern, covering_prime, exceptional_primes
from .primes import odd_prime_divisors, primes_up_to

#: twin prime constant, stored reference value
C2 = 0.66016181584686957
C2_REL_PRECISION = 1e-17 / C2

DEFAULT_TRUNCATION = 10**6
TAIL_ORDER = 4


@dataclass(frozen=True)
class SingularSeriesValue:
    value: float
    truncation_prime: int
    tail_bound: float  # relative
    method: str  # "generic_product" or "k2_closed_form"
    admissible: bool = True

    def __float__(self) -> float:
        return self.value


def _next_prime_above(n: int) -> int:
    m = n + 1
    while True:
        if all(m % p for p in range(2, math.isqrt(m) + 1)) and m > 1:
            return m
        m += 1


def default_truncation(pattern: Pattern) -> int:
    return max(DEFAULT_TRUNCATION, _next_prime_above(pattern.diameter))


def local_log_factor(nu: int, k: int, p: float) -> float:
    """log of (1 - nu/p)(1 - 1/p)**-k."""
    return math.log1p(-nu / p) - k * math.log1p(-1.0 / p)


@lru_cache(maxsize=256)
def _generic_sum(k: int, P: int) -> tuple[float, float]:
    # sum over primes k < p <= P of the factor with nu_p = k
    ps = primes_up_to(P)
    ps = ps[ps > k].astype(np.float64)
    a = np.log1p(-k / ps)
    b = k * np.log1p(-1.0 / ps)
    return compensated_log_sum(a - b, np.abs(a) + np.abs(b))


def singular_tail(k: int, P: int):
    """Log-tail for p > P of a k-element pattern; c_j = (k - k**j)/j."""
    coeffs = [(k - k**j) / j for j in range(1, TAIL_ORDER + 1)]
    return log_tail(coeffs, P, radius=float(max(k, 1)))


def log_singular_series(offsets, P: int) -> tuple[float, float]:
    """
    Log of the truncated-plus-tail product for raw (unshifted) offsets and
    its absolute error bound. Caller guarantees admissibility and P >= diameter.
    """
    offs = tuple(sorted(offsets))
    k = len(offs)
    base, err = _generic_sum(k, P)
    parts = [base]
    for p, v in exceptional_primes(offs).items():
        if p > P:
            continue
        parts.append(local_log_factor(v, k, p))
        if p > k:
            parts.append(-local_log_factor(k, k, p))
        err += 8 * EPS * (k + 1) / p
    tail = singular_tail(k, P) if k > 1 else None
    if tail is not None:
        parts.append(tail.log_correction)
        err += tail.bound
    return math.fsum(parts), err


def singular_series(pattern: Pattern, truncation_prime: int | None = None, strict: bool = True) -> SingularSeriesValue:
    """
    Hardy-Littlewood constant of an admissible pattern.

    Parameters
    ----------
    pattern : Pattern
    truncation_prime : int, optional
        Explicit product runs over p <= truncation_prime; must be at least
        the diameter. Defaults to ``max(10**6, next prime > diameter)``.
    strict : bool
        When False an inadmissible pattern returns value 0 with
        ``admissible=False`` instead of raising.
    """
    P = default_truncation(pattern) if truncation_prime is None else int(truncation_prime)
    if P < pattern.diameter:
        raise DomainError(f"truncation {P} below pattern diameter {pattern.diameter}")
    bad = covering_prime(pattern)
    if bad is not None:
        if strict:
            raise InadmissibleError(pattern, bad)
        return SingularSeriesValue(0.0, P, 0.0, "generic_product", admissible=False)
    logv, err = log_singular_series(pattern.offsets, P)
    return SingularSeriesValue(math.exp(logv), P, math.expm1(err), "generic_product")


def twin_factor(d: int) -> Fraction:
    """Exact product of (p-1)/(p-2) over odd primes dividing d."""
    out = Fraction(1)
    for p in odd_prime_divisors(d):
        out *= Fraction(p - 1, p - 2)
    return out


def twin_constant_for(d: int) -> SingularSeriesValue:
    """Closed form 2*C2*prod_{p | d, p > 2} (p-1)/(p-2) for the pattern {0, d}."""
    if d < 2 or d % 2:
        raise DomainError(f"pattern (0, {d}) needs even d >= 2")
    f = twin_factor(d)
    value = 2 * C2 * f.numerator / f.denominator
    return SingularSeriesValue(value, 0, C2_REL_PRECISION + 2 * EPS, "k2_closed_form")


@dataclass(frozen=True)
class TwinConstant:
    c2: float
    direct: float
    truncation_prime: int
    tail_bound: float
    verified_digits: int


def verify_twin_constant(P: int = 10**7) -> TwinConstant:
    """Direct product of 1 - 1/(p-1)**2 over 2 < p <= P with exact tail."""
    ps = primes_up_to(P)[1:].astype(np.float64)
    a = np.log1p(-2.0 / ps)
    b = 2.0 * np.log1p(-1.0 / ps)
    total, err = compensated_log_sum(a - b, np.abs(a) + np.abs(b))
    tail = log_tail([(2 - 2**j) / j for j in range(1, TAIL_ORDER + 1)], P, radius=2.0)
    direct = math.exp(total + tail.log_correction)
    rel = abs(direct - C2) / C2
    digits = int(math.floor(-math.log10(rel))) if rel > 0 else 17
    return TwinConstant(C2, direct, P, math.expm1(err + tail.bound), digits)


def _check_x(x: float) -> None:
    if not x > math.e:
        raise DomainError("predictions need x > e")


def cramer_prediction(x: float, k: int) -> float:
    _check_x(x)
    return x / math.log(x) ** k


def parity_prediction(x: float, k: int) -> float:
    _check_x(x)
    return 2 ** (k - 1) * x / math.log(x) ** k


def log_integral_k(x: float, k: int) -> float:
    """Integral of dt / (ln t)**k from 2 to x (substituting t = e**u)."""
    if x <= 2:
        return 0.0
    a, b = math.log(2.0), math.log(x)
    # integrand rises steeply; split into unit-width pieces in u
    edges = list(np.arange(a, b, 1.0)) + [b]
    pieces = []
    for lo, hi in zip(edges, edges[1:]):
        val, _ = integrate.quad(lambda u: math.exp(u - k * math.log(u)), lo, hi, epsabs=0.0, epsrel=1e-12, limit=200)
        pieces.append(val)
    return math.fsum(pieces)


def hl_prediction(x: float, pattern: Pattern, form: str = "ratio", constant: float | None = None) -> float:
    """
    Hardy-Littlewood count estimate for tuples with start <= x.

    ``form="ratio"`` uses x/(ln x)**k, ``form="integral"`` the integral from 2
    to x of dt/(ln t)**k.
    """
    if x < 3:
        raise DomainError("hl_prediction needs x >= 3")
    S = singular_series(pattern).value if constant is None else constant
    k = pattern.k
    if form == "ratio":
        return S * x / math.log(x) ** k
    if form == "integral":
        return S * log_integral_k(x, k)
    raise DomainError(f"unknown form {form!r}")
