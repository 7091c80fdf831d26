"""
Prime generation, factorization and small helpers.

The workhorse is an odd-only segmented sieve of Eratosthenes. Segments
have fixed boundaries, so the output is identical whatever the segment
size or thread count.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import CapacityError, DomainError

SIEVE_CEILING = 10**9
FACTOR_CEILING = 10**12
PRIMORIAL_CEILING = 2**63 - 1
DEFAULT_SEGMENT = 1 << 18  # odd slots per segment


@lru_cache(maxsize=8)
def small_primes(limit: int) -> np.ndarray:
    """Plain Eratosthenes for base primes; returns int64 array of primes <= limit."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    out = np.flatnonzero(flags).astype(np.int64)
    out.flags.writeable = False
    return out


def _base_for(hi: int) -> list[int]:
    # odd sieving primes with p*p < hi
    base = small_primes(math.isqrt(hi) + 1)
    return [int(p) for p in base[1:]]


def odd_flags(lo: int, nslots: int, base: list[int] | None = None) -> np.ndarray:
    """
    Primality flags for the odd numbers ``lo, lo + 2, ..., lo + 2*(nslots-1)``.

    ``lo`` must be odd. ``base`` (odd primes up to the square root of the
    segment end) is computed when omitted.
    """
    if lo % 2 == 0:
        raise DomainError("segment start must be odd")
    hi = lo + 2 * nslots
    if base is None:
        base = _base_for(hi)
    flags = np.ones(nslots, dtype=bool)
    for p in base:
        pp = p * p
        if pp >= hi:
            break
        start = max(pp, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        if start < hi:
            flags[(start - lo) // 2 :: p] = False
    if lo == 1 and nslots:
        flags[0] = False
    return flags


class PrimeSieve:
    """
    Segmented sieve over odd numbers up to ``limit`` (inclusive).

    Parameters
    ----------
    limit : int
        Largest number considered; at most ``SIEVE_CEILING``.
    segment_size : int
        Odd slots per segment.
    threads : int
        Worker threads used to sieve segments; output does not depend on it.
    """

    def __init__(self, limit: int, segment_size: int = DEFAULT_SEGMENT, threads: int = 1):
        if limit > SIEVE_CEILING:
            raise CapacityError(f"sieve limit {limit} exceeds ceiling {SIEVE_CEILING}")
        if segment_size < 1:
            raise DomainError("segment_size must be positive")
        self.limit = int(limit)
        self.segment_size = int(segment_size)
        self.threads = max(1, int(threads))

    def _segment(self, lo: int) -> np.ndarray:
        nslots = min(self.segment_size, (self.limit - lo) // 2 + 1)
        flags = odd_flags(lo, nslots, self._base)
        return lo + 2 * np.flatnonzero(flags).astype(np.int64)

    def segments(self) -> Iterator[np.ndarray]:
        """Yield primes segment by segment, in increasing order."""
        if self.limit < 2:
            return
        yield np.array([2], dtype=np.int64)
        if self.limit < 3:
            return
        self._base = _base_for(self.limit + 1)
        starts = range(3, self.limit + 1, 2 * self.segment_size)
        if self.threads == 1:
            for lo in starts:
                yield self._segment(lo)
        else:
            with ThreadPoolExecutor(self.threads) as pool:
                yield from pool.map(self._segment, starts)

    def __iter__(self) -> Iterator[int]:
        for seg in self.segments():
            yield from (int(p) for p in seg)

    def primes(self) -> np.ndarray:
        parts = list(self.segments())
        if not parts:
            return np.array([], dtype=np.int64)
        return np.concatenate(parts)

    def count(self) -> int:
        return sum(len(seg) for seg in self.segments())


@lru_cache(maxsize=16)
def _cached_primes(limit: int) -> np.ndarray:
    out = PrimeSieve(limit).primes()
    out.flags.writeable = False
    return out


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as a read-only int64 array (empty below 2)."""
    if limit > SIEVE_CEILING:
        raise CapacityError(f"sieve limit {limit} exceeds ceiling {SIEVE_CEILING}")
    return _cached_primes(int(max(limit, 1)))


def iter_primes(limit: int, segment_size: int = DEFAULT_SEGMENT) -> Iterator[int]:
    """Stream the primes <= limit without holding them all in memory."""
    return iter(PrimeSieve(limit, segment_size))


def prime_pi(x: int) -> int:
    return int(np.searchsorted(primes_up_to(x), x, side="right")) if x >= 2 else 0


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)


def factorize(n: int) -> Factorization:
    """Canonical factorization by trial division against sieved primes."""
    n = int(n)
    if n < 1:
        raise DomainError("factorize needs n >= 1")
    if n > FACTOR_CEILING:
        raise CapacityError(f"{n} exceeds factorization ceiling {FACTOR_CEILING}")
    factors = []
    m = n
    for p in small_primes(max(math.isqrt(n), 2)).tolist():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
    if m > 1:
        factors.append((m, 1))
    return Factorization(n, tuple(factors))


def odd_prime_divisors(n: int) -> tuple[int, ...]:
    n = int(n)
    if n < 1:
        raise DomainError("odd_prime_divisors needs n >= 1")
    n >>= (n & -n).bit_length() - 1  # the ceiling applies to the odd part only
    return factorize(n).primes()


def nth_prime(n: int) -> int:
    """The n-th prime, with ``nth_prime(1) == 2``."""
    if n < 1:
        raise DomainError("nth_prime is defined for n >= 1")
    if n < 6:
        return (2, 3, 5, 7, 11)[n - 1]
    # Rosser: p_n < n (ln n + ln ln n) for n >= 6
    bound = int(n * (math.log(n) + math.log(math.log(n)))) + 1
    if bound > SIEVE_CEILING:
        raise CapacityError(f"nth_prime({n}) is beyond sieve capacity")
    return int(primes_up_to(bound)[n - 1])


def first_primes(n: int) -> list[int]:
    if n <= 0:
        return []
    last = nth_prime(n)
    return primes_up_to(last)[:n].tolist()


def primorial(n: int) -> int:
    """Product of the first n primes; rejects results beyond a signed 64-bit word."""
    if n < 1:
        raise DomainError("primorial needs n >= 1")
    out = 1
    for p in first_primes(n):
        out *= p
        if out > PRIMORIAL_CEILING:
            raise CapacityError(f"primorial of the first {n} primes exceeds 64-bit range")
    return out
