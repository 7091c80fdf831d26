"""
Prime-tuple patterns: residue counts, admissibility, symmetry.

A pattern is a strictly increasing tuple of non-negative offsets starting
at 0. Parity is deliberately not enforced; a mixed-parity pattern simply
covers both classes mod 2 and is reported inadmissible.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import CapacityError, DomainError
from .primes import factorize, small_primes

MAX_K = 64
MAX_DIAMETER = 10**6


class PatternParseError(DomainError):
    """Malformed pattern text; ``position`` is the 0-based token index."""

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (token {position})")


@dataclass(frozen=True)
class Pattern:
    offsets: tuple[int, ...]

    def __post_init__(self):
        offs = tuple(int(h) for h in self.offsets)
        object.__setattr__(self, "offsets", offs)
        if not offs:
            raise DomainError("pattern must have at least one offset")
        if offs[0] != 0:
            raise DomainError("pattern must start at 0")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise DomainError("pattern offsets must be strictly increasing")
        if len(offs) > MAX_K:
            raise CapacityError(f"pattern length {len(offs)} exceeds {MAX_K}")
        if offs[-1] > MAX_DIAMETER:
            raise CapacityError(f"pattern diameter {offs[-1]} exceeds {MAX_DIAMETER}")

    @classmethod
    def from_offsets(cls, offsets: Iterable[int]) -> "Pattern":
        """Sort, deduplicate-check and shift an arbitrary offset set so it starts at 0."""
        offs = sorted(int(h) for h in offsets)
        if len(set(offs)) != len(offs):
            raise DomainError("duplicate offsets")
        if not offs:
            raise DomainError("pattern must have at least one offset")
        m = offs[0]
        return cls(tuple(h - m for h in offs))

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        """
        Parse ``"0,2,6,8"``. Whitespace is tolerated; tokens must be integers
        in strictly increasing order. A nonzero start is shifted to 0.
        """
        tokens = text.split(",")
        values = []
        for i, tok in enumerate(tokens):
            tok = tok.strip()
            if not re.fullmatch(r"\d+", tok):
                raise PatternParseError(f"not a non-negative integer: {tok!r}", i)
            values.append(int(tok))
        for i in range(1, len(values)):
            if values[i] == values[i - 1]:
                raise PatternParseError(f"duplicate offset {values[i]}", i)
            if values[i] < values[i - 1]:
                raise PatternParseError(f"offsets not increasing at {values[i]}", i)
        m = values[0]
        return cls(tuple(v - m for v in values))

    @property
    def k(self) -> int:
        return len(self.offsets)

    @property
    def diameter(self) -> int:
        return self.offsets[-1]

    def __len__(self) -> int:
        return len(self.offsets)

    def __iter__(self):
        return iter(self.offsets)

    def __str__(self) -> str:
        return ",".join(map(str, self.offsets))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = factorize(p).factors
    return len(f) == 1 and f[0][1] == 1


def residue_count(offsets: Sequence[int], p: int) -> int:
    """Distinct residues of ``offsets`` mod p; no primality check."""
    return len({h % p for h in offsets})


def nu(pattern: Pattern, p: int) -> int:
    """Number of distinct residues of the pattern's offsets modulo the prime p."""
    if not _is_prime(p):
        raise DomainError(f"{p} is not prime")
    return residue_count(pattern.offsets, p)


@lru_cache(maxsize=4096)
def _collision_primes(offsets: tuple[int, ...]) -> tuple[int, ...]:
    found: set[int] = set()
    for a, b in itertools.combinations(offsets, 2):
        found.update(factorize(abs(b - a)).primes())
    return tuple(sorted(found))


def exceptional_primes(offsets: Sequence[int]) -> dict[int, int]:
    """
    Map each prime p with nu_p < k to nu_p.

    nu_p < k exactly when p divides some pairwise difference, so every other
    prime sees k distinct residues.
    """
    offs = tuple(sorted(offsets))
    return {p: residue_count(offs, p) for p in _collision_primes(offs)}


def covering_prime(pattern: Pattern) -> int | None:
    """Smallest prime whose residues are all hit by the pattern, or None."""
    for p in small_primes(max(pattern.k, 2)).tolist():
        if residue_count(pattern.offsets, p) == p:
            return p
    return None


def is_admissible(pattern: Pattern) -> bool:
    return covering_prime(pattern) is None


def is_symmetric(pattern: Pattern) -> bool:
    offs, d = pattern.offsets, pattern.diameter
    return all(a + b == d for a, b in zip(offs, reversed(offs)))


def remove_symmetric_pair(pattern: Pattern, h: int, center: bool = False) -> Pattern:
    """
    Drop ``h`` and its mirror ``diameter - h`` from a symmetric pattern.

    With ``center=True`` the lone middle offset ``diameter / 2`` may be
    removed on its own. The outer pair ``{0, diameter}`` is never removable
    because the diameter would change.
    """
    if not is_symmetric(pattern):
        raise DomainError("pattern is not symmetric")
    d = pattern.diameter
    if h not in pattern.offsets:
        raise DomainError(f"offset {h} not in pattern")
    if h in (0, d):
        raise DomainError("removing the outer pair would change the diameter")
    mirror = d - h
    if mirror == h:
        if not center:
            raise DomainError(f"offset {h} is the center, not part of a pair")
        drop = {h}
    else:
        drop = {h, mirror}
    return Pattern(tuple(x for x in pattern.offsets if x not in drop))


def subpatterns(pattern: Pattern, length: int) -> Iterator[Pattern]:
    """All ``length``-element subsets of the offsets, each shifted to start at 0."""
    if length >= pattern.k:
        raise DomainError("subpattern length must be below the pattern length")
    if length < 1:
        raise DomainError("subpattern length must be at least 1")
    for combo in itertools.combinations(pattern.offsets, length):
        yield Pattern(tuple(h - combo[0] for h in combo))


def proper_subsets(pattern: Pattern) -> Iterator[tuple[int, ...]]:
    """Un-normalized proper nonempty offset subsets, shortest first."""
    for r in range(1, pattern.k):
        yield from itertools.combinations(pattern.offsets, r)
