"""
Symmetric patterns: subpattern comparisons, the small/large prime split of
the constant ratio, and symmetric reduction chains.
"""
from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InadmissibleError
from .euler import compensated_log_sum, log_tail
from .patterns import (
    Pattern,
    covering_prime,
    is_symmetric,
    proper_subsets,
    remove_symmetric_pair,
    residue_count,
)
from .primes import primes_up_to
from .singular import TAIL_ORDER, default_truncation, log_singular_series

#: the k = 17, diameter 240 symmetric pattern and the order its pairs are peeled off
TABLE_PATTERN = Pattern((0, 6, 24, 36, 66, 84, 90, 114, 120, 126, 150, 156, 174, 204, 216, 234, 240))
TABLE_REMOVAL_ORDER = (6, 24, 36, 66, 84, 90, 114, 120)

EXHAUSTIVE_LIMIT = 10**5


@dataclass(frozen=True)
class RatioDecomposition:
    p0: int
    p_small: float
    p_big: float
    ratio: float
    truncation_prime: int

    @property
    def identity_error(self) -> float:
        return abs(self.p_small * self.p_big / self.ratio - 1.0)

    @property
    def delta(self) -> float:
        """Excess of the large-prime product over 1."""
        return self.p_big - 1.0


def _subset_of(H: Pattern, sub) -> tuple[int, ...]:
    offs = tuple(sorted(int(h) for h in (sub.offsets if isinstance(sub, Pattern) else sub)))
    if not offs or not set(offs) <= set(H.offsets) or len(set(offs)) != len(offs):
        raise DomainError(f"{offs} is not an offset subset of {H}")
    return offs


def _log_p_small(H: tuple[int, ...], sub: tuple[int, ...], p0: int) -> float:
    k, kk = len(H), len(sub)
    terms = []
    for p in primes_up_to(p0 - 1).tolist():
        v, vv = residue_count(H, p), residue_count(sub, p)
        terms.append(math.log1p(-vv / p) - math.log1p(-v / p) + (k - kk) * math.log1p(-1.0 / p))
    return math.fsum(terms)


def _log_p_big(k: int, kk: int, p0: int, P: int) -> float:
    ps = primes_up_to(P)
    ps = ps[ps >= p0].astype(np.float64)
    a = np.log1p(-kk / ps)
    b = np.log1p(-k / ps)
    c = (k - kk) * np.log1p(-1.0 / ps)
    body, _ = compensated_log_sum(a - b + c, np.abs(a) + np.abs(b) + np.abs(c))
    coeffs = [(k**j - kk**j - (k - kk)) / j for j in range(1, TAIL_ORDER + 1)]
    return body + log_tail(coeffs, P, radius=float(k)).log_correction


def ratio_decomposition(H: Pattern, H_sub, p0: int, truncation_prime: int | None = None) -> RatioDecomposition:
    """
    Split S(H_sub)/S(H) into the product over primes below ``p0`` and the
    product over primes from ``p0`` on.

    ``H_sub`` is an offset subset of ``H`` in H's own frame (not shifted).
    The ratio itself is computed independently from the two constants.
    """
    bad = covering_prime(H)
    if bad is not None:
        raise InadmissibleError(H, bad)
    sub = _subset_of(H, H_sub)
    if p0 <= H.diameter:
        raise DomainError(f"p0 = {p0} must exceed the diameter {H.diameter}")
    P = max(default_truncation(H) if truncation_prime is None else truncation_prime, p0)
    small = _log_p_small(H.offsets, sub, p0)
    big = _log_p_big(H.k, len(sub), p0, P)
    logH, _ = log_singular_series(H.offsets, P)
    logS, _ = log_singular_series(sub, P)
    return RatioDecomposition(p0, math.exp(small), math.exp(big), math.exp(logS - logH), P)


def _first_prime_above(n: int) -> int:
    ps = primes_up_to(2 * n + 10)
    return int(ps[np.searchsorted(ps, n, side="right")])


@dataclass
class Assertion2Report:
    pattern: Pattern
    constant: float
    checked: int = 0
    satisfied: int = 0
    exhaustive: bool = True
    counterexamples: list = field(default_factory=list)
    max_identity_error: float = 0.0
    max_p_small: float = 0.0
    p0: int = 0


def _subset_sample(H: Pattern, samples: int, seed: int):
    k = H.k
    rng = random.Random(seed)
    seen: set[int] = set()
    top = (1 << k) - 2
    while len(seen) < min(samples, top):
        seen.add(rng.randint(1, top))
    for mask in sorted(seen):
        yield tuple(h for i, h in enumerate(H.offsets) if mask >> i & 1)


def verify_assertion2(H: Pattern, samples: int = 2000, seed: int = 0, p0: int | None = None) -> Assertion2Report:
    """
    Compare S(H') with S(H) for the proper nonempty subpatterns H' of a
    symmetric admissible H, recording every violation.

    Up to ``EXHAUSTIVE_LIMIT`` subpatterns are enumerated; beyond that
    ``samples`` masks are drawn without replacement. Each instance also gets
    a ratio decomposition at ``p0`` (default: first prime above the diameter).
    """
    if not is_symmetric(H):
        raise DomainError("pattern is not symmetric")
    bad = covering_prime(H)
    if bad is not None:
        raise InadmissibleError(H, bad)
    P = default_truncation(H)
    p0 = _first_prime_above(H.diameter) if p0 is None else p0
    logH, _ = log_singular_series(H.offsets, P)
    total = (1 << H.k) - 2
    exhaustive = total <= EXHAUSTIVE_LIMIT
    subsets = proper_subsets(H) if exhaustive else _subset_sample(H, samples, seed)
    rep = Assertion2Report(H, math.exp(logH), exhaustive=exhaustive, p0=p0)
    for sub in subsets:
        dec = ratio_decomposition(H, sub, p0, P)
        rep.checked += 1
        if dec.ratio < 1.0:
            rep.satisfied += 1
        else:
            rep.counterexamples.append((sub, rep.constant * dec.ratio, rep.constant))
        rep.max_identity_error = max(rep.max_identity_error, dec.identity_error)
        rep.max_p_small = max(rep.max_p_small, dec.p_small)
    return rep


@dataclass(frozen=True)
class LemmaReport:
    p0: int
    max_p_small: float
    argmax: tuple[int, ...]
    candidate_bound: float  # prod_{3 <= p < p0} (1 - 1/p)
    below_one: bool
    below_candidate: bool
    b2_values: tuple[float, ...]


def lemma_bound_check(H: Pattern, p0: int) -> LemmaReport:
    """Largest small-prime factor over all proper subpatterns versus 1 and the candidate bound."""
    if not is_symmetric(H):
        raise DomainError("pattern is not symmetric")
    if p0 <= H.diameter:
        raise DomainError("p0 must exceed the diameter")
    best, arg = -math.inf, None
    b2 = set()
    k = H.k
    for sub in proper_subsets(H):
        v = math.exp(_log_p_small(H.offsets, sub, p0))
        nu_h, nu_s = residue_count(H.offsets, 2), residue_count(sub, 2)
        b2.add((1 - nu_s / 2) / (1 - nu_h / 2) * 0.5 ** (k - len(sub)))
        if v > best:
            best, arg = v, sub
    cand = math.prod(1 - 1 / p for p in primes_up_to(p0 - 1).tolist() if p >= 3)
    return LemmaReport(p0, best, arg, cand, best < 1, best < cand, tuple(sorted(b2)))


# ------------------------------------------------------------ reduction chains


class ReductionError(DomainError):
    def __init__(self, step: int, reason: str):
        self.step = step
        super().__init__(f"removal step {step}: {reason}")


@dataclass(frozen=True)
class ChainStep:
    pattern: Pattern
    constant: float
    ratio: float | None  # S(this) / S(previous)
    removed: tuple[int, ...] = ()
    center: bool = False


def reduction_chain(H: Pattern, removal_order=(), allow_center: bool = True) -> list[ChainStep]:
    """
    Peel symmetric pairs off ``H`` in the given order, recording each
    constant and its ratio to the previous one.

    An entry equal to diameter/2 removes the lone center and is flagged.
    """
    if not is_symmetric(H):
        raise DomainError("pattern is not symmetric")
    P = default_truncation(H)

    def const(p):
        return math.exp(log_singular_series(p.offsets, P)[0])

    cur = H
    steps = [ChainStep(H, const(H), None)]
    for i, h in enumerate(removal_order, start=1):
        center = 2 * h == cur.diameter
        if center and not allow_center:
            raise ReductionError(i, f"offset {h} is the center")
        try:
            nxt = remove_symmetric_pair(cur, h, center=center)
        except DomainError as exc:
            raise ReductionError(i, str(exc)) from None
        if covering_prime(nxt) is not None:
            raise ReductionError(i, "result is inadmissible")
        c = const(nxt)
        removed = (h,) if center else (h, cur.diameter - h)
        steps.append(ChainStep(nxt, c, c / steps[-1].constant, removed, center))
        cur = nxt
    return steps


def chain_to_csv(steps: list[ChainStep], fh) -> None:
    w = csv.writer(fh)
    w.writerow(["k", "pattern", "C(H)", "ratio"])
    for s in steps:
        w.writerow([s.pattern.k, f"[{', '.join(map(str, s.pattern.offsets))}]", f"{s.constant:.4e}", "-" if s.ratio is None else f"{s.ratio:.4f}"])


def random_symmetric_patterns(count: int, max_k: int = 8, max_d: int = 100, seed: int = 0) -> list[Pattern]:
    """
    Distinct admissible symmetric patterns: an even diameter, a random set of
    mirror pairs {h, d - h} and optionally the center.
    """
    rng = random.Random(seed)
    out: dict[tuple, Pattern] = {}
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * count:
            raise RuntimeError("could not generate enough symmetric patterns")
        d = 2 * rng.randint(1, max_d // 2)
        halves = [h for h in range(2, d // 2, 2)]
        with_center = d % 4 == 0 and rng.random() < 0.5
        room = (max_k - 2 - int(with_center)) // 2
        m = rng.randint(0, min(room, len(halves)))
        chosen = rng.sample(halves, m)
        offs = {0, d} | set(chosen) | {d - h for h in chosen}
        if with_center:
            offs.add(d // 2)
        pat = Pattern(tuple(sorted(offs)))
        if covering_prime(pat) is None:
            out.setdefault(pat.offsets, pat)
    return [out[key] for key in sorted(out)]
