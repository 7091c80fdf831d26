"""
Finite-range checks of the (0, d) constant's limit behaviour and of the
growth of L(q) = prod_{2 < p <= q} (p-1)/(p-2).

Limits are rendered as scans plus stability metrics. Where the claimed
constant and the Mertens-theorem constant disagree, both are reported.
"""
from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, DomainError
from .euler import SeriesEstimate, compensated_log_sum, prime_power_tail
from .primes import PRIMORIAL_CEILING, first_primes, nth_prime, primes_up_to
from .singular import C2, twin_constant_for, twin_factor

MEISSEL_MERTENS = 0.26149721284764278
EULER_GAMMA = float(np.euler_gamma)
CLAIMED_L_COEFFICIENT = 2 * C2
MERTENS_L_COEFFICIENT = math.exp(EULER_GAMMA) / (2 * C2)
ASSERTION1_WARNING = (
    "L(q)/ln q tends to exp(gamma)/(2*C2) ~ 1.34896 by Mertens' theorem, "
    "not the claimed 2*C2 ~ 1.32032 (about 2% apart)"
)


def log_L(q: int) -> float:
    if q < 3:
        return 0.0
    ps = primes_up_to(q)[1:].astype(np.float64)
    total, _ = compensated_log_sum(np.log1p(1.0 / (ps - 2)))
    return total


def L_product(q: int) -> float:
    """prod over odd primes p <= q of (p-1)/(p-2); 1 for q < 3."""
    return math.exp(log_L(q))


@dataclass(frozen=True)
class Assertion1Report:
    q_points: tuple[int, ...]
    ratios: tuple[float, ...]  # L(q) / ln q
    stability: float  # max pairwise relative spread over the last three points
    claimed: float = CLAIMED_L_COEFFICIENT
    mertens: float = MERTENS_L_COEFFICIENT
    gap_to_claimed: float = 0.0
    gap_to_mertens: float = 0.0
    warnings: tuple[str, ...] = (ASSERTION1_WARNING,)


def assertion1_constant(q_points) -> Assertion1Report:
    qs = tuple(int(q) for q in q_points)
    if len(qs) < 2:
        raise DomainError("need at least two q points")
    if any(b <= a for a, b in zip(qs, qs[1:])):
        raise DomainError("q points must increase")
    if qs[-1] > 10**8:
        raise CapacityError("q points are limited to 10**8")
    ratios = tuple(L_product(q) / math.log(q) for q in qs)
    tail = ratios[-3:]
    spread = max(abs(a - b) / min(a, b) for a, b in itertools.combinations(tail, 2))
    last = ratios[-1]
    return Assertion1Report(
        qs,
        ratios,
        spread,
        gap_to_claimed=(last - CLAIMED_L_COEFFICIENT) / CLAIMED_L_COEFFICIENT,
        gap_to_mertens=(last - MERTENS_L_COEFFICIENT) / MERTENS_L_COEFFICIENT,
    )


@dataclass(frozen=True)
class Decomposition:
    q: int
    S1: SeriesEstimate
    S2: SeriesEstimate
    S3: SeriesEstimate
    B: float
    L: SeriesEstimate
    M: dict[int, SeriesEstimate]
    K: float  # B - 1/2 + L - M2/2 + M3/3 - ... - M6/6
    K_bound: float  # alternating-tail bound, M7/7
    K_uncorrected: float  # same without the -1/2 for the prime 2
    lnlnq: float = field(default=0.0)

    @property
    def exp_K(self) -> float:
        return math.exp(self.K)

    @property
    def exp_K_interval(self) -> tuple[float, float]:
        return math.exp(self.K - self.K_bound), math.exp(self.K + self.K_bound)


def _odd_tail_sum(m: int, power: int) -> float:
    # sum over odd n >= m of (n - 2)**-power, bounded by first term plus half the integral
    a = m - 2.0
    return a**-power + a ** (1 - power) / (2.0 * (power - 1))


def assertion1_decomposition(q: int) -> Decomposition:
    """
    The series behind ln L(q): S_j(q) = sum_{2 < p <= q} (p-2)**-j, the
    constant L = sum_{p > 2} 2/(p(p-2)) and M_j = sum_{p > 2} (p-2)**-j,
    assembled into K = B - 1/2 + L - M2/2 + M3/3 - ... truncated after M6.

    The -1/2 removes the prime 2 from Mertens' sum_{p <= q} 1/p; without it
    exp(K) misses the measured growth rate of L(q) by a factor near e**0.5.
    """
    if q < 3:
        raise DomainError("q must be at least 3")
    ps = primes_up_to(q)[1:].astype(np.float64)
    m = q + 1 if q % 2 == 0 else q + 2
    x = 1.0 / (ps - 2)
    S = {j: math.fsum((x**j).tolist()) for j in range(1, 8)}
    Lpart = math.fsum((2.0 / (ps * (ps - 2))).tolist())
    L = SeriesEstimate("ConstantL", q, Lpart, 2 * prime_power_tail(2, q), 1.0 / (m - 2))
    M = {
        j: SeriesEstimate("Mk", q, S[j], prime_power_tail(j, q), _odd_tail_sum(m, j))
        for j in range(2, 8)
    }
    mid = {j: 0.5 * (M[j].low + M[j].high) for j in M}
    Lmid = 0.5 * (L.low + L.high)
    alt = math.fsum((-1) ** (j + 1) * mid[j] / j for j in range(2, 7))
    K = MEISSEL_MERTENS - 0.5 + Lmid + alt
    s1_tail_hi = math.inf  # S1 diverges
    return Decomposition(
        q=q,
        S1=SeriesEstimate("S1", q, S[1], 0.0, s1_tail_hi),
        S2=SeriesEstimate("S2", q, S[2], M[2].tail_low, M[2].tail_high),
        S3=SeriesEstimate("S3", q, S[3], M[3].tail_low, M[3].tail_high),
        B=MEISSEL_MERTENS,
        L=L,
        M={j: M[j] for j in range(2, 7)},
        K=K,
        K_bound=M[7].high / 7,
        K_uncorrected=K + 0.5,
        lnlnq=math.log(math.log(q)),
    )


# ------------------------------------------------------------ sequence scans

SEQUENCES = ("power_of_two", "nth_prime", "primorial", "linear")


@dataclass(frozen=True)
class SequencePoint:
    n: int
    d: int | None  # None when only the factor set is carried
    d_description: str
    C: float


@dataclass(frozen=True)
class SequenceScan:
    sequence: str
    points: tuple[SequencePoint, ...]
    truncated: bool = False
    slope: float | None = None  # primorial: fitted dC / d ln q_n
    stats: dict = field(default_factory=dict)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n", "d_description", "C_value"])
            for pt in self.points:
                w.writerow([pt.n, pt.d_description, repr(pt.C)])


def _linear_stats(values: np.ndarray) -> dict:
    tailn = max(1, len(values) // 10)
    tail = values[-tailn:]
    return {
        "min": float(values.min()),
        "max": float(values.max()),
        "mean": float(values.mean()),
        "trailing_decile_spread": float((tail.max() - tail.min()) / tail.mean()),
    }


def sequence_scan(sequence: str, n_max: int, log_space: bool = False) -> SequenceScan:
    """
    C(0, d(n)) for n = 1..n_max along one of ``SEQUENCES``.

    ``nth_prime`` evaluates the odd-prime product on d = p_n directly (p_n is
    odd for n > 1, so this is the value the closed form assigns, equal to
    C(0, 2 p_n)). ``primorial`` stops at the 64-bit ceiling unless
    ``log_space`` is set, in which case only the prime set is carried.
    """
    if sequence not in SEQUENCES:
        raise DomainError(f"unknown sequence {sequence!r}")
    if n_max < 1:
        raise DomainError("n_max must be positive")
    pts: list[SequencePoint] = []
    truncated = False
    slope = None
    stats: dict = {}
    if sequence == "power_of_two":
        for n in range(1, n_max + 1):
            d = 2**n
            pts.append(SequencePoint(n, d, f"2^{n}", twin_constant_for(d).value))
    elif sequence == "nth_prime":
        for n in range(1, n_max + 1):
            p = nth_prime(n)
            fac = twin_factor(p)
            pts.append(SequencePoint(n, p, f"p_{n}={p}", 2 * C2 * fac.numerator / fac.denominator))
    elif sequence == "primorial":
        primes = first_primes(n_max)
        d = 1
        logL = 0.0
        for n, p in enumerate(primes, start=1):
            d *= p
            if p > 2:
                logL += math.log1p(1.0 / (p - 2))
            if d > PRIMORIAL_CEILING and not log_space:
                truncated = True
                break
            pts.append(SequencePoint(n, d if d <= PRIMORIAL_CEILING else None, f"q_{n}#", 2 * C2 * math.exp(logL)))
        if len(pts) >= 2:
            lnq = np.log([primes[pt.n - 1] for pt in pts])
            slope = float(np.polyfit(lnq, [pt.C for pt in pts], 1)[0])
        stats = {"claimed_coefficient": 4 * C2**2, "mertens_coefficient": math.exp(EULER_GAMMA)}
    else:
        for n in range(1, n_max + 1):
            pts.append(SequencePoint(n, 2 * n, f"{2 * n}", twin_constant_for(2 * n).value))
        stats = _linear_stats(np.array([pt.C for pt in pts]))
    return SequenceScan(sequence, tuple(pts), truncated, slope, stats)
