"""
Sieve-based prime-tuple counts compared with the three prediction models.
"""
from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .errors import CapacityError, DomainError, InadmissibleError
from .patterns import Pattern, covering_prime
from .primes import DEFAULT_SEGMENT, _base_for, odd_flags
from .singular import cramer_prediction, log_integral_k, parity_prediction, singular_series

CENSUS_CEILING = 10**8
COUNT_MODES = ("start", "whole")


@dataclass(frozen=True)
class CensusRow:
    x: int
    observed: int
    cramer: float | None
    parity: float | None
    hl_ratio: float | None
    hl_integral: float | None


@dataclass(frozen=True)
class TupleCensus:
    pattern: Pattern
    rows: tuple[CensusRow, ...]
    count_mode: str = "start"
    singular_series: float = 1.0
    starts: tuple[int, ...] | None = None

    def to_csv(self, path_or_file) -> None:
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh)
            w.writerow(["x", "observed", "cramer", "parity", "hl_ratio", "hl_integral"])
            for r in self.rows:
                w.writerow([r.x, r.observed, r.cramer, r.parity, r.hl_ratio, r.hl_integral])
        finally:
            if own:
                fh.close()

    def to_json(self) -> str:
        return json.dumps(
            {"pattern": str(self.pattern), "count_mode": self.count_mode, "rows": [asdict(r) for r in self.rows]},
            sort_keys=True,
        )


def _tuple_starts(lo: int, nslots: int, half_offsets: list[int], base: list[int]) -> np.ndarray:
    span = half_offsets[-1]
    flags = odd_flags(lo, nslots + span, base)
    mask = flags[:nslots].copy()
    for s in half_offsets[1:]:
        mask &= flags[s : s + nslots]
    return lo + 2 * np.flatnonzero(mask).astype(np.int64)


def _predictions(x: int, pattern: Pattern, S: float) -> tuple:
    if x <= math.e:
        return None, None, None, None
    k = pattern.k
    ratio = x / math.log(x) ** k
    return (
        cramer_prediction(x, k),
        parity_prediction(x, k),
        S * ratio,
        S * log_integral_k(x, k),
    )


def count_tuples(
    pattern: Pattern,
    x: int,
    checkpoints=None,
    count_mode: str = "start",
    segment_size: int = DEFAULT_SEGMENT,
    threads: int = 1,
    keep_starts: bool = False,
) -> TupleCensus:
    """
    Count n with every n + h prime, at each checkpoint c.

    ``count_mode="start"`` counts tuples whose start n <= c; ``"whole"``
    requires the whole tuple n + diameter <= c.
    """
    bad = covering_prime(pattern)
    if bad is not None:
        raise InadmissibleError(pattern, bad)
    if count_mode not in COUNT_MODES:
        raise DomainError(f"count_mode must be one of {COUNT_MODES}")
    if x > CENSUS_CEILING:
        raise CapacityError(f"census limit {x} exceeds {CENSUS_CEILING}")
    cps = sorted({int(c) for c in (checkpoints or [x])} | {int(x)})
    if cps[0] < 1:
        raise DomainError("checkpoints must be positive")
    if cps[-1] > x:
        raise DomainError("checkpoints cannot exceed x")
    shift = pattern.diameter if count_mode == "whole" else 0
    limits = np.array([c - shift for c in cps], dtype=np.int64)
    last_start = int(limits[-1])

    counts = np.zeros(len(cps), dtype=np.int64)
    kept: list[np.ndarray] = []
    if pattern.k == 1 and last_start >= 2:
        two = np.array([2], dtype=np.int64)
        counts += np.searchsorted(two, limits, side="right")
        kept.append(two)
    if last_start >= 3:
        half = [h // 2 for h in pattern.offsets]
        base = _base_for(last_start + pattern.diameter + 1)
        los = range(3, last_start + 1, 2 * segment_size)

        def work(lo):
            nslots = min(segment_size, (last_start - lo) // 2 + 1)
            return _tuple_starts(lo, nslots, half, base)

        if threads <= 1:
            parts = map(work, los)
        else:
            pool = ThreadPoolExecutor(threads)
            parts = pool.map(work, los)
        for st in parts:
            counts += np.searchsorted(st, limits, side="right")
            if keep_starts:
                kept.append(st)
        if threads > 1:
            pool.shutdown()

    S = singular_series(pattern).value
    rows = tuple(CensusRow(c, int(n), *_predictions(c, pattern, S)) for c, n in zip(cps, counts))
    starts = tuple(int(v) for v in np.concatenate(kept)) if keep_starts and kept else (() if keep_starts else None)
    return TupleCensus(pattern, rows, count_mode, S, starts)


def deviation_report(census: TupleCensus) -> list[dict]:
    """Observed/predicted ratios per checkpoint and the model closest to 1."""
    if not census.rows:
        raise DomainError("census has no checkpoints")
    out = []
    for r in census.rows:
        entry = {"x": r.x, "observed": r.observed}
        best, best_gap = None, math.inf
        for name in ("cramer", "parity", "hl_ratio", "hl_integral"):
            pred = getattr(r, name)
            ratio = r.observed / pred if pred else None
            entry[f"{name}_ratio"] = ratio
            if ratio is not None and abs(ratio - 1) < best_gap:
                best, best_gap = name, abs(ratio - 1)
        entry["closest"] = best
        out.append(entry)
    return out
