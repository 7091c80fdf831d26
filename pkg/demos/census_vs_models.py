"""
Counting prime tuples
=====================

Sieve counts of twin primes and prime quadruplets against the Cramer,
parity-adjusted and Hardy-Littlewood predictions.
"""

from hltuples import Pattern
from hltuples.census import count_tuples, deviation_report

checkpoints = [10**4, 10**5, 10**6]
for text in ["0,2", "0,2,6,8"]:
    census = count_tuples(Pattern.parse(text), 10**7, checkpoints)
    print(f"pattern {text}, S = {census.singular_series:.6f}")
    for row in deviation_report(census):
        print(
            f"  x = {row['x']:>8}  observed {row['observed']:>7}"
            f"  cramer {row['cramer_ratio']:.3f}  parity {row['parity_ratio']:.3f}"
            f"  hl {row['hl_ratio_ratio']:.3f}  hl integral {row['hl_integral_ratio']:.4f}  closest: {row['closest']}"
        )

# the "start" convention counts n <= x, "whole" needs n + diameter <= x
for mode in ("start", "whole"):
    c = count_tuples(Pattern.parse("0,2,6,8"), 10**5, count_mode=mode)
    print(f"quadruplets to 1e5, count_mode={mode}: {c.rows[-1].observed}")
