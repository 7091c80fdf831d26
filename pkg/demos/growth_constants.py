"""
Products over primes and sequences of gaps
==========================================

L(q) = prod_{2 < p <= q} (p-1)/(p-2) grows like a constant times ln q.
Mertens' theorem fixes that constant at exp(gamma)/(2 C2); the scans
below measure it and also follow C(0, d) along four sequences of d.
"""

import math

from hltuples.asymptotics import (
    CLAIMED_L_COEFFICIENT,
    MERTENS_L_COEFFICIENT,
    assertion1_constant,
    assertion1_decomposition,
    sequence_scan,
)

rep = assertion1_constant([10**5, 10**6, 10**7])
for q, r in zip(rep.q_points, rep.ratios):
    print(f"q = {q:>8}: L(q)/ln q = {r:.6f}")
print(f"exp(gamma)/(2 C2) = {MERTENS_L_COEFFICIENT:.6f} (gap {rep.gap_to_mertens:+.1e}); "
      f"2 C2 = {CLAIMED_L_COEFFICIENT:.6f} (gap {rep.gap_to_claimed:+.2%})")

dec = assertion1_decomposition(10**7)
print(f"K = {dec.K:.5f} +- {dec.K_bound:.3f}, exp(K) in [{dec.exp_K_interval[0]:.4f}, {dec.exp_K_interval[1]:.4f}]")
print(f"S1(q) - ln ln q = {dec.S1.partial - math.log(math.log(dec.q)):.5f}")

for name, n in [("power_of_two", 10), ("nth_prime", 10), ("primorial", 40), ("linear", 10**4)]:
    scan = sequence_scan(name, n, log_space=name == "primorial")
    cs = [pt.C for pt in scan.points]
    print(f"{name:>12}: first {cs[0]:.5f}  last {cs[-1]:.5f}", end="")
    if scan.slope is not None:
        print(f"  slope vs ln q_n {scan.slope:.3f}", end="")
    if "trailing_decile_spread" in scan.stats:
        print(f"  trailing spread {scan.stats['trailing_decile_spread']:.2f}", end="")
    print()
