"""
Do subpatterns of a symmetric pattern have smaller constants?
=============================================================

For {0,2,6,8} every proper subpattern has a smaller singular series. A
random search over small symmetric patterns finds exceptions: dropping an
offset can reduce the number of residue classes hit mod 5, which raises
the constant.
"""

from hltuples import Pattern, singular_series
from hltuples.patterns import residue_count
from hltuples.symmetric import lemma_bound_check, random_symmetric_patterns, ratio_decomposition, verify_assertion2

quad = Pattern((0, 2, 6, 8))
rep = verify_assertion2(quad)
print(f"{quad}: {rep.satisfied}/{rep.checked} subpatterns below S = {rep.constant:.5f}")

# split one ratio into primes below and above p0
d = ratio_decomposition(quad, (0, 2, 6), 11)
print(f"S(0,2,6)/S(0,2,6,8) = {d.ratio:.6f} = {d.p_small:.6f} (p < 11) * {d.p_big:.6f} (p >= 11)")
lem = lemma_bound_check(quad, 11)
print(f"largest small-prime factor {lem.max_p_small:.4f} at {lem.argmax}; factor at 2 takes values {lem.b2_values}")

# a short random search
for H in random_symmetric_patterns(60, seed=0):
    r = verify_assertion2(H)
    for sub, s_sub, s_full in r.counterexamples:
        print(f"counterexample: S({','.join(map(str, sub))}) = {s_sub:.4f} > S({H}) = {s_full:.4f}"
              f"  [mod 5: {residue_count(H.offsets, 5)} vs {residue_count(sub, 5)} classes]")

H = Pattern((0, 2, 18, 20, 36, 38))
print(f"direct check: {singular_series(Pattern.from_offsets((0, 2, 18, 20, 38))).value:.4f} vs {singular_series(H).value:.4f}")
