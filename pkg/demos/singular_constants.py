"""
Singular series of prime patterns
=================================

Admissibility, the constant S(H) for a few patterns, the closed form for
pairs, and a reduction chain through a large symmetric pattern.
"""

from hltuples import Pattern, is_admissible, singular_series, twin_constant_for
from hltuples.symmetric import TABLE_PATTERN, TABLE_REMOVAL_ORDER, reduction_chain

# a pattern is admissible when it misses a residue class mod every prime
for text in ["0,2", "0,1", "0,2,4", "0,2,6,8"]:
    pat = Pattern.parse(text)
    print(f"{text:>8}  admissible={is_admissible(pat)}")

# constants carry the truncation point and a bound on the neglected tail
for text in ["0,2", "0,6", "0,2,6", "0,2,6,8", "0,240"]:
    v = singular_series(Pattern.parse(text))
    print(f"S({text}) = {v.value:.10f}  (tail bound {v.tail_bound:.1e}, P = {v.truncation_prime})")

# pairs {0, d} have a closed form: 2 C2 times (p-1)/(p-2) over odd p | d
for d in (2, 4, 6, 30, 210):
    print(f"d = {d:>3}: product {singular_series(Pattern((0, d))).value:.10f}  closed form {twin_constant_for(d).value:.10f}")

# peel symmetric pairs off the k = 17 pattern down to {0, 240};
# the last step removes the lone center 120
print()
for step in reduction_chain(TABLE_PATTERN, TABLE_REMOVAL_ORDER):
    ratio = "-" if step.ratio is None else f"{step.ratio:.4f}"
    print(f"k = {step.pattern.k:>2}  S = {step.constant:.4e}  ratio {ratio}")
