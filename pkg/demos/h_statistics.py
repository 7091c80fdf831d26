"""
The multiplicative function h(n)
================================

h(n) is the product of (p-1)/(p-2) over odd primes p dividing n. This
script compares its Euler-product moments with exhaustive scans, finds the
record value below 10**6 and looks at the shape of the distribution.
"""

import numpy as np

from hltuples.hfunction import (
    char_function,
    distribution_snapshot,
    empirical_char_function,
    empirical_moment,
    h,
    max_scan,
    mean_f,
    moment_product,
    variance_f,
    variance_h,
)

print("h(45) =", h(45), " h(255255) =", h(255255))

# theoretical moments from the Euler product, checked against a full scan
N = 10**6
for k in (1, 2):
    rep = empirical_moment(k, N)
    print(f"M{k}: product {rep.theoretical:.8f}  scan to {N:.0e} {rep.empirical:.8f}")
print(f"variance of h {variance_h():.6f}; mean of f {mean_f():.12f}; variance of f {variance_f():.6f}")

# the largest h(n) up to x sits on a product of the first odd primes
m = max_scan(N)
print(f"max h(n), n <= {N}: n = {m.argmax}, h = {m.value} ~ {float(m.value):.5f}; max / ln ln x = {m.ratio_lnlnx:.4f}")

# the value distribution is skewed to the right: median below mean
snap = distribution_snapshot(N)
print(f"median {float(snap.median()):.5f} < mean {snap.mean():.5f}; {len(snap.support())} distinct values")
grid = np.linspace(1, 3, 5)
print("CDF on", grid, "->", np.round([snap.cdf(t) for t in grid], 4))

# limiting characteristic function of ln h against the empirical one
for t in (0.5, 1.0, 2.0):
    a, b = char_function(t), empirical_char_function(t, N)
    print(f"t = {t}: limit {a:.6f}  empirical {b:.6f}  |diff| {abs(a - b):.1e}")
