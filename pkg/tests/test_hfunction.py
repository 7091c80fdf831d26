import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hltuples.errors import DomainError
from hltuples.hfunction import (
    char_function,
    distribution_snapshot,
    empirical_char_function,
    empirical_moment,
    erdos_wintner_series,
    f,
    h,
    h_values,
    ks_distance,
    max_scan,
    mean_f,
    moment_product,
    odd_part,
    wintner_mean,
)
from hltuples.primes import factorize, primes_up_to
from hltuples.singular import C2, twin_constant_for


def h_oracle(n):
    out = Fraction(1)
    for p, _ in factorize(n).factors:
        if p > 2:
            out *= Fraction(p - 1, p - 2)
    return out


def test_h_examples():
    assert h(1) == 1
    assert h(8) == 1
    assert h(45) == Fraction(8, 3)
    assert h(255255) == Fraction(2048, 495)
    with pytest.raises(DomainError):
        h(0)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_h_multiplicative(a, b):
    if math.gcd(a, b) == 1:
        assert h(a * b) == h(a) * h(b)


@given(st.sampled_from(primes_up_to(1000).tolist()), st.integers(1, 6))
def test_h_flat_on_prime_powers(p, e):
    if p**e > 10**12:
        return
    assert h(p**e) == h(p)


def test_bulk_scan_matches_oracle():
    num, den = h_values(20_000)
    assert len(num) == 20_000
    for n in range(1, 20_001):
        assert Fraction(int(num[n - 1]), int(den[n - 1])) == h_oracle(n)
    assert all(math.gcd(int(a), int(b)) == 1 for a, b in zip(num[:2000], den[:2000]))
    vals = num / den
    assert vals.min() >= 1 and vals.max() < 5


def test_f_examples_and_closed_form():
    assert f(2) == pytest.approx(1.32032, rel=5e-6)
    assert f(6) == pytest.approx(2.64065, rel=5e-6)
    assert f(240) == pytest.approx(3.5209, rel=5e-5)
    for d in range(2, 10_001, 2):
        assert f(d) == pytest.approx(twin_constant_for(d).value, rel=1e-14)
        # h(d/2) and the odd-part form agree for every even d
        assert h(d // 2) == h(odd_part(d))


def test_wintner_mean():
    assert wintner_mean() == pytest.approx(1.51478, rel=5e-6)
    assert wintner_mean() * C2 == pytest.approx(1.0, rel=1e-12)
    assert wintner_mean(3, tail=False) == pytest.approx(4 / 3)
    assert wintner_mean(10**5) == pytest.approx(wintner_mean(10**6), rel=1e-13)


def test_moment_product():
    assert moment_product(0) == 1.0
    assert moment_product(1) == pytest.approx(wintner_mean(), rel=1e-13)
    assert moment_product(2, 10**5) == pytest.approx(moment_product(2, 10**6), rel=1e-12)
    with pytest.raises(DomainError):
        moment_product(9)


def test_moment_product_against_naive():
    # naive product to 3e6 without tail; its truncation error is about k(k+1)/(2 P ln P)
    ps = primes_up_to(3 * 10**6)[1:].astype(np.float64)
    naive = math.exp(math.fsum(np.log1p((((ps - 1) / (ps - 2)) ** 2 - 1) / ps).tolist()))
    assert moment_product(2) == pytest.approx(naive, rel=1e-6)


def test_mean_f():
    assert abs(mean_f() - 2.0) < 1e-10


def test_empirical_moment_small():
    rep = empirical_moment(1, 1000)
    assert 1.3 < rep.empirical < 1.7
    assert rep.theoretical > 0
    brute = math.fsum(float(h_oracle(n)) for n in range(1, 1001)) / 1000
    assert rep.empirical == pytest.approx(brute, rel=1e-13)


def test_max_scan_small():
    m = max_scan(10)
    assert (m.argmax, m.value) == (3, Fraction(2))
    m = max_scan(20_000)
    best = max(range(1, 20_001), key=lambda n: (h_oracle(n), -n))
    assert m.argmax == best and m.value == h_oracle(best)


def test_erdos_wintner_series():
    s1, s2, s3 = erdos_wintner_series(3)
    assert s1.partial == 0.0
    assert s2.partial == pytest.approx(math.log(2) / 3)
    a = erdos_wintner_series(10**5)[1].partial
    b = erdos_wintner_series(10**6)[1].partial
    assert abs(a - b) < 1e-4
    for s in erdos_wintner_series(10**6):
        assert s.tail_low <= s.tail_high


def test_char_function():
    assert char_function(0.0) == 1
    for t in (0.3, 1.0, 2.5):
        assert char_function(-t) == pytest.approx(char_function(t).conjugate(), abs=1e-15)
        assert abs(char_function(t)) <= 1
    emp = empirical_char_function(1.0, 10**6)
    assert abs(emp - char_function(1.0)) < 0.01


def test_snapshot():
    s = distribution_snapshot(4)
    assert s.support() == [(Fraction(1), 3), (Fraction(2), 1)]
    big = distribution_snapshot(10**5)
    assert big.frequencies.sum() == 10**5
    sup = big.support()
    assert sup[0][0] == 1 and sup[0][1] == 17  # n = 1 and 2**1 .. 2**16
    assert big.cdf(0.5) == 0 and big.cdf(10) == 1
    assert 0 <= ks_distance(big, distribution_snapshot(5 * 10**4)) <= 1


def test_snapshot_csv(tmp_path):
    s = distribution_snapshot(30)
    path = tmp_path / "snap.csv"
    s.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "numerator,denominator,frequency"
    assert sum(int(l.split(",")[2]) for l in lines[1:]) == 30


def test_snapshot_matches_random_sample():
    s = distribution_snapshot(50_000)
    freq = dict(s.support())
    rng = random.Random(3)
    for n in rng.sample(range(1, 50_001), 200):
        assert h_oracle(n) in freq
