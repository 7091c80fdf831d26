import math

import pytest

_ACCEPTANCE_LINES = []


def naive_sieve(n):
    """Unsegmented pure-Python Eratosthenes; the reference prime list."""
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, v in enumerate(flags) if v]


def is_prime_td(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def naive_singular(offsets, P=200_000):
    """Plain product of (1 - nu/p)(1 - 1/p)^-k over p <= P, no tail correction."""
    k = len(offsets)
    out = 0.0
    for p in naive_sieve(P):
        nu = len({h % p for h in offsets})
        if nu == p:
            return 0.0
        out += math.log(1 - nu / p) - k * math.log(1 - 1 / p)
    return math.exp(out)


def record_criterion(number, passed, detail):
    _ACCEPTANCE_LINES.append(f"criterion {number:>4}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def criterion():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
