import math

import numpy as np
import pytest

from hltuples.asymptotics import (
    ASSERTION1_WARNING,
    CLAIMED_L_COEFFICIENT,
    MERTENS_L_COEFFICIENT,
    L_product,
    assertion1_constant,
    assertion1_decomposition,
    sequence_scan,
)
from hltuples.errors import CapacityError, DomainError
from hltuples.primes import primes_up_to
from hltuples.singular import C2


def test_L_product_small():
    assert L_product(2) == 1.0
    assert L_product(3) == pytest.approx(2.0)
    assert L_product(5) == pytest.approx(8 / 3)
    assert L_product(1000) == pytest.approx(math.prod((p - 1) / (p - 2) for p in primes_up_to(1000).tolist()[1:]), rel=1e-13)


def test_mertens_oracle():
    # prod_{p<=q} (1-1/p)**-1 ~ e**gamma ln q and prod_{p>2} (1-1/(p-1)**2) = C2
    q = 10**7
    ps = primes_up_to(q).astype(np.float64)
    mertens = math.exp(-math.fsum(np.log1p(-1.0 / ps).tolist())) / math.log(q)
    assert mertens == pytest.approx(math.exp(np.euler_gamma), rel=1e-3)
    assert MERTENS_L_COEFFICIENT == pytest.approx(math.exp(np.euler_gamma) / (2 * C2))
    assert L_product(q) / math.log(q) == pytest.approx(MERTENS_L_COEFFICIENT, rel=5e-3)


def test_assertion1_report():
    rep = assertion1_constant([10**5, 10**6, 10**7])
    assert rep.stability < 0.01
    assert abs(rep.gap_to_mertens) < 0.005
    assert 0.015 < rep.gap_to_claimed < 0.025
    assert rep.claimed == pytest.approx(1.32032, rel=5e-6)
    assert ASSERTION1_WARNING in rep.warnings
    with pytest.raises(DomainError):
        assertion1_constant([10**6])
    with pytest.raises(DomainError):
        assertion1_constant([10**6, 10**5])
    with pytest.raises(CapacityError):
        assertion1_constant([10**6, 10**9])


def test_decomposition():
    a = assertion1_decomposition(10**6)
    b = assertion1_decomposition(10**7)
    assert abs((a.S1.partial - a.lnlnq) - (b.S1.partial - b.lnlnq)) < 0.01
    small = assertion1_decomposition(7)
    assert small.M[2].partial == pytest.approx(1 + 1 / 9 + 1 / 25)
    assert assertion1_decomposition(3).L.partial == pytest.approx(2 / 3)
    lo, hi = b.exp_K_interval
    assert lo <= L_product(10**7) / math.log(10**7) <= hi
    for s in (b.L, *b.M.values()):
        assert s.tail_low <= s.tail_high


def test_power_of_two():
    scan = sequence_scan("power_of_two", 40)
    assert all(pt.C == 2 * C2 for pt in scan.points)


def test_nth_prime():
    scan = sequence_scan("nth_prime", 60)
    cs = [pt.C for pt in scan.points[1:]]
    assert all(a > b for a, b in zip(cs, cs[1:]))
    assert all(c > 2 * C2 for c in cs)
    assert scan.points[1].C == pytest.approx(2 * C2 * 2)  # p_2 = 3


def test_primorial():
    scan = sequence_scan("primorial", 30)
    assert scan.truncated and len(scan.points) == 15
    cs = [pt.C for pt in scan.points]
    assert all(a < b for a, b in zip(cs, cs[1:]))
    assert scan.slope > 0
    deep = sequence_scan("primorial", 200, log_space=True)
    assert not deep.truncated and len(deep.points) == 200
    assert deep.points[-1].d is None


def test_linear():
    scan = sequence_scan("linear", 10**4)
    ds = [pt.d for pt in scan.points]
    assert all(a < b for a, b in zip(ds, ds[1:]))
    assert scan.stats["min"] == pytest.approx(2 * C2)
    assert scan.stats["trailing_decile_spread"] > 0.2
    assert all(pt.C > 0 for pt in scan.points)


def test_sequence_csv(tmp_path):
    path = tmp_path / "s.csv"
    sequence_scan("power_of_two", 3).to_csv(path)
    assert path.read_text().splitlines()[0] == "n,d_description,C_value"


def test_unknown_sequence():
    with pytest.raises(DomainError):
        sequence_scan("fibonacci", 5)
    assert CLAIMED_L_COEFFICIENT == 2 * C2
