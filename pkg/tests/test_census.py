import io

import pytest

from hltuples.census import count_tuples, deviation_report
from hltuples.errors import CapacityError, DomainError, InadmissibleError
from hltuples.patterns import Pattern
from hltuples.primes import prime_pi

from conftest import is_prime_td


def td_count(offsets, x, whole=False):
    top = x - offsets[-1] if whole else x
    return sum(1 for n in range(1, top + 1) if all(is_prime_td(n + h) for h in offsets))


def test_twins_at_ten():
    c = count_tuples(Pattern((0, 2)), 10, keep_starts=True)
    assert c.rows[-1].observed == 2
    assert c.starts == (3, 5)


@pytest.mark.parametrize("offs", [(0, 2), (0, 2, 6, 8), (0, 4), (0, 2, 6), (0,)])
def test_against_trial_division(offs):
    c = count_tuples(Pattern(offs), 10**5)
    assert c.rows[-1].observed == td_count(offs, 10**5)


def test_whole_mode():
    offs = (0, 2, 6, 8)
    c = count_tuples(Pattern(offs), 10**4, count_mode="whole")
    assert c.rows[-1].observed == td_count(offs, 10**4, whole=True)
    with pytest.raises(DomainError):
        count_tuples(Pattern(offs), 100, count_mode="middle")


def test_singletons_equal_pi():
    for x in (1, 2, 3, 10, 1000, 10**6):
        assert count_tuples(Pattern((0,)), x).rows[-1].observed == prime_pi(x)


def test_starts_are_tuples():
    pat = Pattern((0, 2, 6, 8))
    c = count_tuples(pat, 10**6, keep_starts=True, segment_size=4096)
    assert len(c.starts) == c.rows[-1].observed
    assert all(all(is_prime_td(n + h) for h in pat.offsets) for n in c.starts)


@pytest.mark.parametrize("seg", [64, 4096, 1 << 18])
def test_segment_independence(seg):
    ref = count_tuples(Pattern((0, 2, 6)), 300_000, checkpoints=[1000, 10**5])
    got = count_tuples(Pattern((0, 2, 6)), 300_000, checkpoints=[1000, 10**5], segment_size=seg)
    assert got.rows == ref.rows


def test_checkpoints_monotone():
    c = count_tuples(Pattern((0, 2)), 10**6, checkpoints=[10**3, 10**4, 10**5])
    assert [r.x for r in c.rows] == [10**3, 10**4, 10**5, 10**6]
    obs = [r.observed for r in c.rows]
    assert obs == sorted(obs)
    assert obs[0] == td_count((0, 2), 1000)


def test_errors():
    with pytest.raises(InadmissibleError):
        count_tuples(Pattern((0, 1)), 100)
    with pytest.raises(CapacityError):
        count_tuples(Pattern((0, 2)), 10**9)
    with pytest.raises(DomainError):
        count_tuples(Pattern((0, 2)), 100, checkpoints=[200])


def test_deviation_report():
    c = count_tuples(Pattern((0, 2)), 10**6, checkpoints=[10**4, 10**5])
    rep = deviation_report(c)
    for row in rep:
        assert abs(row["cramer_ratio"] - 1) > abs(row["parity_ratio"] - 1)
    assert rep[-1]["closest"] == "hl_integral"
    single = deviation_report(count_tuples(Pattern((0,)), 10**6))[-1]
    assert abs(single["hl_integral_ratio"] - 1) < 0.003


def test_exports():
    c = count_tuples(Pattern((0, 2)), 1000, checkpoints=[100])
    buf = io.StringIO()
    c.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "x,observed,cramer,parity,hl_ratio,hl_integral"
    assert len(lines) == 3
    assert '"0,2"' in c.to_json()
