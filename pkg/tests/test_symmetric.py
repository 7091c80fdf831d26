import io
import math

import pytest

from hltuples.errors import DomainError
from hltuples.patterns import Pattern, is_admissible, is_symmetric
from hltuples.singular import singular_series
from hltuples.symmetric import (
    TABLE_PATTERN,
    TABLE_REMOVAL_ORDER,
    ReductionError,
    chain_to_csv,
    lemma_bound_check,
    random_symmetric_patterns,
    ratio_decomposition,
    reduction_chain,
    verify_assertion2,
)

from conftest import naive_singular

QUAD = Pattern((0, 2, 6, 8))


def S(offs):
    return singular_series(Pattern.from_offsets(offs)).value


def test_identity_decomposition():
    d = ratio_decomposition(QUAD, QUAD.offsets, 11)
    assert d.p_small == pytest.approx(1.0, rel=1e-15)
    assert d.p_big == pytest.approx(1.0, rel=1e-15)
    assert d.ratio == 1.0


def test_decomposition_against_constants():
    d = ratio_decomposition(QUAD, (0, 2, 6), 11)
    assert d.p_small * d.p_big == pytest.approx(S((0, 2, 6)) / S(QUAD.offsets), rel=1e-9)
    assert d.identity_error < 1e-12
    # the split itself from the naive product oracle
    assert d.p_small * d.p_big == pytest.approx(naive_singular((0, 2, 6)) / naive_singular(QUAD.offsets), rel=1e-5)
    with pytest.raises(DomainError):
        ratio_decomposition(QUAD, (0, 2, 6), 7)
    with pytest.raises(DomainError):
        ratio_decomposition(QUAD, (0, 4), 11)


def test_quadruple_exhaustive():
    rep = verify_assertion2(QUAD)
    assert rep.exhaustive and rep.checked == 14 and rep.satisfied == 14
    assert rep.counterexamples == []
    assert rep.max_identity_error < 1e-9


def test_pair_against_singleton():
    rep = verify_assertion2(Pattern((0, 240)))
    # offset subsets {0} and {240} both normalize to the one subpattern {0}
    assert rep.checked == rep.satisfied == 2
    assert rep.constant == pytest.approx(3.5209, rel=5e-5)


def test_known_counterexample():
    # mod 5 the full pattern hits four classes while the subpattern hits three
    H = (0, 2, 18, 20, 36, 38)
    sub = (0, 2, 18, 20, 38)
    assert naive_singular(sub) > naive_singular(H)
    assert S(sub) > S(H)
    rep = verify_assertion2(Pattern(H))
    assert sub in [c[0] for c in rep.counterexamples]
    assert rep.max_p_small > 1


def test_lemma_bound():
    rep = lemma_bound_check(QUAD, 11)
    assert rep.max_p_small < 1
    assert rep.candidate_bound == pytest.approx(16 / 35)
    assert 0.5 in rep.b2_values
    # the factor at 2 is 2**-(k - k'), so it is 1/2 only for single removals
    assert set(rep.b2_values) == {0.5, 0.25, 0.125}


def test_table_chain():
    steps = reduction_chain(TABLE_PATTERN, TABLE_REMOVAL_ORDER)
    assert [s.pattern.k for s in steps] == [17, 15, 13, 11, 9, 7, 5, 3, 2]
    expected = [2.0427e8, 1.5265e7, 1.6893e6, 1.1665e5, 9.6778e3, 5.0374e2, 9.2634e1, 1.1433e1, 3.5209]
    for s, e in zip(steps, expected):
        assert s.constant == pytest.approx(e, rel=5e-3)
    assert steps[-1].ratio == pytest.approx(0.3079, abs=2e-3)
    assert steps[-1].center and not any(s.center for s in steps[:-1])
    for a, b in zip(steps, steps[1:]):
        assert set(b.pattern.offsets) < set(a.pattern.offsets)
        assert b.pattern.diameter == a.pattern.diameter
        assert b.constant < a.constant
        assert is_symmetric(b.pattern) or b.center


def test_chain_edges():
    steps = reduction_chain(QUAD)
    assert len(steps) == 1 and steps[0].ratio is None
    with pytest.raises(ReductionError) as e:
        reduction_chain(QUAD, [2, 3])
    assert e.value.step == 2
    with pytest.raises(ReductionError):
        reduction_chain(Pattern((0, 4, 8)), [4], allow_center=False)


def test_chain_csv():
    buf = io.StringIO()
    chain_to_csv(reduction_chain(QUAD, [2]), buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "k,pattern,C(H),ratio"
    assert lines[1].endswith(",-")
    assert len(lines) == 3


def test_random_patterns():
    pats = random_symmetric_patterns(50, seed=4)
    assert len(pats) == len({p.offsets for p in pats}) == 50
    for p in pats:
        assert is_symmetric(p) and is_admissible(p)
        assert p.k <= 8 and p.diameter <= 100
    assert pats == random_symmetric_patterns(50, seed=4)


def test_sampling_branch():
    # k = 17 has 2**17 - 2 subsets, beyond the exhaustive limit
    rep = verify_assertion2(TABLE_PATTERN, samples=30, seed=1)
    assert not rep.exhaustive and rep.checked == 30
    assert rep.max_identity_error < 1e-9
    assert math.isfinite(rep.max_p_small)
