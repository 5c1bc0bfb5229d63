"""Tests for the derived constants and parameter ranges."""

from decimal import Decimal, getcontext
from math import log, sqrt

import pytest

from nkline.bounds import (
    compute_profile,
    estimate_growth_coefficient,
    feasible_k_range,
    growth_coefficient,
    smallest_feasible_n,
)


def _tail_coeff_decimal(n, p, epsilon, b, K, L):
    """High-precision reference evaluation."""
    getcontext().prec = 50
    term = (Decimal(2) - Decimal(3) * Decimal(str(epsilon)) / 2) * Decimal(n).ln()
    term += (Decimal(b) * Decimal(str(K)) * Decimal(str(L)) / (1 - Decimal(str(p)))).ln() / 2
    return term.sqrt()


def test_tail_coeff_matches_highprecision_reference():
    prof = compute_profile(10**6, p=0.5, epsilon=0.5, m=4, K=1.0, L=1.0)
    ref = _tail_coeff_decimal(10**6, 0.5, 0.5, 7, 1.0, 1.0)
    assert abs(prof.tail_coeff - float(ref)) < 1e-12
    assert abs(prof.tail_coeff - 4.312) < 1e-3


def test_profile_relation_exact():
    for n in (100, 10**4, 10**9):
        for h in (0, 7, 15):
            for delta in (0.5, 0.8):
                prof = compute_profile(n, delta=delta, h=h)
                assert prof.k_min * (1 - delta) == pytest.approx(
                    prof.load_margin + h, rel=1e-12
                )


def test_profile_monotonicity():
    base = dict(p=0.5, epsilon=0.5, delta=0.8, h=15, m=4)
    ns = [100, 10**3, 10**4, 10**6, 10**9]
    vals = [compute_profile(n, **base) for n in ns]
    for a, b in zip(vals, vals[1:]):
        assert a.tail_coeff <= b.tail_coeff
        assert a.load_margin <= b.load_margin
        assert a.k_min <= b.k_min
    for h1, h2 in [(0, 5), (5, 15)]:
        assert compute_profile(10**4, h=h1).k_min <= compute_profile(10**4, h=h2).k_min
    for p1, p2 in [(0.1, 0.5), (0.5, 0.9)]:
        assert compute_profile(10**4, p=p1).k_min <= compute_profile(10**4, p=p2).k_min


def test_profile_band_count_and_kappa_min():
    prof = compute_profile(10**4, epsilon=0.5, m=3)
    assert prof.band_count == 5
    assert prof.kappa_min == pytest.approx(100.0)


def test_profile_rejects_bad_parameters():
    with pytest.raises(ValueError):
        compute_profile(10**4, p=1.0)
    with pytest.raises(ValueError):
        compute_profile(10**4, epsilon=1.5)
    with pytest.raises(ValueError):
        compute_profile(10**4, delta=1.0)
    with pytest.raises(ValueError):
        compute_profile(10**4, m=1)
    with pytest.raises(ValueError):
        compute_profile(1)


def test_growth_coefficient_closed_forms():
    assert growth_coefficient(0.5, 0.8, 4) == pytest.approx(2.5 * sqrt(35), rel=1e-12)
    assert growth_coefficient(0.5, 0.8, 3) == pytest.approx(12.5, rel=1e-12)


def test_growth_coefficient_extraction_at_large_n():
    est4 = estimate_growth_coefficient(10**12, m=4)
    assert abs(est4 - 2.5 * sqrt(35)) < 1e-6
    est3 = estimate_growth_coefficient(10**12, m=3)
    assert abs(est3 - 12.5) < 1e-6


def test_plain_ratio_converges_from_above():
    # the raw ratio k_min/sqrt(n ln n) sits ~2% above the limit at
    # n = 10^12 because the K*L log term decays only like 1/ln n
    prof = compute_profile(10**12, m=4)
    ratio = prof.k_min / sqrt(10**12 * log(10**12))
    limit = growth_coefficient(0.5, 0.8, 4)
    assert limit < ratio < limit * 1.05


def test_feasible_k_range_examples():
    assert feasible_k_range(100, 14.79) is None
    rng = feasible_k_range(10**5, 12.5)
    assert rng is not None
    lo, hi = rng
    from math import ceil

    assert lo == ceil(12.5 * sqrt(10**5 * log(10**5)))
    assert hi == (5 * 10**5) // 6
    assert feasible_k_range(2, 100) is None


def test_feasible_k_range_lattice_snap():
    rng = feasible_k_range(10**5, 12.5, multiple_of=10)
    lo, hi = rng
    assert lo % 10 == 0 and hi % 10 == 0
    plain_lo, plain_hi = feasible_k_range(10**5, 12.5)
    assert plain_lo <= lo and hi <= plain_hi


def test_smallest_feasible_n_is_a_boundary():
    n0 = smallest_feasible_n(12.5)
    assert n0 is not None
    assert feasible_k_range(n0, 12.5) is not None
    assert feasible_k_range(n0 - 1, 12.5) is None
