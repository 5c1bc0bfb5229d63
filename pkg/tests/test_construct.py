"""Tests for the constructions, adjustments and the pipeline."""

import functools
import random

import pytest

from nkline.bifactor import BipartiteFactor, sample_r_factor
from nkline.construct import (
    ConstructionError,
    RetriesExhausted,
    adjust_k,
    adjust_n,
    biuniform_construct,
    explicit_construct,
    pipeline,
)
from nkline.grid import FeasibilityMatrix, PointSet, feasibility_matrix_4x4
from nkline.secants import verify

from oracles import brute_generic_max, generic_line_sizes


def test_explicit_16_11_matches_reference_scenario():
    s = explicit_construct(16, 11)
    assert len(s) == 176
    assert s.is_regular(11)
    rep = verify(s, 11, 0, mode="exhaustive")
    assert rep.passed
    brute, _ = brute_generic_max(s.points)
    assert brute <= 11


def test_explicit_k_equals_n_gives_full_grid():
    s = explicit_construct(3, 3)
    assert len(s) == 9


def test_explicit_12_8():
    s = explicit_construct(12, 8)
    assert len(s) == 96
    assert s.is_regular(8)
    assert verify(s, 8, 0, mode="exhaustive").passed


def test_explicit_rejects_small_k():
    with pytest.raises(ConstructionError):
        explicit_construct(12, 7)  # 3*7 < 24
    with pytest.raises(ConstructionError):
        explicit_construct(10, 11)


def test_explicit_small_sweep_verified():
    for n in range(12, 25):
        for k in range(-(-2 * n // 3), n + 1):
            s = explicit_construct(n, k)
            assert len(s) == k * n, (n, k)
            assert s.is_regular(k), (n, k)
            assert verify(s, k, 0, mode="exhaustive").passed, (n, k)


def _zero_matrix(n, m):
    return FeasibilityMatrix(m, n // m, [[0] * m for _ in range(m)])


def test_biuniform_row_col_counts_always_exact():
    mat = feasibility_matrix_4x4(40, 30)
    cert = biuniform_construct(40, 30, mat, seed=2, max_retries=1, target_reserve=0)
    assert cert.output.is_regular(30)
    assert len(cert.output) == 30 * 40


def test_biuniform_zero_matrix_trivially_certifies():
    cert = biuniform_construct(4, 0, _zero_matrix(4, 4), seed=0, target_reserve=0)
    assert cert.certified
    assert len(cert.output) == 0


def test_biuniform_rejects_mismatched_matrix():
    mat = feasibility_matrix_4x4(40, 30)
    with pytest.raises(ConstructionError):
        biuniform_construct(44, 30, mat, seed=0)
    with pytest.raises(ConstructionError):
        biuniform_construct(40, 20, mat, seed=0)


def test_biuniform_deterministic_for_fixed_seed():
    mat = feasibility_matrix_4x4(40, 30)
    a = biuniform_construct(40, 30, mat, seed=5, max_retries=3, target_reserve=0)
    b = biuniform_construct(40, 30, mat, seed=5, max_retries=3, target_reserve=0)
    assert a.output == b.output
    assert a.per_retry_reserves == b.per_retry_reserves
    c = biuniform_construct(40, 30, mat, seed=6, max_retries=3, target_reserve=0)
    assert c.output != a.output


def test_adjust_k_noop():
    s = explicit_construct(12, 8)
    out, rep = adjust_k(s, 8, 8, reserve=0)
    assert out == s
    assert rep.passed


def test_adjust_k_full_grid_degree_audit():
    n = 6
    full = PointSet.from_points(n, [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)])
    out, _ = adjust_k(full, n, n - 1, reserve=1)
    assert len(out) == n * (n - 1)
    assert out.is_regular(n - 1)


def test_adjust_k_rejects_bad_targets():
    s = explicit_construct(12, 8)
    with pytest.raises(ConstructionError):
        adjust_k(s, 8, 9, reserve=5)
    with pytest.raises(ConstructionError):
        adjust_k(s, 8, 5, reserve=2)
    skew = PointSet.from_points(4, [(1, 1), (1, 2), (2, 1)])
    with pytest.raises(ConstructionError):
        adjust_k(skew, 2, 1, reserve=1)


def test_adjust_k_never_increases_any_line_count():
    rng = random.Random(3)
    for trial in range(4):
        m = rng.choice([8, 10, 12])
        r = rng.randint(3, m - 1)
        f = sample_r_factor(m, r, seed=40 + trial)
        s = PointSet.from_points(m, f.cells)
        before = generic_line_sizes(s.points)
        out, _ = adjust_k(s, r, r - 2, reserve=2)
        after = generic_line_sizes(out.points)
        for key, cnt in after.items():
            assert cnt <= before.get(key, cnt)


def test_adjust_n_noop_for_zero_slack():
    s = explicit_construct(12, 8)
    out, rep = adjust_n(s, 8, 0)
    assert out == s


def test_adjust_n_rejects_odd_or_unearned_slack():
    s = explicit_construct(12, 8)
    with pytest.raises(ConstructionError):
        adjust_n(s, 8, 3)
    # explicit sets have reserve 0: slack 2 is not covered
    with pytest.raises(ConstructionError):
        adjust_n(s, 8, 2)


@functools.lru_cache(maxsize=1)
def _large_reserve_certificate():
    mat = feasibility_matrix_4x4(400, 240)
    return biuniform_construct(400, 240, mat, seed=7, max_retries=16, target_reserve=15)


def test_adjustment_chain_at_scale():
    cert = _large_reserve_certificate()
    assert cert.certified, cert.report.summary()
    shrunk, rep1 = adjust_k(cert.output, 240, 233, reserve=15)
    assert rep1.passed
    assert rep1.achieved_reserve >= 8
    assert shrunk.is_regular(233)
    grown, rep2 = adjust_n(shrunk, 233, 6)
    assert rep2.passed
    assert grown.n == 403
    assert len(grown) == 233 * 403
    assert grown.is_regular(233)


def test_adjust_n_row_col_exactness_small():
    # earn a small verified slack by shrinking k below the certified bound
    cert = _large_reserve_certificate()
    out, rep = adjust_n(cert.output, 240, 4)
    assert rep.passed
    assert out.n == 402
    assert out.is_regular(240)
    assert len(out) == 240 * 402


def test_pipeline_explicit_route_68_46():
    cert = pipeline(68, 46, seed=0)
    assert cert.certified
    assert [s for s, _ in cert.lineage] == ["explicit"]
    assert len(cert.output) == 3128
    assert cert.report.passed


def test_pipeline_explicit_route_fig_scenario():
    cert = pipeline(16, 11, seed=0)
    assert cert.certified
    assert [s for s, _ in cert.lineage] == ["explicit"]
    assert len(cert.output) == 176


def test_pipeline_replay_is_bit_identical():
    a = pipeline(68, 46, seed=123)
    b = pipeline(68, 46, seed=123)
    assert a.output == b.output
    assert a.output.sorted_xy() == b.output.sorted_xy()


def test_pipeline_randomized_route_end_to_end():
    cert = pipeline(403, 233, seed=11, max_retries=16)
    assert cert.certified
    assert [s for s, _ in cert.lineage] == ["biuniform", "adjust-k", "adjust-n"]
    assert cert.output.n == 403
    assert len(cert.output) == 233 * 403
    assert cert.output.is_regular(233)


def test_pipeline_retries_exhausted_carries_best_effort():
    # reserve 15 is out of reach at k=120 on a 400-grid; the failure
    # must surface the best sample, which is still an exact 120-factor
    with pytest.raises(RetriesExhausted) as exc:
        pipeline(403, 113, seed=7, max_retries=2)
    cert = exc.value.certificate
    assert not cert.certified
    assert cert.output.is_regular(120)
    assert len(cert.per_retry_reserves) == 2


def test_pipeline_strict_mode_checks():
    with pytest.raises(ConstructionError):
        pipeline(50, 40, seed=0, mode="strict")
    with pytest.raises(ConstructionError):
        pipeline(68, 20, seed=0, mode="strict")  # below C*sqrt(n ln n)
    cert = pipeline(68, 46, seed=0, mode="strict", C=1.0)
    assert cert.certified


def test_pipeline_rejects_out_of_range_k():
    with pytest.raises(ConstructionError):
        pipeline(10, 11, seed=0)
    with pytest.raises(ConstructionError):
        pipeline(10, 0, seed=0)


def test_pipeline_too_small_for_randomized_route():
    with pytest.raises(ConstructionError):
        pipeline(10, 5, seed=0)  # rounds to n=8, k=10 > 5n/6
