"""Point-set constructions: the explicit large-k complement, the
bi-uniform randomized construction, reserve-consuming adjustments of k
and n, and the end-to-end pipeline.

Every construction output is certified by the sweep verifier rather
than trusted; randomized steps are reproducible from a master seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, log, sqrt
from typing import Optional

from .bifactor import (
    BipartiteFactor,
    circulant_factor,
    derive_seed,
    one_factorize,
    sample_r_factor,
)
from .grid import FeasibilityMatrix, GridSpec, PointSet, feasibility_matrix_4x4
from .secants import VerificationReport, verify


class ConstructionError(ValueError):
    """Invalid arguments or broken preconditions for a construction."""


class RetriesExhausted(RuntimeError):
    """All randomized retries failed; carries the best-effort certificate."""

    def __init__(self, certificate: "ConstructionCertificate"):
        super().__init__(
            f"no certified set within {certificate.retries_used} retries; "
            f"best achieved reserve {certificate.best_reserve}"
        )
        self.certificate = certificate


@dataclass(frozen=True)
class ConstructionCertificate:
    """Construction outcome: inputs, the (best) output set, its
    verification report, and the ordered lineage of applied steps."""

    n: int
    k: int
    mode: str
    seed: Optional[int]
    retries_used: int
    certified: bool
    output: PointSet
    report: VerificationReport
    lineage: tuple[tuple[str, dict], ...]
    per_retry_reserves: tuple[int, ...] = ()

    @property
    def best_reserve(self) -> int:
        return self.report.achieved_reserve


def explicit_construct(n: int, k: int) -> PointSet:
    """No-(k+1)-in-line set of size k*n for 2n/3 <= k <= n.

    Builds the complement: two (n-k)-square blocks hugging the two main
    diagonals plus a circulant (n-k)-factor on the rows and columns the
    squares leave empty; the returned set is the grid minus that
    complement and holds exactly k points in every row and column.
    """
    if not (0 <= k <= n):
        raise ConstructionError(f"k={k} outside [0, n={n}]")
    if 3 * k < 2 * n:
        raise ConstructionError(f"k={k} below 2n/3 (n={n}); the filler factor needs n-k <= 2k-n")
    s = n - k
    complement: set[tuple[int, int]] = set()
    # low square on the main diagonal, offset square on the antidiagonal
    for x in range(1, s + 1):
        for y in range(1, s + 1):
            complement.add((x, y))
    for x in range(s + 1, 2 * s + 1):
        for y in range(2 * k - n + 1, k + 1):
            complement.add((x, y))
    covered_cols = 2 * s
    zero_cols = list(range(covered_cols + 1, n + 1))
    zero_rows = [y for y in range(1, n + 1) if not (y <= s or 2 * k - n + 1 <= y <= k)]
    assert len(zero_rows) == len(zero_cols) == 2 * k - n
    complement |= circulant_factor(zero_rows, zero_cols, s)
    points = [
        (x, y)
        for x in range(1, n + 1)
        for y in range(1, n + 1)
        if (x, y) not in complement
    ]
    out = PointSet.from_points(n, points)
    assert len(out) == k * n
    return out


def _translate_block(factor: BipartiteFactor, i: int, j: int, q: int) -> list[tuple[int, int]]:
    x0 = (i - 1) * q
    y0 = (j - 1) * q
    return [(x0 + a, y0 + b) for a, b in factor.cells]


def biuniform_construct(
    n: int,
    k: int,
    matrix: FeasibilityMatrix,
    seed: int,
    max_retries: int = 64,
    target_reserve: int = 0,
) -> ConstructionCertificate:
    """Union of independently sampled per-block factors, retried until a
    sample verifies at the target reserve.

    Block (i, j) of the m x m decomposition receives an r_{i,j}-factor
    sampled with seed derived from (seed, retry, i, j).  Row/column sums
    of the matrix equal to k make every sample an exact k-factor; only
    generic secants are random.  On exhaustion the best-effort sample
    and its report are returned with certified=False.
    """
    if matrix.n != n:
        raise ConstructionError(
            f"matrix is for n={matrix.n} (m={matrix.m} x side {matrix.block_side}), not n={n}"
        )
    if matrix.row_sums() != [k] * matrix.m or matrix.col_sums() != [k] * matrix.m:
        raise ConstructionError(f"matrix row/column sums must all equal k={k}")
    if max_retries < 1:
        raise ConstructionError("max_retries must be >= 1")
    m = matrix.m
    q = matrix.block_side
    best: Optional[tuple[PointSet, VerificationReport]] = None
    reserves = []
    for t in range(max_retries):
        pts: list[tuple[int, int]] = []
        for i in range(1, m + 1):
            for j in range(1, m + 1):
                r = matrix.entry(i, j)
                factor = sample_r_factor(q, r, derive_seed(seed, t, i, j))
                pts.extend(_translate_block(factor, i, j, q))
        sample = PointSet.from_points(n, pts)
        report = verify(sample, k, target_reserve, mode="threshold")
        reserves.append(report.achieved_reserve)
        if best is None or report.achieved_reserve > best[1].achieved_reserve:
            best = (sample, report)
        if report.passed:
            return ConstructionCertificate(
                n=n,
                k=k,
                mode="biuniform",
                seed=seed,
                retries_used=t + 1,
                certified=True,
                output=sample,
                report=report,
                lineage=(("biuniform", {"n": n, "k": k, "m": m, "seed": seed, "retry": t}),),
                per_retry_reserves=tuple(reserves),
            )
    sample, report = best
    return ConstructionCertificate(
        n=n,
        k=k,
        mode="biuniform",
        seed=seed,
        retries_used=max_retries,
        certified=False,
        output=sample,
        report=report,
        lineage=(("biuniform", {"n": n, "k": k, "m": m, "seed": seed, "retry": None}),),
        per_retry_reserves=tuple(reserves),
    )


def _factorization_of(points: PointSet, k: int):
    if not points.is_regular(k):
        raise ConstructionError(f"point set is not a {k}-factor per row/column")
    factor = BipartiteFactor(points.n, k, frozenset(points.points))
    return one_factorize(factor)


def adjust_k(
    points: PointSet,
    k: int,
    k_new: int,
    reserve: int,
) -> tuple[PointSet, VerificationReport]:
    """Shrink a k-factor with verified reserve `reserve` to a
    k_new-factor by removing the first k - k_new extracted 1-factors;
    the survivor keeps reserve reserve - (k - k_new).

    Returns the new set together with its re-verification report (the
    report can only fail if the claimed input reserve was wrong).
    """
    drop = k - k_new
    if drop < 0:
        raise ConstructionError(f"k_new={k_new} exceeds k={k}")
    if drop > reserve:
        raise ConstructionError(
            f"reserve {reserve} insufficient to drop {drop} factors"
        )
    if drop == 0:
        return points, verify(points, k, reserve, mode="threshold")
    factorization = _factorization_of(points, k)
    removed: set[tuple[int, int]] = set()
    for t in range(drop):
        removed |= factorization.cells_of(t)
    remaining = points.points - removed
    out = PointSet(points.grid, remaining)
    report = verify(out, k_new, reserve - drop, mode="threshold")
    return out, report


def adjust_n(
    points: PointSet,
    k: int,
    slack: int,
) -> tuple[PointSet, VerificationReport]:
    """Grow the grid by slack/2 rows and columns, spending an even
    generic-line slack (verified reserve) of the input k-factor.

    For each new index i, one extracted 1-factor donates its k cells of
    smallest x: those cells are erased and re-emitted as a full new
    column (n+i, y) and a full new row (x, n+i).  The result is a
    k-factor of [1, n + slack/2]^2, re-verified at reserve 0.
    """
    if slack < 0 or slack % 2 != 0:
        raise ConstructionError(f"slack must be even and >= 0, got {slack}")
    n = points.n
    if slack == 0:
        return points, verify(points, k, 0, mode="threshold")
    audit = verify(points, k, slack, mode="threshold")
    if not audit.passed:
        raise ConstructionError(
            f"input does not have reserve {slack}: {audit.summary()}"
        )
    if k > n:
        raise ConstructionError("k may not exceed n")
    factorization = _factorization_of(points, k)
    grow = slack // 2
    new_pts = set(points.points)
    for i in range(1, grow + 1):
        matching = factorization.factors[i - 1]
        donated = [(x, matching[x - 1]) for x in range(1, k + 1)]
        for x, y in donated:
            new_pts.remove((x, y))
            new_pts.add((n + i, y))
            new_pts.add((x, n + i))
    n_new = n + grow
    out = PointSet.from_points(n_new, new_pts)
    report = verify(out, k, 0, mode="threshold")
    return out, report


def pipeline(
    n: int,
    k: int,
    seed: int,
    mode: str = "best-effort",
    max_retries: int = 64,
    C: float = 12.5,
) -> ConstructionCertificate:
    """End-to-end construction of a certified no-(k+1)-in-line set of
    size k*n on [1,n]^2.

    Large k (k >= 2n/3) routes to the explicit construction.  Otherwise
    n and k are rounded to multiples of 4 and 10, the bi-uniform
    construction runs at target reserve 15, and the reserve is spent
    shrinking k back and growing n back.  strict mode additionally
    enforces n >= 68 and C*sqrt(n ln n) <= k (the checkable hypotheses
    of the regime where success is guaranteed asymptotically).
    """
    if mode not in ("strict", "best-effort"):
        raise ConstructionError(f"unknown mode {mode!r}")
    if not (1 <= k <= n):
        raise ConstructionError(f"need 1 <= k <= n, got k={k}, n={n}")
    if mode == "strict":
        if n < 68:
            raise ConstructionError(f"strict mode needs n >= 68, got {n}")
        bound = C * sqrt(n * log(n))
        if k < bound:
            raise ConstructionError(
                f"strict mode needs k >= C*sqrt(n ln n) = {bound:.1f}, got {k}"
            )

    if 3 * k >= 2 * n:
        points = explicit_construct(n, k)
        report = verify(points, k, 0, mode="threshold")
        assert report.passed, report.summary()
        return ConstructionCertificate(
            n=n,
            k=k,
            mode=mode,
            seed=seed,
            retries_used=0,
            certified=True,
            output=points,
            report=report,
            lineage=(("explicit", {"n": n, "k": k}),),
        )

    n_round = 4 * (n // 4)
    k_round = 10 * ceil(k / 10)
    if n_round < 4 or k_round < 10:
        raise ConstructionError(f"n'={n} / k'={k} too small for the randomized route")
    if 6 * k_round > 5 * n_round:
        raise ConstructionError(
            f"rounded k={k_round} exceeds 5/6 of rounded n={n_round}"
            + ("" if mode == "best-effort" else " (strict chain broken)")
        )
    if mode == "strict" and n_round < 66:
        raise ConstructionError(f"rounded n={n_round} below 66; 5n/6 chain not guaranteed")

    target_h = 15
    matrix = feasibility_matrix_4x4(n_round, k_round)
    cert = biuniform_construct(
        n_round, k_round, matrix, seed, max_retries=max_retries, target_reserve=target_h
    )
    lineage = list(cert.lineage)
    if not cert.certified:
        raise RetriesExhausted(
            ConstructionCertificate(
                n=n,
                k=k,
                mode=mode,
                seed=seed,
                retries_used=cert.retries_used,
                certified=False,
                output=cert.output,
                report=cert.report,
                lineage=cert.lineage,
                per_retry_reserves=cert.per_retry_reserves,
            )
        )

    h_left = target_h - (k_round - k)
    points, report = adjust_k(cert.output, k_round, k, target_h)
    lineage.append(("adjust-k", {"from": k_round, "to": k, "reserve_left": h_left}))
    if not report.passed:
        raise ConstructionError(f"reserve chain broken after adjust-k: {report.summary()}")

    slack = 2 * (n - n_round)
    if slack > h_left:
        raise ConstructionError(f"slack {slack} exceeds remaining reserve {h_left}")
    points, report = adjust_n(points, k, slack)
    lineage.append(("adjust-n", {"from": n_round, "to": n, "slack": slack}))
    if not report.passed:
        raise ConstructionError(f"reserve chain broken after adjust-n: {report.summary()}")
    assert points.n == n and len(points) == k * n
    return ConstructionCertificate(
        n=n,
        k=k,
        mode=mode,
        seed=seed,
        retries_used=cert.retries_used,
        certified=True,
        output=points,
        report=report,
        lineage=tuple(lineage),
        per_retry_reserves=cert.per_retry_reserves,
    )
