"""Core grid domain: point sets, primitive directions, block decompositions,
and block-density matrices with an exact expected-load evaluator.

All line identities are integer-only: a line with primitive direction
(vx, vy) is the level set of c = vy*x - vx*y.  Load computations use
exact rational arithmetic throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Optional


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with a*s + b*t = g = gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class GridSpec:
    """The square grid [1, n] x [1, n]."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"grid side must be >= 1, got {self.n}")

    def contains(self, x: int, y: int) -> bool:
        return 1 <= x <= self.n and 1 <= y <= self.n


@dataclass(frozen=True)
class Direction:
    """Primitive direction of a non-axis-parallel lattice line.

    vx >= 1, vy != 0, gcd(vx, |vy|) = 1.  The modulus max(vx, |vy|)
    caps how many grid points a line of this direction can hold:
    at most (n-1)//modulus + 1.
    """

    vx: int
    vy: int

    def __post_init__(self) -> None:
        if self.vx < 1:
            raise ValueError(f"vx must be positive, got {self.vx}")
        if self.vy == 0:
            raise ValueError("vy must be nonzero")
        if gcd(self.vx, abs(self.vy)) != 1:
            raise ValueError(f"({self.vx}, {self.vy}) is not primitive")

    @property
    def modulus(self) -> int:
        return max(self.vx, abs(self.vy))

    def intercept(self, x: int, y: int) -> int:
        return self.vy * x - self.vx * y


def line_points(n: int, direction: Direction, c: int) -> list[tuple[int, int]]:
    """All grid points of [1,n]^2 on the line {vy*x - vx*y = c}, in x order."""
    vx, vy = direction.vx, direction.vy
    _, s, t = ext_gcd(vy, vx)  # vy*s + vx*t = 1
    x0 = s * c
    y0 = -t * c
    lo = _ceil_div(1 - x0, vx)
    hi = (n - x0) // vx
    if vy > 0:
        lo = max(lo, _ceil_div(1 - y0, vy))
        hi = min(hi, (n - y0) // vy)
    else:
        lo = max(lo, _ceil_div(n - y0, vy))
        hi = min(hi, (1 - y0) // vy)
    if lo > hi:
        return []
    return [(x0 + u * vx, y0 + u * vy) for u in range(lo, hi + 1)]


class PointSet:
    """An immutable subset of [1,n]^2 with O(1) membership."""

    __slots__ = ("grid", "_points")

    def __init__(self, grid: GridSpec, points: Iterable[tuple[int, int]]):
        pts = frozenset((int(x), int(y)) for x, y in points)
        n = grid.n
        for x, y in pts:
            if not (1 <= x <= n and 1 <= y <= n):
                raise ValueError(f"point ({x}, {y}) outside [1,{n}]^2")
        self.grid = grid
        self._points = pts

    @classmethod
    def from_points(cls, n: int, points: Iterable[tuple[int, int]]) -> "PointSet":
        return cls(GridSpec(n), points)

    @property
    def points(self) -> frozenset[tuple[int, int]]:
        return self._points

    @property
    def n(self) -> int:
        return self.grid.n

    def __len__(self) -> int:
        return len(self._points)

    def __contains__(self, point: tuple[int, int]) -> bool:
        return point in self._points

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PointSet)
            and self.grid == other.grid
            and self._points == other._points
        )

    def __hash__(self) -> int:
        return hash((self.grid, self._points))

    def __repr__(self) -> str:
        return f"PointSet(n={self.grid.n}, size={len(self._points)})"

    def iter_rowmajor(self) -> Iterator[tuple[int, int]]:
        """Points ordered row by row (by y, then x)."""
        return iter(sorted(self._points, key=lambda p: (p[1], p[0])))

    def sorted_xy(self) -> list[tuple[int, int]]:
        """Points sorted ascending by (x, y); the file-format order."""
        return sorted(self._points)

    def row_counts(self) -> list[int]:
        """counts[y-1] = number of points in row y."""
        counts = [0] * self.grid.n
        for _, y in self._points:
            counts[y - 1] += 1
        return counts

    def col_counts(self) -> list[int]:
        counts = [0] * self.grid.n
        for x, _ in self._points:
            counts[x - 1] += 1
        return counts

    def is_regular(self, r: int) -> bool:
        """Exactly r points in every row and every column."""
        return all(c == r for c in self.row_counts()) and all(
            c == r for c in self.col_counts()
        )


@dataclass(frozen=True)
class SubgridDecomposition:
    """Tiling of [1,n]^2 into m x m square blocks of side n/m.

    Block (i, j), 1-indexed, covers [(i-1)q+1, iq] x [(j-1)q+1, jq]
    with q = n/m.
    """

    grid: GridSpec
    m: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"block count must be >= 1, got {self.m}")
        if self.m > self.grid.n or self.grid.n % self.m != 0:
            raise ValueError(f"m={self.m} must divide n={self.grid.n}")

    @property
    def block_side(self) -> int:
        return self.grid.n // self.m

    def block_of(self, x: int, y: int) -> tuple[int, int]:
        q = self.block_side
        return (x - 1) // q + 1, (y - 1) // q + 1

    def block_range(self, i: int, j: int) -> tuple[tuple[int, int], tuple[int, int]]:
        q = self.block_side
        return ((i - 1) * q + 1, i * q), ((j - 1) * q + 1, j * q)


class FeasibilityMatrix:
    """m x m integer block-density matrix; entry (i, j) is the per-row
    count prescribed for block (i, j) of an m x m decomposition with
    blocks of side `block_side`.
    """

    __slots__ = ("m", "block_side", "entries")

    def __init__(self, m: int, block_side: int, entries: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        if m < 1 or block_side < 1:
            raise ValueError("m and block_side must be positive")
        if len(rows) != m or any(len(row) != m for row in rows):
            raise ValueError(f"entries must be {m}x{m}")
        for row in rows:
            for v in row:
                if not 0 <= v <= block_side:
                    raise ValueError(
                        f"entry {v} outside [0, {block_side}] (block side)"
                    )
        self.m = m
        self.block_side = block_side
        self.entries = rows

    @property
    def n(self) -> int:
        return self.m * self.block_side

    def entry(self, i: int, j: int) -> int:
        return self.entries[i - 1][j - 1]

    def alpha(self, i: int, j: int) -> Fraction:
        """Density of block (i, j): entry / block side."""
        return Fraction(self.entries[i - 1][j - 1], self.block_side)

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.entries]

    def col_sums(self) -> list[int]:
        return [sum(row[j] for row in self.entries) for j in range(self.m)]

    @property
    def max_entry(self) -> int:
        return max(max(row) for row in self.entries)

    def decomposition(self) -> SubgridDecomposition:
        return SubgridDecomposition(GridSpec(self.n), self.m)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FeasibilityMatrix)
            and self.m == other.m
            and self.block_side == other.block_side
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"FeasibilityMatrix(m={self.m}, block_side={self.block_side}, entries={self.entries})"


def feasibility_matrix_4x4(n: int, k: int) -> FeasibilityMatrix:
    """The 4x4 matrix with 2k/10 on the two block diagonals and 3k/10
    elsewhere.  Every row and column sums to k.

    Requires 4 | n, 10 | k and k <= 5n/6 (else the off-diagonal entry
    3k/10 would exceed the block side n/4).
    """
    if n % 4 != 0:
        raise ValueError(f"n={n} must be divisible by 4")
    if k % 10 != 0 or k < 0:
        raise ValueError(f"k={k} must be a nonnegative multiple of 10")
    sparse = 2 * k // 10
    dense = 3 * k // 10
    q = n // 4
    if dense > q:
        raise ValueError(f"k={k} exceeds 5n/6={Fraction(5 * n, 6)}: entry {dense} > block side {q}")
    entries = [
        [sparse if (i == j or i + j == 5) else dense for j in range(1, 5)]
        for i in range(1, 5)
    ]
    return FeasibilityMatrix(4, q, entries)


def feasibility_matrix_3x3(n: int, k: int) -> FeasibilityMatrix:
    """The 3x3 matrix (k/10) * [[3,4,3],[4,2,4],[3,4,3]].

    Requires 3 | n, 10 | k and k <= 5n/6 (entry 4k/10 <= n/3).
    """
    if n % 3 != 0:
        raise ValueError(f"n={n} must be divisible by 3")
    if k % 10 != 0 or k < 0:
        raise ValueError(f"k={k} must be a nonnegative multiple of 10")
    u = k // 10
    q = n // 3
    if 4 * u > q:
        raise ValueError(f"k={k} exceeds 5n/6={Fraction(5 * n, 6)}: entry {4 * u} > block side {q}")
    pattern = [[3, 4, 3], [4, 2, 4], [3, 4, 3]]
    return FeasibilityMatrix(3, q, [[u * v for v in row] for row in pattern])


def expected_load(
    matrix: FeasibilityMatrix,
    dec: Optional[SubgridDecomposition],
    direction: Direction,
    c: int,
) -> Fraction:
    """Exact expected number of selected points on one generic secant:
    sum over blocks of alpha_{i,j} * |block ∩ line|.
    """
    dec = _check_dec(matrix, dec)
    pts = line_points(matrix.n, direction, c)
    if len(pts) < 2:
        raise ValueError(
            f"line (vx={direction.vx}, vy={direction.vy}, c={c}) meets the grid in {len(pts)} point(s)"
        )
    q = matrix.block_side
    entries = matrix.entries
    weight = 0
    for x, y in pts:
        weight += entries[(x - 1) // q][(y - 1) // q]
    return Fraction(weight, q)


def _check_dec(
    matrix: FeasibilityMatrix, dec: Optional[SubgridDecomposition]
) -> SubgridDecomposition:
    if dec is None:
        return matrix.decomposition()
    if dec.m != matrix.m or dec.block_side != matrix.block_side:
        raise ValueError(
            f"decomposition ({dec.m} blocks of side {dec.block_side}) does not match "
            f"matrix ({matrix.m} blocks of side {matrix.block_side})"
        )
    return dec


def _directions_of_modulus(M: int) -> list[Direction]:
    dirs = []
    for b in range(1, M + 1):
        if gcd(M, b) == 1:
            dirs.append(Direction(M, b))
            dirs.append(Direction(M, -b))
    for a in range(1, M):
        if gcd(a, M) == 1:
            dirs.append(Direction(a, M))
            dirs.append(Direction(a, -M))
    return dirs


def _line_starts(n: int, d: Direction) -> Iterator[tuple[int, int]]:
    """One start point per line of direction d: the point whose
    predecessor falls outside the grid."""
    vx, vy = d.vx, d.vy
    for x in range(1, min(vx, n) + 1):
        for y in range(1, n + 1):
            yield x, y
    if vy > 0:
        ys = range(1, min(vy, n) + 1)
    else:
        ys = range(max(1, n + vy + 1), n + 1)
    for x in range(vx + 1, n + 1):
        for y in ys:
            yield x, y


def max_expected_load(
    matrix: FeasibilityMatrix,
    dec: Optional[SubgridDecomposition] = None,
    with_witness: bool = False,
):
    """Exact maximum of the expected load over all generic secants.

    Branch and bound over modulus classes: a modulus-M line holds at
    most (n-1)//M + 1 grid points, so its load is at most
    alpha_max * ((n-1)//M + 1).  Classes are scanned in increasing M
    and the scan stops once that cap cannot beat the best line found.
    Loads are compared as integer numerators over the common
    denominator block_side.
    """
    dec = _check_dec(matrix, dec)
    n = matrix.n
    q = matrix.block_side
    entries = matrix.entries
    rmax = matrix.max_entry
    best_w = 0
    best_line: Optional[tuple[Direction, int]] = None
    for M in range(1, n):
        cap = rmax * ((n - 1) // M + 1)
        if cap <= best_w:
            break
        for d in _directions_of_modulus(M):
            vx, vy = d.vx, d.vy
            for x, y in _line_starts(n, d):
                w = 0
                pts = 0
                cx, cy = x, y
                while 1 <= cx <= n and 1 <= cy <= n:
                    w += entries[(cx - 1) // q][(cy - 1) // q]
                    pts += 1
                    cx += vx
                    cy += vy
                if pts >= 2 and w > best_w:
                    best_w = w
                    best_line = (d, vy * x - vx * y)
    load = Fraction(best_w, q)
    if with_witness:
        return load, best_line
    return load


@dataclass(frozen=True)
class FeasibilityCheck:
    """Outcome of a feasibility test.  On failure, `witness` is either
    ("row", i) / ("col", j) for a bad marginal sum, or
    ("line", direction, c, load) for an overloaded secant."""

    ok: bool
    witness: Optional[tuple] = None


def is_feasible(matrix: FeasibilityMatrix, k: int, delta) -> FeasibilityCheck:
    """True iff every row and column of the matrix sums to k and the
    maximum expected secant load is at most delta*k.

    Pass delta as a Fraction (or int/str) for an exact comparison.
    """
    delta = Fraction(delta)
    if delta >= 1:
        raise ValueError(f"delta must be < 1, got {delta}")
    for i, s in enumerate(matrix.row_sums(), start=1):
        if s != k:
            return FeasibilityCheck(False, ("row", i))
    for j, s in enumerate(matrix.col_sums(), start=1):
        if s != k:
            return FeasibilityCheck(False, ("col", j))
    load, line = max_expected_load(matrix, with_witness=True)
    if load > delta * k:
        d, c = line
        return FeasibilityCheck(False, ("line", d, c, load))
    return FeasibilityCheck(True)
