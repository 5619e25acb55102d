"""Exact rank of Gaussian-rational matrices and generic rank of series maps.

The generic rank of a holomorphic map is realized by sampling: evaluate the
Jacobian at pseudo-random Gaussian-rational points and take the maximum of
the exact numeric ranks.  The result is a certified lower bound for the
generic rank and equals it outside a measure-zero set of sample failures;
an optional certification path expands the witnessed minor symbolically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .scalars import GaussianRational
from .series import Series, SeriesMap

# Sampling box: numerators in [-99, 99], denominators in [1, 9] for both the
# real and imaginary parts.  Keeps bignum growth bounded while making an
# accidental rank drop vanishingly unlikely.
NUM_BOUND = 99
DEN_BOUND = 9
DEFAULT_TRIALS = 5
CERTIFY_MAX_SIZE = 6


def exact_rank(matrix: Sequence[Sequence[GaussianRational]]) -> int:
    """Rank over Q(i) by fraction-free-enough Gaussian elimination."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = None
        for r in range(rank, len(rows)):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col].is_zero():
                continue
            f = rows[r][col] / pv
            for c in range(col, ncols):
                rows[r][c] = rows[r][c] - f * rows[rank][c]
        rank += 1
        col += 1
    return rank


def pivot_positions(
    matrix: Sequence[Sequence[GaussianRational]],
) -> List[Tuple[int, int]]:
    """(row, col) pivot positions of a rank-revealing elimination."""
    rows = [list(r) for r in matrix]
    if not rows or not rows[0]:
        return []
    ncols = len(rows[0])
    order = list(range(len(rows)))
    pivots = []
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        pivot = None
        for r in range(rank, len(rows)):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        order[rank], order[pivot] = order[pivot], order[rank]
        pivots.append((order[rank], col))
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col].is_zero():
                continue
            f = rows[r][col] / pv
            for c in range(col, ncols):
                rows[r][c] = rows[r][c] - f * rows[rank][c]
        rank += 1
        col += 1
    return pivots


def random_scalar(rng: random.Random, num_bound: int = NUM_BOUND) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, DEN_BOUND)),
        Fraction(rng.randint(-num_bound, num_bound), rng.randint(1, DEN_BOUND)),
    )


def random_point(
    rng: random.Random, dim: int, num_bound: int = NUM_BOUND
) -> List[GaussianRational]:
    return [random_scalar(rng, num_bound) for _ in range(dim)]


def symbolic_determinant(matrix: List[List[Series]]) -> Series:
    """Laplace expansion of a square matrix of Series (sizes <= 6 in practice)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return matrix[0][0]
    space = matrix[0][0].space
    order = matrix[0][0].order
    total = Series.zero(space, order)
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        minor = [
            [matrix[r][c] for c in range(n) if c != j] for r in range(1, n)
        ]
        sub = symbolic_determinant(minor)
        term = entry * sub
        total = total + term if j % 2 == 0 else total - term
    return total


@dataclass(frozen=True)
class RankResult:
    rank: int
    witness: Optional[list]
    trials: int
    seed: int
    certified: bool


def generic_rank(
    f: SeriesMap,
    wrt=None,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    certify: bool = False,
    num_bound: int = NUM_BOUND,
) -> RankResult:
    """Generic rank of f with respect to the given variables (blocks or names).

    Deterministic in (seed, trials); monotone nondecreasing in trials; the
    evaluation points range over all domain variables, while only the `wrt`
    columns are differentiated.  With certify=True and an attained rank of at
    most CERTIFY_MAX_SIZE, the witnessed minor is expanded symbolically and
    the result is flagged certified when that minor is a nonzero series.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    names = f._resolve_names(wrt)
    jac = [[s.diff(v) for v in names] for s in f.components]
    rng = random.Random(seed)
    best_rank = 0
    best_point = None
    best_matrix = None
    max_rank = min(len(jac), len(names))
    for _ in range(trials):
        point = random_point(rng, f.domain.dim, num_bound)
        matrix = [[entry.evaluate(point) for entry in row] for row in jac]
        r = exact_rank(matrix)
        if r > best_rank or best_point is None:
            best_rank, best_point, best_matrix = r, point, matrix
        if best_rank == max_rank:
            break
    certified = False
    if certify and 0 < best_rank <= CERTIFY_MAX_SIZE and best_matrix is not None:
        pivots = pivot_positions(best_matrix)
        rows = [p[0] for p in pivots]
        cols = [p[1] for p in pivots]
        minor = [[jac[r][c] for c in cols] for r in rows]
        certified = not symbolic_determinant(minor).is_zero()
    return RankResult(best_rank, best_point, trials, seed, certified)


def rank_at_point(f: SeriesMap, wrt, point) -> int:
    """Exact rank of the Jacobian of f at one explicit point."""
    names = f._resolve_names(wrt)
    jac = [[s.diff(v) for v in names] for s in f.components]
    matrix = [[entry.evaluate(point) for entry in row] for row in jac]
    return exact_rank(matrix)


def span_dimension(vectors: Sequence[Sequence[GaussianRational]]) -> int:
    """Dimension of the span of exact row vectors."""
    if not vectors:
        return 0
    return exact_rank(vectors)
