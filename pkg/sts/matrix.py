"""
Binary matrix rank test and the GF(2) linear algebra it needs.
"""
import logging
from typing import Tuple

import numpy as np

from sts.results import DEFAULT_ALPHA, TestResult, as_bits, require_length
from sts.special import igamc

logger = logging.getLogger(__name__)

MATRIX_ROWS = 32
MATRIX_COLS = 32


def gf2_rank(matrix) -> int:
    """Rank over GF(2) by forward elimination with XOR row operations"""
    rows = np.array(matrix, dtype=np.uint8) & 1
    if rows.ndim != 2:
        raise ValueError(f"Expected a 2-d matrix, got shape {rows.shape}")
    n_rows, n_cols = rows.shape

    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        candidates = np.flatnonzero(rows[rank:, col])
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            rows[[rank, pivot]] = rows[[pivot, rank]]
        below = np.flatnonzero(rows[rank + 1:, col]) + rank + 1
        rows[below] ^= rows[rank]
        rank += 1
    return rank


def rank_probability(rank: int, rows: int, cols: int) -> float:
    """Probability that a uniform random rows x cols binary matrix has the given rank"""
    product = 1.0
    for i in range(rank):
        product *= (1 - 2.0 ** (i - rows)) * (1 - 2.0 ** (i - cols)) / (1 - 2.0 ** (i - rank))
    return 2.0 ** (rank * (rows + cols - rank) - rows * cols) * product


def rank_class_probabilities(rows: int = MATRIX_ROWS, cols: int = MATRIX_COLS) -> Tuple[float, float, float]:
    """(full rank, full rank - 1, anything lower)"""
    full = min(rows, cols)
    p_full = rank_probability(full, rows, cols)
    p_minus_one = rank_probability(full - 1, rows, cols)
    return p_full, p_minus_one, 1.0 - p_full - p_minus_one


def rank_test(bits, alpha: float = DEFAULT_ALPHA, enforce_min_length: bool = True) -> TestResult:
    """Rank distribution of disjoint 32x32 matrices filled row by row"""
    eps = as_bits(bits)
    n = eps.size
    size = MATRIX_ROWS * MATRIX_COLS
    require_length("Rank", n, 38 * size, enforce_min_length, floor=size)

    n_matrices = n // size
    matrices = eps[: n_matrices * size].reshape(n_matrices, MATRIX_ROWS, MATRIX_COLS)
    ranks = np.fromiter((gf2_rank(m) for m in matrices), dtype=np.int64, count=n_matrices)

    full = min(MATRIX_ROWS, MATRIX_COLS)
    observed = np.array([
        np.count_nonzero(ranks == full),
        np.count_nonzero(ranks == full - 1),
        np.count_nonzero(ranks < full - 1),
    ])
    expected = n_matrices * np.array(rank_class_probabilities())
    chi_squared = float(np.sum((observed - expected) ** 2 / expected))
    p = igamc(1.0, chi_squared / 2.0)
    return TestResult.from_p_values(
        "Rank", [p], alpha, n_matrices=n_matrices, observed=observed, chi_squared=chi_squared
    )
