"""
Runs and longest-run-of-ones tests.
"""
import logging
import math

import numpy as np

from sts.results import DEFAULT_ALPHA, TestResult, as_bits, require_length
from sts.special import erfc, igamc

logger = logging.getLogger(__name__)

# (block length M, lowest category, highest category, category probabilities)
_LONGEST_RUN_REGIMES = {
    8: (1, 4, [0.2148, 0.3672, 0.2305, 0.1875]),
    128: (4, 9, [0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124]),
    10000: (10, 16, [0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727]),
}


def runs_test(bits, alpha: float = DEFAULT_ALPHA, enforce_min_length: bool = True) -> TestResult:
    """Total number of uninterrupted runs of identical bits"""
    eps = as_bits(bits)
    n = eps.size
    require_length("Runs", n, 100, enforce_min_length, floor=2)

    pi = np.count_nonzero(eps) / n
    tau = 2.0 / math.sqrt(n)
    # a constant sequence fails even when n is too short for tau to catch it
    if abs(pi - 0.5) >= tau or pi * (1 - pi) == 0:
        logger.debug(f"[STS] Runs prerequisite failed: pi={pi:.6f}, tau={tau:.6f}")
        return TestResult.from_p_values("Runs", [0.0], alpha, pi=pi, prerequisite_failed=True)

    v_obs = int(np.count_nonzero(np.diff(eps))) + 1
    p = erfc(abs(v_obs - 2 * n * pi * (1 - pi)) / (2 * math.sqrt(2 * n) * pi * (1 - pi)))
    return TestResult.from_p_values("Runs", [p], alpha, pi=pi, v_obs=v_obs, prerequisite_failed=False)


def longest_runs(blocks: np.ndarray) -> np.ndarray:
    """Longest run of ones in each row of a 2-d 0/1 array"""
    current = np.zeros(blocks.shape[0], dtype=np.int64)
    longest = np.zeros(blocks.shape[0], dtype=np.int64)
    for column in blocks.T:
        current = (current + 1) * column
        np.maximum(longest, current, out=longest)
    return longest


def longest_run_test(bits, alpha: float = DEFAULT_ALPHA, enforce_min_length: bool = True) -> TestResult:
    """Longest run of ones within M-bit blocks against its reference distribution"""
    eps = as_bits(bits)
    n = eps.size
    require_length("Longest Run of Ones", n, 128, enforce_min_length, floor=8)

    if n < 6272:
        block_m = 8
    elif n < 750000:
        block_m = 128
    else:
        block_m = 10000
    low, high, probabilities = _LONGEST_RUN_REGIMES[block_m]

    n_blocks = n // block_m
    blocks = eps[: n_blocks * block_m].reshape(n_blocks, block_m).astype(np.int64)
    categories = np.clip(longest_runs(blocks), low, high) - low
    nu = np.bincount(categories, minlength=len(probabilities))

    expected = n_blocks * np.asarray(probabilities)
    chi_squared = float(np.sum((nu - expected) ** 2 / expected))
    k = len(probabilities) - 1
    p = igamc(k / 2.0, chi_squared / 2.0)
    return TestResult.from_p_values(
        "Longest Run of Ones", [p], alpha, block_m=block_m, n_blocks=n_blocks, nu=nu, chi_squared=chi_squared
    )
