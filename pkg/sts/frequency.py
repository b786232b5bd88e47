"""
Frequency-family tests: monobit, frequency within a block, cumulative sums.
"""
import logging
import math

import numpy as np
from scipy.stats import norm

from sts.results import (
    DEFAULT_ALPHA,
    InvalidParameterError,
    TestResult,
    as_bits,
    require_length,
)
from sts.special import erfc, igamc

logger = logging.getLogger(__name__)

FORWARD = "forward"
BACKWARD = "backward"


def frequency_test(bits, alpha: float = DEFAULT_ALPHA, enforce_min_length: bool = True) -> TestResult:
    """Proportion of ones over the whole sequence"""
    eps = as_bits(bits)
    n = eps.size
    require_length("Frequency", n, 100, enforce_min_length)

    s_n = 2 * int(np.count_nonzero(eps)) - n
    s_obs = abs(s_n) / math.sqrt(n)
    p = erfc(s_obs / math.sqrt(2))
    return TestResult.from_p_values("Frequency", [p], alpha, s_n=s_n, s_obs=s_obs)


def block_frequency_test(bits, block_m: int = 20, alpha: float = DEFAULT_ALPHA,
                         enforce_min_length: bool = True) -> TestResult:
    """Proportion of ones within non-overlapping M-bit blocks"""
    eps = as_bits(bits)
    n = eps.size
    require_length("Block Frequency", n, 100, enforce_min_length)
    if block_m < 1:
        raise InvalidParameterError(f"Block Frequency: M must be positive, got {block_m}")
    if enforce_min_length and not 20 <= block_m <= n // 100:
        raise InvalidParameterError(f"Block Frequency: M={block_m} violates 20 <= M <= n/100 for n={n}")

    n_blocks = n // block_m
    if n_blocks < 1:
        raise InvalidParameterError(f"Block Frequency: M={block_m} exceeds n={n}")

    blocks = eps[: n_blocks * block_m].reshape(n_blocks, block_m)
    pi = blocks.sum(axis=1) / block_m
    chi_squared = 4.0 * block_m * float(np.sum((pi - 0.5) ** 2))
    p = igamc(n_blocks / 2.0, chi_squared / 2.0)
    return TestResult.from_p_values(
        "Block Frequency", [p], alpha, n_blocks=n_blocks, chi_squared=chi_squared
    )


def _cusum_p_value(n: int, z: int) -> float:
    sqrt_n = math.sqrt(n)
    ratio = n // z

    # bounds follow C integer division (truncation toward zero)
    k = np.arange(int((-ratio + 1) / 4), int((ratio - 1) / 4) + 1)
    first = np.sum(norm.cdf((4 * k + 1) * z / sqrt_n) - norm.cdf((4 * k - 1) * z / sqrt_n))

    k = np.arange(int((-ratio - 3) / 4), int((ratio - 1) / 4) + 1)
    second = np.sum(norm.cdf((4 * k + 3) * z / sqrt_n) - norm.cdf((4 * k + 1) * z / sqrt_n))

    return 1.0 - float(first) + float(second)


def cumulative_sums_test(bits, mode: str = FORWARD, alpha: float = DEFAULT_ALPHA,
                         enforce_min_length: bool = True) -> TestResult:
    """Maximal excursion of the +/-1 random walk, forward or backward"""
    if mode not in (FORWARD, BACKWARD):
        raise InvalidParameterError(f"Cumulative Sums: unknown mode {mode!r}")
    eps = as_bits(bits)
    n = eps.size
    require_length("Cumulative Sums", n, 100, enforce_min_length)

    walk = 2 * eps.astype(np.int64) - 1
    if mode == BACKWARD:
        walk = walk[::-1]
    z = int(np.max(np.abs(np.cumsum(walk))))
    p = _cusum_p_value(n, z)
    return TestResult.from_p_values("Cumulative Sums", [p], alpha, mode=mode, z=z)


def cumulative_sums_both(bits, alpha: float = DEFAULT_ALPHA, enforce_min_length: bool = True) -> TestResult:
    """Forward and backward sub-tests folded into one two-p-value result"""
    forward = cumulative_sums_test(bits, FORWARD, alpha, enforce_min_length)
    backward = cumulative_sums_test(bits, BACKWARD, alpha, enforce_min_length)
    return TestResult.from_p_values(
        "Cumulative Sums",
        forward.p_values + backward.p_values,
        alpha,
        z_forward=forward.statistics["z"],
        z_backward=backward.statistics["z"],
    )
