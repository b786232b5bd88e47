"""
Overlapping-pattern tests: approximate entropy and serial.

Pattern counts wrap around: the first m-1 bits are appended to the sequence.
"""
import logging
import math

import numpy as np

from sts.results import (
    DEFAULT_ALPHA,
    InsufficientLengthError,
    InvalidParameterError,
    TestResult,
    as_bits,
)
from sts.special import igamc

logger = logging.getLogger(__name__)


def pattern_counts(eps: np.ndarray, m: int) -> np.ndarray:
    """Occurrences of each m-bit pattern (index = pattern value) with wrap-around"""
    n = eps.size
    if m <= 0:
        return np.array([n], dtype=np.int64)
    extended = np.concatenate([eps, eps[: m - 1]]).astype(np.int64)
    values = np.zeros(n, dtype=np.int64)
    for i in range(m):
        values = (values << 1) | extended[i: i + n]
    return np.bincount(values, minlength=1 << m)


def _phi(eps: np.ndarray, m: int) -> float:
    counts = pattern_counts(eps, m)
    counts = counts[counts > 0] / eps.size
    return float(np.sum(counts * np.log(counts)))


def _psi_squared(eps: np.ndarray, m: int) -> float:
    if m <= 0:
        return 0.0
    counts = pattern_counts(eps, m)
    return (2.0 ** m / eps.size) * float(np.sum(counts.astype(np.float64) ** 2)) - eps.size


def approximate_entropy_test(bits, m: int = 10, alpha: float = DEFAULT_ALPHA,
                             enforce_min_length: bool = True) -> TestResult:
    """Frequency of overlapping m- and (m+1)-bit patterns"""
    eps = as_bits(bits)
    n = eps.size
    if m < 1:
        raise InvalidParameterError(f"Approximate Entropy: m must be positive, got {m}")
    if n < 2:
        raise InsufficientLengthError("Approximate Entropy", n, "n >= 2")
    if enforce_min_length and not m < math.floor(math.log2(n)) - 5:
        raise InsufficientLengthError("Approximate Entropy", n, f"m < floor(log2 n) - 5 with m={m}")

    apen = _phi(eps, m) - _phi(eps, m + 1)
    chi_squared = max(0.0, 2.0 * n * (math.log(2) - apen))
    p = igamc(2.0 ** (m - 1), chi_squared / 2.0)
    return TestResult.from_p_values(
        "Approximate Entropy", [p], alpha, m=m, apen=apen, chi_squared=chi_squared
    )


def serial_test(bits, m: int = 13, alpha: float = DEFAULT_ALPHA, enforce_min_length: bool = True) -> TestResult:
    """Uniformity of overlapping m-bit patterns, two p-values"""
    eps = as_bits(bits)
    n = eps.size
    if m < 2:
        raise InvalidParameterError(f"Serial: m must be at least 2, got {m}")
    if n < 2:
        raise InsufficientLengthError("Serial", n, "n >= 2")
    if enforce_min_length and not 2 < m < math.floor(math.log2(n)) - 2:
        raise InsufficientLengthError("Serial", n, f"2 < m < floor(log2 n) - 2 with m={m}")

    psi_m = _psi_squared(eps, m)
    psi_m1 = _psi_squared(eps, m - 1)
    psi_m2 = _psi_squared(eps, m - 2)
    delta1 = max(0.0, psi_m - psi_m1)
    delta2 = max(0.0, psi_m - 2 * psi_m1 + psi_m2)

    p1 = igamc(2.0 ** (m - 2), delta1 / 2.0)
    p2 = igamc(2.0 ** (m - 3), delta2 / 2.0)
    return TestResult.from_p_values(
        "Serial", [p1, p2], alpha, m=m, psi_squared=[psi_m, psi_m1, psi_m2], delta1=delta1, delta2=delta2
    )
