"""
Discrete Fourier transform (spectral) test.
"""
import math

import numpy as np

from sts.results import DEFAULT_ALPHA, TestResult, as_bits, require_length
from sts.special import erfc


def dft_magnitudes(bits) -> np.ndarray:
    """|DFT| of the +/-1 sequence for the first n/2 frequencies"""
    eps = as_bits(bits)
    x = 2.0 * eps - 1.0
    return np.abs(np.fft.fft(x)[: eps.size // 2])


def dft_test(bits, alpha: float = DEFAULT_ALPHA, enforce_min_length: bool = True) -> TestResult:
    """Count of spectral peaks below the 95% threshold"""
    eps = as_bits(bits)
    n = eps.size
    require_length("Discrete Fourier Transform", n, 1000, enforce_min_length, floor=2)

    magnitudes = dft_magnitudes(eps)
    threshold = math.sqrt(math.log(1 / 0.05) * n)
    n0 = 0.95 * n / 2.0
    n1 = int(np.count_nonzero(magnitudes < threshold))
    d = (n1 - n0) / math.sqrt(n * 0.95 * 0.05 / 4)
    p = erfc(abs(d) / math.sqrt(2))
    return TestResult.from_p_values(
        "Discrete Fourier Transform", [p], alpha, threshold=threshold, n0=n0, n1=n1, d=d
    )
