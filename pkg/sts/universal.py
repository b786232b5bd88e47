"""
Maurer's universal statistical test.
"""
import logging
import math
from typing import Optional, Tuple

import numpy as np

from sts.results import (
    DEFAULT_ALPHA,
    InsufficientLengthError,
    InvalidParameterError,
    TestResult,
    as_bits,
)
from sts.special import erfc

logger = logging.getLogger(__name__)

MIN_LENGTH = 387840

# L -> (expectedValue, variance), L = 1..16
UNIVERSAL_CONSTANTS = {
    1: (0.7326495, 0.690),
    2: (1.5374383, 1.338),
    3: (2.4016068, 1.901),
    4: (3.3112247, 2.358),
    5: (4.2534266, 2.705),
    6: (5.2177052, 2.954),
    7: (6.1962507, 3.125),
    8: (7.1836656, 3.238),
    9: (8.1764248, 3.311),
    10: (9.1723243, 3.356),
    11: (10.170032, 3.384),
    12: (11.168765, 3.401),
    13: (12.168070, 3.410),
    14: (13.167693, 3.416),
    15: (14.167488, 3.419),
    16: (15.167379, 3.421),
}

# smallest n for L = 6, 7, ..., 16
_LENGTH_THRESHOLDS = (387840, 904960, 2068480, 4654080, 10342400, 22753280,
                      49643520, 107560960, 231669760, 496435200, 1059061760)


def universal_constants(block_length: int) -> Tuple[float, float]:
    try:
        return UNIVERSAL_CONSTANTS[block_length]
    except KeyError:
        raise InvalidParameterError(f"Universal: no reference constants for L={block_length}") from None


def default_block_length(n: int) -> int:
    """Recommended L for n; 6 below the first threshold"""
    block_length = 6
    for threshold in _LENGTH_THRESHOLDS[1:]:
        if n >= threshold:
            block_length += 1
    return block_length


def universal_test(bits, block_length: Optional[int] = None, init_blocks: Optional[int] = None,
                   alpha: float = DEFAULT_ALPHA, enforce_min_length: bool = True) -> TestResult:
    """Average log2 distance between repeated L-bit blocks"""
    eps = as_bits(bits)
    n = eps.size
    if enforce_min_length and n < MIN_LENGTH:
        raise InsufficientLengthError("Universal Statistical", n, f"n >= {MIN_LENGTH}")

    L = block_length or default_block_length(n)
    expected, variance = universal_constants(L)
    Q = init_blocks or 10 * 2 ** L
    K = n // L - Q
    if K < 1:
        raise InsufficientLengthError("Universal Statistical", n, f"n >= (Q + 1) * L = {(Q + 1) * L}")

    total = Q + K
    weights = 1 << np.arange(L - 1, -1, -1, dtype=np.int64)
    blocks = eps[: total * L].reshape(total, L).astype(np.int64) @ weights

    # previous occurrence of each block value (-1 when none)
    order = np.argsort(blocks, kind="stable")
    sorted_blocks = blocks[order]
    same = sorted_blocks[1:] == sorted_blocks[:-1]
    previous = np.full(total, -1, dtype=np.int64)
    previous[order[1:][same]] = order[:-1][same]

    index = np.arange(Q, total, dtype=np.int64)
    prev = previous[Q:]
    distance = np.where(prev >= 0, index - prev, index + 1)
    f_n = float(np.sum(np.log2(distance))) / K

    c = 0.7 - 0.8 / L + (4 + 32 / L) * K ** (-3 / L) / 15
    sigma = c * math.sqrt(variance / K)
    p = erfc(abs(f_n - expected) / (math.sqrt(2) * sigma))
    return TestResult.from_p_values(
        "Universal Statistical", [p], alpha, L=L, Q=Q, K=K, f_n=f_n, expected=expected, sigma=sigma
    )
