"""
48-bit linear congruential generator with the multiplier, increment and
seed scrambling of the widely deployed java.util.Random.
"""
import logging
from typing import Tuple

import numpy as np

from generator.bitstream import Bitstream

logger = logging.getLogger(__name__)

MULTIPLIER = 0x5DEECE66D
INCREMENT = 0xB
MASK48 = (1 << 48) - 1


def scramble_seed(seed: int) -> int:
    return (seed ^ MULTIPLIER) & MASK48


def lcg_next(state: int) -> Tuple[int, int]:
    """Advance the recurrence; the output is the top 32 bits of the new state"""
    if not 0 <= state <= MASK48:
        raise ValueError(f"LCG state must be below 2**48, got {state}")
    new_state = (MULTIPLIER * state + INCREMENT) & MASK48
    return new_state, new_state >> 16


class Lcg48:
    def __init__(self, seed: int):
        self.seed = seed
        self.state = scramble_seed(seed)

    def next_block(self) -> int:
        self.state, word = lcg_next(self.state)
        return word

    def next_int(self) -> int:
        """Two's-complement view of the next 32-bit word"""
        word = self.next_block()
        return word - (1 << 32) if word >= (1 << 31) else word


def lcg_low_bit_stream(seed: int, n: int) -> Bitstream:
    """Output bit 0 (state bit 16) of consecutive words; period 2**17"""
    rng = Lcg48(seed)
    bits = np.fromiter((rng.next_block() & 1 for _ in range(n)), dtype=np.uint8, count=n)
    logger.debug(f"[BASELINE] Built low-bit fixture: seed={seed}, n={n}")
    return Bitstream(bits)
