"""
splitmix64 mixer used for seed expansion and loop-count draws.
"""
MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 output finalizer"""
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Counter-style splitmix64 stream; `state` is the 64-bit counter"""

    def __init__(self, state: int):
        if not 0 <= state <= MASK64:
            raise ValueError(f"splitmix64 state must be an unsigned 64-bit integer, got {state}")
        self.state = state

    def next(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        return mix64(self.state)

    def unit(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits of the next output"""
        return (self.next() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low: float, high: float) -> float:
        return low + self.unit() * (high - low)

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in the closed interval [low, high] (multiply-shift reduction)"""
        span = high - low + 1
        return low + ((self.next() * span) >> 64)
