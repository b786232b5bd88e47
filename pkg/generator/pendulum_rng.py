"""
Double-pendulum PRNG.

A 64-bit seed is expanded (splitmix64) into masses and release angles; the
pendulum is simulated and low-order fractional bits of both angles are
emitted as 32-bit words.
"""
import logging
import math
import os
from enum import Enum
from typing import Optional, Protocol, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from dynamics import PendulumParams, PendulumState, StateTuple, advance
from generator.bitstream import Bitstream
from generator.splitmix import MASK64, SplitMix64

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
MAX_LOOPS = 10**6


class GenerationMode(str, Enum):
    PAPER_FAITHFUL = "paper_faithful"
    STREAMING = "streaming"


def _default_step() -> float:
    return float(os.getenv("PRNG_STEP", "1e-3"))


class GeneratorConfig(BaseModel):
    """Simulation and extraction settings for PendulumRng"""

    model_config = ConfigDict(frozen=True)

    mass_range: Tuple[float, float] = (1.0, 300.0)
    loop_range: Tuple[int, int] = (1000, 10000)
    h: float = Field(default_factory=_default_step, gt=0)
    g: float = Field(9.81, gt=0)
    L1: float = Field(1.0, gt=0)
    L2: float = Field(1.0, gt=0)
    d: float = Field(1.0, gt=0, le=1)
    mode: GenerationMode = GenerationMode.STREAMING
    stir_steps: int = Field(64, ge=1)
    # Steps run once at construction; None means loop_range lower bound
    condition_steps: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def _check_ranges(self) -> "GeneratorConfig":
        lo, hi = self.mass_range
        if not 0 < lo <= hi:
            raise ValueError(f"mass_range must satisfy 0 < low <= high, got {self.mass_range}")
        lo, hi = self.loop_range
        if not 1 <= lo <= hi <= MAX_LOOPS:
            raise ValueError(f"loop_range must lie within [1, {MAX_LOOPS}] with low <= high, got {self.loop_range}")
        return self

    @property
    def effective_condition_steps(self) -> int:
        return self.loop_range[0] if self.condition_steps is None else self.condition_steps


class WordSource(Protocol):
    def next_block(self) -> int: ...


def seed_expand(seed: int, config: GeneratorConfig) -> Tuple[PendulumParams, PendulumState, int]:
    """Derive initial conditions from a seed.

    Draw order: m1, m2 over mass_range, then theta1, theta2 over [0, 2*pi).
    Both angular velocities start at zero. Returns the mixer counter left
    after the four draws for later loop-count draws.
    """
    if not 0 <= seed <= MASK64:
        raise ValueError(f"Seed must be an unsigned 64-bit integer, got {seed}")

    mixer = SplitMix64(seed)
    low, high = config.mass_range
    m1 = mixer.uniform(low, high)
    m2 = mixer.uniform(low, high)
    theta1 = mixer.uniform(0.0, TWO_PI)
    theta2 = mixer.uniform(0.0, TWO_PI)

    params = PendulumParams(m1=m1, m2=m2, L1=config.L1, L2=config.L2, g=config.g, d=config.d)
    state = PendulumState(theta1=theta1, theta2=theta2, omega1=0.0, omega2=0.0)
    return params, state, mixer.state


def _angle_field(theta: float) -> int:
    f = (theta % TWO_PI) / TWO_PI
    if f >= 1.0:
        f = 0.0
    # bits 33..48 of the binary-fraction expansion
    return int(f * 281474976710656.0) & 0xFFFF


def extract_bits(state: PendulumState) -> int:
    """32-bit word: 16 low-order fraction bits of each normalized angle"""
    return (_angle_field(state.theta1) << 16) | _angle_field(state.theta2)


def _extract_tuple(y: StateTuple) -> int:
    return (_angle_field(y[0]) << 16) | _angle_field(y[1])


class PendulumRng:
    """Stateful double-pendulum word generator; one instance per caller"""

    def __init__(self, seed: int, config: Optional[GeneratorConfig] = None):
        self.config = config or GeneratorConfig()
        self.seed = seed
        self.params, initial, mixer_state = seed_expand(seed, self.config)
        self._mixer = SplitMix64(mixer_state)
        self._y = advance(self.params, initial.as_tuple(), self.config.h, self.config.effective_condition_steps)
        self.blocks_emitted = 0

        logger.debug(
            f"[GENERATOR] seed={seed} m1={self.params.m1:.6f} m2={self.params.m2:.6f} "
            f"theta1={initial.theta1:.6f} theta2={initial.theta2:.6f} mode={self.config.mode.value}"
        )

    @classmethod
    def from_seed(cls, seed: int, config: Optional[GeneratorConfig] = None) -> "PendulumRng":
        return cls(seed, config)

    @property
    def state(self) -> PendulumState:
        return PendulumState.from_tuple(self._y)

    @property
    def mixer_state(self) -> int:
        return self._mixer.state

    def next_block(self) -> int:
        if self.config.mode is GenerationMode.PAPER_FAITHFUL:
            low, high = self.config.loop_range
            loops = self._mixer.integer(low, high)
        else:
            loops = self.config.stir_steps

        self._y = advance(self.params, self._y, self.config.h, loops)
        self.blocks_emitted += 1
        return _extract_tuple(self._y)


def next_block(rng: WordSource) -> int:
    return rng.next_block()


def fill_bitstream(source: WordSource, n: int) -> Bitstream:
    """Concatenate ceil(n/32) words MSB-first and truncate to exactly n bits"""
    if n < 1:
        raise ValueError(f"Bit count must be at least 1, got {n}")
    words = [source.next_block() for _ in range(-(-n // 32))]
    return Bitstream.from_words(words, n)
