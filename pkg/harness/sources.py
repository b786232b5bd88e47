"""
Generator descriptions used by experiments, and the word sources they build.
"""
import logging
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from baselines import HashDrbg, Lcg48
from generator import Bitstream, GeneratorConfig, PendulumRng, WordSource, fill_bitstream

logger = logging.getLogger(__name__)


class GeneratorKind(str, Enum):
    PENDULUM = "pendulum"
    LCG = "lcg"
    HASHDRBG = "hashdrbg"
    CONSTANT = "constant"


class GeneratorSpec(BaseModel):
    """One generator under test; `pendulum` is only read for the pendulum kind"""

    model_config = ConfigDict(frozen=True)

    kind: GeneratorKind
    label: Optional[str] = None
    pendulum: GeneratorConfig = Field(default_factory=GeneratorConfig)
    constant_bit: int = Field(0, ge=0, le=1)

    @property
    def display_label(self) -> str:
        return self.label or self.kind.value


class ConstantSource:
    """Emits the same bit forever"""

    def __init__(self, bit: int = 0):
        self.word = 0xFFFFFFFF if bit else 0

    def next_block(self) -> int:
        return self.word


def build_source(spec: GeneratorSpec, seed: int) -> WordSource:
    if spec.kind is GeneratorKind.PENDULUM:
        return PendulumRng.from_seed(seed, spec.pendulum)
    if spec.kind is GeneratorKind.LCG:
        return Lcg48(seed)
    if spec.kind is GeneratorKind.HASHDRBG:
        return HashDrbg(seed)
    if spec.kind is GeneratorKind.CONSTANT:
        return ConstantSource(spec.constant_bit)
    raise ValueError(f"Unknown generator kind: {spec.kind}")


def generate_stream(spec: GeneratorSpec, seed: int, n_bits: int) -> Bitstream:
    logger.debug(f"[HARNESS] Generating {n_bits} bits from {spec.display_label} (seed={seed})")
    return fill_bitstream(build_source(spec, seed), n_bits)


def default_generators() -> List[GeneratorSpec]:
    """The four-way comparison: frictionless and damped pendulums against two baselines"""
    return [
        GeneratorSpec(kind=GeneratorKind.PENDULUM, label="Pendulums (No Damping)",
                      pendulum=GeneratorConfig(d=1.0)),
        GeneratorSpec(kind=GeneratorKind.PENDULUM, label="Pendulums (Damping)",
                      pendulum=GeneratorConfig(d=0.9999)),
        GeneratorSpec(kind=GeneratorKind.LCG, label="LCG48"),
        GeneratorSpec(kind=GeneratorKind.HASHDRBG, label="HashDRBG"),
    ]
