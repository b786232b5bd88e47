# Pendulum PRNG - Generator Module
from generator.bitstream import (  # noqa: F401
    ASCII,
    FORMATS,
    RAW,
    Bitstream,
    BitstreamFormatError,
    read_bitstream,
    write_bitstream,
)
from generator.pendulum_rng import (  # noqa: F401
    GenerationMode,
    GeneratorConfig,
    PendulumRng,
    WordSource,
    extract_bits,
    fill_bitstream,
    next_block,
    seed_expand,
)
from generator.splitmix import SplitMix64, mix64  # noqa: F401
