# Pendulum PRNG - Baseline Generators Module
from baselines.hash_drbg import HashDrbg, hashdrbg_next, sha1_digest  # noqa: F401
from baselines.lcg import Lcg48, lcg_low_bit_stream, lcg_next, scramble_seed  # noqa: F401
