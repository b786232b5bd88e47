# Pendulum PRNG - Statistical Test Battery Module
from sts.battery import BATTERY, TEST_NAMES, run_battery, summarize  # noqa: F401
from sts.frequency import (  # noqa: F401
    BACKWARD,
    FORWARD,
    block_frequency_test,
    cumulative_sums_both,
    cumulative_sums_test,
    frequency_test,
)
from sts.matrix import gf2_rank, rank_class_probabilities, rank_probability, rank_test  # noqa: F401
from sts.patterns import approximate_entropy_test, pattern_counts, serial_test  # noqa: F401
from sts.results import (  # noqa: F401
    DEFAULT_ALPHA,
    InsufficientLengthError,
    InvalidParameterError,
    TestParams,
    TestResult,
)
from sts.runs import longest_run_test, longest_runs, runs_test  # noqa: F401
from sts.special import erfc, igamc  # noqa: F401
from sts.spectral import dft_magnitudes, dft_test  # noqa: F401
from sts.universal import (  # noqa: F401
    UNIVERSAL_CONSTANTS,
    default_block_length,
    universal_constants,
    universal_test,
)
