"""
The ten-test battery, run in a fixed order over one shared bitstream.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from sts.frequency import block_frequency_test, cumulative_sums_both, frequency_test
from sts.matrix import rank_test
from sts.patterns import approximate_entropy_test, serial_test
from sts.results import InsufficientLengthError, InvalidParameterError, TestParams, TestResult, as_bits
from sts.runs import longest_run_test, runs_test
from sts.spectral import dft_test
from sts.universal import universal_test

logger = logging.getLogger(__name__)

TestRunner = Callable[[np.ndarray, TestParams], TestResult]

BATTERY: Tuple[Tuple[str, TestRunner], ...] = (
    ("Frequency", lambda e, p: frequency_test(e, p.alpha, p.enforce_min_length)),
    ("Block Frequency", lambda e, p: block_frequency_test(e, p.block_m, p.alpha, p.enforce_min_length)),
    ("Cumulative Sums", lambda e, p: cumulative_sums_both(e, p.alpha, p.enforce_min_length)),
    ("Runs", lambda e, p: runs_test(e, p.alpha, p.enforce_min_length)),
    ("Longest Run of Ones", lambda e, p: longest_run_test(e, p.alpha, p.enforce_min_length)),
    ("Rank", lambda e, p: rank_test(e, p.alpha, p.enforce_min_length)),
    ("Discrete Fourier Transform", lambda e, p: dft_test(e, p.alpha, p.enforce_min_length)),
    ("Universal Statistical", lambda e, p: universal_test(
        e, p.universal_l, p.universal_q, p.alpha, p.enforce_min_length)),
    ("Approximate Entropy", lambda e, p: approximate_entropy_test(e, p.apen_m, p.alpha, p.enforce_min_length)),
    ("Serial", lambda e, p: serial_test(e, p.serial_m, p.alpha, p.enforce_min_length)),
)

TEST_NAMES: Tuple[str, ...] = tuple(name for name, _ in BATTERY)


def _run_one(name: str, runner: TestRunner, eps: np.ndarray, params: TestParams) -> TestResult:
    try:
        result = runner(eps, params)
    except (InsufficientLengthError, InvalidParameterError) as e:
        logger.warning(f"[STS] {name} skipped: {e}")
        return TestResult.skip(name, str(e))
    except Exception as e:
        logger.error(f"[STS] {name} failed: {e}", exc_info=True)
        return TestResult.skip(name, f"error: {type(e).__name__}: {e}")
    logger.debug(f"[STS] {name}: p={result.p_values}, passed={result.passed}")
    return result


def run_battery(bits, params: Optional[TestParams] = None, workers: int = 1) -> List[TestResult]:
    """All ten tests in table order; length failures and per-test errors come back as skipped results"""
    params = params or TestParams()
    eps = as_bits(bits)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_one, name, runner, eps, params) for name, runner in BATTERY]
            return [f.result() for f in futures]
    return [_run_one(name, runner, eps, params) for name, runner in BATTERY]


def summarize(results: List[TestResult]) -> Dict[str, int]:
    passed = sum(1 for r in results if not r.skipped and r.passed)
    failed = sum(1 for r in results if not r.skipped and not r.passed)
    skipped = sum(1 for r in results if r.skipped)
    return {"passed": passed, "failed": failed, "skipped": skipped, "applicable": passed + failed}
