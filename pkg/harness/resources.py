"""
Throughput and memory measurement for a single generator.

Runs serially: one timed pass, then one pass under tracemalloc, since tracing
slows allocation-heavy code enough to distort the timing.
"""
import logging
import time
import tracemalloc

from harness.report import ResourceMeasurement
from harness.sources import GeneratorSpec, generate_stream

logger = logging.getLogger(__name__)

MIN_MEASURE_BITS = 10**6
MEMORY_CAVEAT = (
    "tracemalloc high-water mark of Python allocations during generation, "
    "relative to the traced size at start; excludes interpreter and native allocator overhead"
)


def measure_resources(spec: GeneratorSpec, n_bits: int = MIN_MEASURE_BITS, seed: int = 0,
                      allow_short: bool = False) -> ResourceMeasurement:
    """Generation rate and peak extra memory for n_bits from one seed"""
    if n_bits < MIN_MEASURE_BITS and not allow_short:
        raise ValueError(f"Resource measurement needs at least {MIN_MEASURE_BITS} bits, got {n_bits}")

    start = time.perf_counter()
    generate_stream(spec, seed, n_bits)
    seconds = max(time.perf_counter() - start, 1e-9)

    was_tracing = tracemalloc.is_tracing()
    if not was_tracing:
        tracemalloc.start()
    try:
        tracemalloc.reset_peak()
        baseline, _ = tracemalloc.get_traced_memory()
        generate_stream(spec, seed, n_bits)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        if not was_tracing:
            tracemalloc.stop()

    peak_extra = max(0, peak - baseline)
    rate = n_bits / seconds
    logger.info(
        f"[HARNESS] {spec.display_label}: {rate:,.0f} bits/s, peak extra {peak_extra / 1024:.1f} KB "
        f"over {n_bits} bits"
    )
    return ResourceMeasurement(
        label=spec.display_label,
        n_bits=n_bits,
        seconds=seconds,
        bits_per_second=rate,
        seconds_per_million_bits=seconds * 1e6 / n_bits,
        peak_extra_bytes=peak_extra,
        peak_extra_kb=peak_extra / 1024,
        memory_caveat=MEMORY_CAVEAT,
    )
