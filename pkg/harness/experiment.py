"""
Generator comparison experiment.

Each generator produces `streams_per_generator` streams from per-stream
seeds (base_seed + stream index unless seeds are given), every stream runs
through the battery, and passes are counted per test.
"""
import asyncio
import logging
import os
import re
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from generator import ASCII, FORMATS, RAW, write_bitstream
from generator.splitmix import MASK64
from harness.report import GeneratorSummary, Report, ResourceMeasurement, StreamResult
from harness.resources import measure_resources
from harness.sources import GeneratorSpec, default_generators, generate_stream
from sts.battery import TEST_NAMES, run_battery
from sts.results import TestParams

logger = logging.getLogger(__name__)


def _default_workers() -> int:
    return max(1, int(os.getenv("PRNG_WORKERS", "1")))


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    generators: List[GeneratorSpec] = Field(default_factory=default_generators)
    streams_per_generator: int = Field(10, ge=1)
    bits_per_stream: int = Field(1_000_000, ge=128)
    test_params: TestParams = Field(default_factory=TestParams)
    base_seed: int = Field(0, ge=0, le=MASK64)
    seeds: Optional[List[int]] = None
    workers: int = Field(default_factory=_default_workers, ge=1)
    # bits for the per-generator resource pass; None skips it
    measure_bits: Optional[int] = Field(None, ge=1)
    persist_dir: Optional[str] = None
    persist_format: str = ASCII

    @model_validator(mode="after")
    def _check(self) -> "ExperimentConfig":
        if not self.generators:
            raise ValueError("At least one generator is required")
        if self.seeds is not None:
            if len(self.seeds) < self.streams_per_generator:
                raise ValueError(
                    f"{len(self.seeds)} seeds given for {self.streams_per_generator} streams per generator"
                )
            if any(not 0 <= s <= MASK64 for s in self.seeds):
                raise ValueError("Seeds must be unsigned 64-bit integers")
        if self.persist_format not in FORMATS:
            raise ValueError(f"persist_format must be one of {FORMATS}, got {self.persist_format!r}")
        return self

    def stream_seeds(self) -> List[int]:
        if self.seeds is not None:
            return list(self.seeds[: self.streams_per_generator])
        return [(self.base_seed + i) & MASK64 for i in range(self.streams_per_generator)]


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_").lower() or "generator"


def stream_path(persist_dir: str, label: str, stream_index: int, fmt: str) -> Path:
    suffix = "bin" if fmt == RAW else "txt"
    return Path(persist_dir) / f"{_slug(label)}_{stream_index:02d}.{suffix}"


def evaluate_stream(spec: GeneratorSpec, stream_index: int, seed: int, n_bits: int,
                    test_params: TestParams, persist_path: Optional[str] = None,
                    persist_format: str = ASCII) -> StreamResult:
    """Generate one stream and run the battery on it; failures are recorded, not raised"""
    label = spec.display_label
    start = time.perf_counter()
    try:
        stream = generate_stream(spec, seed, n_bits)
        if persist_path:
            Path(persist_path).parent.mkdir(parents=True, exist_ok=True)
            write_bitstream(persist_path, stream, persist_format)
        results = run_battery(stream, test_params)
    except Exception as e:
        logger.error(f"[HARNESS] {label} stream {stream_index} (seed={seed}) failed: {e}", exc_info=True)
        return StreamResult(generator=label, stream_index=stream_index, seed=seed, bits=n_bits,
                            error=f"{type(e).__name__}: {e}",
                            elapsed_seconds=time.perf_counter() - start, path=persist_path)

    passed = sum(1 for r in results if not r.skipped and r.passed)
    applicable = sum(1 for r in results if not r.skipped)
    logger.info(f"[HARNESS] {label} stream {stream_index} (seed={seed}): {passed}/{applicable} passed")
    return StreamResult(generator=label, stream_index=stream_index, seed=seed, bits=n_bits,
                        results=results, elapsed_seconds=time.perf_counter() - start, path=persist_path)


def summarize_generator(spec: GeneratorSpec, streams: List[StreamResult]) -> GeneratorSummary:
    pass_counts = {}
    for name in TEST_NAMES:
        outcomes = [r for s in streams if s.ok for r in s.results if r.test_name == name and not r.skipped]
        pass_counts[name] = sum(1 for r in outcomes if r.passed) if outcomes else None

    applicable = sum(1 for s in streams if s.ok for r in s.results if not r.skipped)
    return GeneratorSummary(
        label=spec.display_label,
        kind=spec.kind.value,
        streams=len(streams),
        pass_counts=pass_counts,
        overall=sum(c for c in pass_counts.values() if c is not None),
        applicable=applicable,
        failed_streams=sum(1 for s in streams if not s.ok),
        stream_results=streams,
    )


Job = Tuple[GeneratorSpec, int, int, int, TestParams, Optional[str], str]


def _jobs(config: ExperimentConfig) -> List[Job]:
    jobs = []
    for spec in config.generators:
        for index, seed in enumerate(config.stream_seeds()):
            path = None
            if config.persist_dir:
                path = str(stream_path(config.persist_dir, spec.display_label, index, config.persist_format))
            jobs.append((spec, index, seed, config.bits_per_stream, config.test_params, path,
                         config.persist_format))
    return jobs


async def _run_parallel(jobs: List[Job], workers: int) -> List[StreamResult]:
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [loop.run_in_executor(pool, evaluate_stream, *job) for job in jobs]
        return list(await asyncio.gather(*futures))


def run_experiment(config: ExperimentConfig) -> Report:
    """Run every generator's streams through the battery and count passes"""
    jobs = _jobs(config)
    logger.info(
        f"[HARNESS] Running {len(config.generators)} generators x {config.streams_per_generator} streams "
        f"x {config.bits_per_stream} bits (workers={config.workers})"
    )

    if config.workers > 1:
        stream_results = asyncio.run(_run_parallel(jobs, config.workers))
    else:
        stream_results = [evaluate_stream(*job) for job in jobs]

    summaries = []
    per_generator = config.streams_per_generator
    for i, spec in enumerate(config.generators):
        summary = summarize_generator(spec, stream_results[i * per_generator:(i + 1) * per_generator])
        logger.info(f"[HARNESS] {summary.label}: Overall {summary.overall}/{summary.applicable}")
        summaries.append(summary)

    resources: List[ResourceMeasurement] = []
    if config.measure_bits:
        for spec in config.generators:
            resources.append(measure_resources(spec, config.measure_bits, config.stream_seeds()[0],
                                               allow_short=True))

    return Report(config=config.model_dump(mode="json"), results=summaries, resources=resources)
