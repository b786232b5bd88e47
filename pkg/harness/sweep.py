"""
One-variable-at-a-time parameter sweep over the pendulum generator.

Grid spec syntax: `g=9.81,1.62;ratio=0.5,1,2;d=1,0.9999` where ratio is
L1/L2 with L2 held at the base value.
"""
import logging
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from generator import GeneratorConfig
from harness.experiment import ExperimentConfig, run_experiment
from harness.report import SweepRow, SweepTable
from harness.sources import GeneratorKind, GeneratorSpec

logger = logging.getLogger(__name__)

GRID_KEYS = {"g": "g_values", "ratio": "length_ratios", "d": "damping_values"}


class GridSpecError(ValueError):
    pass


class SweepGrid(BaseModel):
    model_config = ConfigDict(frozen=True)

    g_values: List[float] = Field(default_factory=list)
    length_ratios: List[float] = Field(default_factory=list)
    damping_values: List[float] = Field(default_factory=list)
    streams: int = Field(5, ge=1)
    bits: int = Field(100_000, ge=128)

    @model_validator(mode="after")
    def _check(self) -> "SweepGrid":
        if not (self.g_values or self.length_ratios or self.damping_values):
            raise ValueError("Sweep grid is empty")
        if any(v <= 0 for v in self.g_values + self.length_ratios):
            raise ValueError("g values and length ratios must be positive")
        if any(not 0 < v <= 1 for v in self.damping_values):
            raise ValueError("Damping values must lie in (0, 1]")
        return self

    def points(self) -> List[Tuple[str, float]]:
        return ([("g", v) for v in self.g_values]
                + [("ratio", v) for v in self.length_ratios]
                + [("d", v) for v in self.damping_values])


def parse_grid(text: str, streams: int = 5, bits: int = 100_000) -> SweepGrid:
    values: Dict[str, List[float]] = {}
    for part in filter(None, (p.strip() for p in text.split(";"))):
        key, sep, raw = part.partition("=")
        key = key.strip()
        if not sep or key not in GRID_KEYS:
            raise GridSpecError(f"Bad grid entry {part!r}; expected one of {sorted(GRID_KEYS)} as key=v1,v2")
        try:
            values[GRID_KEYS[key]] = [float(v) for v in raw.split(",") if v.strip()]
        except ValueError:
            raise GridSpecError(f"Bad number in grid entry {part!r}") from None
    try:
        return SweepGrid(streams=streams, bits=bits, **values)
    except ValidationError as e:
        raise GridSpecError(f"Invalid grid {text!r}: {e}") from None


def _base_pendulum(base: ExperimentConfig) -> GeneratorConfig:
    for spec in base.generators:
        if spec.kind is GeneratorKind.PENDULUM:
            return spec.pendulum
    return GeneratorConfig()


def point_config(base: ExperimentConfig, grid: SweepGrid, parameter: str, value: float) -> ExperimentConfig:
    """Fresh reduced experiment for one grid point; base is left untouched"""
    pendulum = _base_pendulum(base)
    if parameter == "g":
        pendulum = pendulum.model_copy(update={"g": value})
    elif parameter == "ratio":
        pendulum = pendulum.model_copy(update={"L1": value * pendulum.L2})
    elif parameter == "d":
        pendulum = pendulum.model_copy(update={"d": value})
    else:
        raise GridSpecError(f"Unknown sweep parameter {parameter!r}")

    spec = GeneratorSpec(kind=GeneratorKind.PENDULUM, label=f"{parameter}={value:g}", pendulum=pendulum)
    return ExperimentConfig(
        generators=[spec],
        streams_per_generator=grid.streams,
        bits_per_stream=grid.bits,
        test_params=base.test_params,
        base_seed=base.base_seed,
        workers=base.workers,
    )


def _best_values(rows: List[SweepRow]) -> Dict[str, float]:
    best: Dict[str, SweepRow] = {}
    for row in rows:
        if row.overall is None:
            continue
        current = best.get(row.parameter)
        if current is None or row.overall > current.overall:
            best[row.parameter] = row
    return {k: r.value for k, r in best.items()}


def ratio_verdict(rows: List[SweepRow]) -> Optional[str]:
    """Whether the score falls as L1/L2 grows; reported, never enforced"""
    scored = sorted((r.value, r.overall) for r in rows if r.parameter == "ratio" and r.overall is not None)
    if len(scored) < 2:
        return None
    scores = [s for _, s in scored]
    decreasing = all(a >= b for a, b in zip(scores, scores[1:])) and scores[0] > scores[-1]
    return "observed" if decreasing else "not_observed"


def sweep(base: ExperimentConfig, grid: SweepGrid) -> SweepTable:
    rows = []
    for parameter, value in grid.points():
        logger.info(f"[SWEEP] {parameter}={value:g}: {grid.streams} streams x {grid.bits} bits")
        try:
            report = run_experiment(point_config(base, grid, parameter, value))
            summary = report.results[0]
            if summary.failed_streams == summary.streams:
                rows.append(SweepRow(parameter=parameter, value=value, error="all streams failed"))
                continue
            rows.append(SweepRow(parameter=parameter, value=value, overall=summary.overall,
                                 applicable=summary.applicable))
        except Exception as e:
            logger.error(f"[SWEEP] {parameter}={value:g} failed: {e}", exc_info=True)
            rows.append(SweepRow(parameter=parameter, value=value, error=f"{type(e).__name__}: {e}"))

    ordered = sorted(rows, key=lambda r: (r.overall is None, -(r.overall or 0)))
    table = SweepTable(rows=ordered, best=_best_values(rows), ratio_verdict=ratio_verdict(rows))
    logger.info(f"[SWEEP] Best values: {table.best}, ratio verdict: {table.ratio_verdict}")
    return table
