"""
Report document for experiments and sweeps.

A report is one versioned JSON document (config, results, resources, sweep)
plus a plain-text pass-count table with one row per test and an Overall row.
"""
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from sts.battery import TEST_NAMES
from sts.results import TestResult

logger = logging.getLogger(__name__)

REPORT_FORMAT_VERSION = "1.0"
OVERALL = "Overall"


class StreamResult(BaseModel):
    """Battery outcome for one generated stream"""

    generator: str
    stream_index: int
    seed: int
    bits: int
    results: List[TestResult] = Field(default_factory=list)
    error: Optional[str] = None
    elapsed_seconds: float = 0.0
    path: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


class GeneratorSummary(BaseModel):
    """Pass counts per test; None marks a test skipped on every stream"""

    label: str
    kind: str
    streams: int
    pass_counts: Dict[str, Optional[int]]
    overall: int
    applicable: int
    failed_streams: int = 0
    stream_results: List[StreamResult] = Field(default_factory=list)


class ResourceMeasurement(BaseModel):
    label: str
    n_bits: int
    seconds: float
    bits_per_second: float
    seconds_per_million_bits: float
    peak_extra_bytes: int
    peak_extra_kb: float
    memory_caveat: str


class SweepRow(BaseModel):
    parameter: str
    value: float
    overall: Optional[int] = None
    applicable: int = 0
    error: Optional[str] = None


class SweepTable(BaseModel):
    rows: List[SweepRow] = Field(default_factory=list)
    best: Dict[str, float] = Field(default_factory=dict)
    # "observed" / "not_observed" for score falling as L1/L2 grows; None without two scored ratios
    ratio_verdict: Optional[str] = None


class Report(BaseModel):
    format_version: str = REPORT_FORMAT_VERSION
    generated_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    config: Dict[str, Any] = Field(default_factory=dict)
    results: List[GeneratorSummary] = Field(default_factory=list)
    resources: List[ResourceMeasurement] = Field(default_factory=list)
    sweep: Optional[SweepTable] = None

    def pass_table(self) -> Dict[str, Dict[str, Optional[int]]]:
        """label -> {test name (and Overall) -> pass count}"""
        table = {}
        for summary in self.results:
            row = {name: summary.pass_counts.get(name) for name in TEST_NAMES}
            row[OVERALL] = summary.overall
            table[summary.label] = row
        return table


def _format_count(count: Optional[int]) -> str:
    return "skipped" if count is None else str(count)


def _aligned(header: List[str], rows: List[List[str]]) -> str:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(widths[i]) if i == 0 else cell.rjust(widths[i])
                       for i, cell in enumerate(r)) for r in [header] + rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_table(report: Report) -> str:
    """Aligned pass-count table with resource rows underneath"""
    sections = []

    if report.results:
        labels = [s.label for s in report.results]
        table = report.pass_table()
        rows = [[name] + [_format_count(table[label][name]) for label in labels]
                for name in list(TEST_NAMES) + [OVERALL]]
        rows.append(["Streams"] + [str(s.streams) for s in report.results])
        rows.append(["Applicable test runs"] + [str(s.applicable) for s in report.results])

        resources = {r.label: r for r in report.resources}
        if resources:
            rows.append(["Peak extra memory (KB)"] + [
                f"{resources[label].peak_extra_kb:.1f}" if label in resources else "-" for label in labels])
            rows.append(["Seconds per 10^6 bits"] + [
                f"{resources[label].seconds_per_million_bits:.3f}" if label in resources else "-"
                for label in labels])
        sections.append(_aligned(["Test Name"] + labels, rows))

    if report.sweep is not None:
        sections.append(render_sweep_table(report.sweep))

    return "\n\n".join(sections) + "\n"


def render_sweep_table(table: SweepTable) -> str:
    rows = [[row.parameter, f"{row.value:g}",
             "error" if row.overall is None else str(row.overall),
             str(row.applicable), row.error or ""]
            for row in table.rows]
    text = _aligned(["Parameter", "Value", "Overall", "Applicable", "Error"], rows)
    if table.best:
        text += "\n\nBest values: " + ", ".join(f"{k}={v:g}" for k, v in table.best.items())
    text += f"\nL1/L2 score decreasing with ratio: {table.ratio_verdict or 'undetermined'}"
    return text


def write_report(path: Union[str, Path], report: Report) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    logger.info(f"[HARNESS] Report written to {path}")


def load_report(path: Union[str, Path]) -> Report:
    return Report.model_validate_json(Path(path).read_text(encoding="utf-8"))
