# Pendulum PRNG - Experiment Harness Module
from harness.experiment import ExperimentConfig, evaluate_stream, run_experiment, summarize_generator  # noqa: F401
from harness.report import (  # noqa: F401
    REPORT_FORMAT_VERSION,
    GeneratorSummary,
    Report,
    ResourceMeasurement,
    StreamResult,
    SweepRow,
    SweepTable,
    load_report,
    render_table,
    write_report,
)
from harness.resources import MEMORY_CAVEAT, measure_resources  # noqa: F401
from harness.sources import (  # noqa: F401
    ConstantSource,
    GeneratorKind,
    GeneratorSpec,
    build_source,
    default_generators,
    generate_stream,
)
from harness.sweep import GridSpecError, SweepGrid, parse_grid, ratio_verdict, sweep  # noqa: F401
