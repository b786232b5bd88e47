#!/usr/bin/env python3
"""
Reduced comparison run: the four default generators, 10 streams of 10^5 bits.

Run from project root or from scripts directory.
"""
import os
import sys
import logging
from pathlib import Path
from dotenv import load_dotenv

# Get the directory where this script is located
SCRIPT_DIR = Path(__file__).resolve().parent
PROJECT_ROOT = SCRIPT_DIR.parent

# Change to project root for imports and .env loading
os.chdir(PROJECT_ROOT)
sys.path.insert(0, str(PROJECT_ROOT))

load_dotenv()

logging.basicConfig(level=logging.WARNING, format='%(levelname)s:%(name)s:%(message)s')
logger = logging.getLogger(__name__)

SEED = int(os.getenv("SMOKE_SEED", "1"))
STREAMS = 10
BITS = 100_000
OUT_DIR = PROJECT_ROOT / "reports"


def main() -> int:
    print("=" * 70)
    print("Smoke Comparison: Pendulums vs LCG48 vs HashDRBG")
    print("=" * 70)
    print()

    try:
        from harness import ExperimentConfig, render_table, run_experiment, write_report

        config = ExperimentConfig(streams_per_generator=STREAMS, bits_per_stream=BITS,
                                  base_seed=SEED, measure_bits=BITS)
        print(f" Step 1: Running {len(config.generators)} generators x {STREAMS} streams x {BITS} bits")
        print(f"   Seeds: {config.stream_seeds()}")
        print(f"   Workers: {config.workers}")

        report = run_experiment(config)

        print()
        print(" Step 2: Results")
        print()
        print(render_table(report))

        OUT_DIR.mkdir(exist_ok=True)
        path = OUT_DIR / f"smoke_compare_seed{SEED}.json"
        write_report(path, report)
        print(f" Report written to {path}")

        failed = sum(s.failed_streams for s in report.results)
        if failed:
            print(f"  WARNING: {failed} streams failed; see the report for errors")
        return 0

    except Exception as e:
        logger.error(f"Smoke comparison failed: {e}", exc_info=True)
        print(f" Error: {e}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
