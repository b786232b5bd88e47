"""
Command-line entry point: python -m cli.main {gen,test,compare,sweep,bench}

Exit codes: 0 success, 1 usage error, 2 input/format error, 3 internal failure.
Data goes to stdout (or --out); diagnostics, seeds and config echoes go to stderr.
"""
import argparse
import logging
import os
import sys
import time
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from generator import (
    ASCII,
    FORMATS,
    RAW,
    BitstreamFormatError,
    GenerationMode,
    GeneratorConfig,
    read_bitstream,
    write_bitstream,
)
from generator.splitmix import MASK64
from harness import (
    ExperimentConfig,
    GeneratorKind,
    GeneratorSpec,
    GridSpecError,
    Report,
    default_generators,
    generate_stream,
    measure_resources,
    parse_grid,
    render_table,
    run_experiment,
    sweep,
    write_report,
)
from harness.resources import MIN_MEASURE_BITS
from sts import TestParams, run_battery, summarize

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3

GENERATORS = (GeneratorKind.PENDULUM.value, GeneratorKind.LCG.value, GeneratorKind.HASHDRBG.value)
MODES = {"paper": GenerationMode.PAPER_FAITHFUL, "stream": GenerationMode.STREAMING}
PROJECT_LOGGERS = ("dynamics", "generator", "baselines", "sts", "harness", "cli")


class UsageError(Exception):
    pass


class CliArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def parse_seed(text: str) -> int:
    """Decimal or 0x-prefixed unsigned 64-bit seed"""
    try:
        seed = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= seed <= MASK64:
        raise argparse.ArgumentTypeError(f"seed {text!r} is not an unsigned 64-bit integer")
    return seed


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def configure_logging(verbose: bool = False) -> None:
    level_name = "DEBUG" if verbose else os.getenv("PRNG_LOG_LEVEL", "INFO").upper()
    level = getattr(logging, level_name, logging.INFO)
    logging.basicConfig(level=level, format='%(levelname)s:%(name)s:%(message)s', stream=sys.stderr)

    logging.getLogger("asyncio").setLevel(logging.WARNING)
    logging.getLogger("concurrent.futures").setLevel(logging.WARNING)
    for name in PROJECT_LOGGERS:
        logging.getLogger(name).setLevel(level)


def resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    seed = time.time_ns() & MASK64
    print(f"No --seed given; using wall-clock seed {seed}", file=sys.stderr)
    return seed


def _echo(label: str, value) -> None:
    print(f"{label}: {value}", file=sys.stderr)


def _validated(factory, **kwargs):
    try:
        return factory(**kwargs)
    except ValidationError as e:
        raise UsageError(f"invalid settings: {e}") from None


def _pendulum_config(args) -> GeneratorConfig:
    overrides = {"mode": MODES[args.mode]}
    for flag, field in (("damping", "d"), ("g", "g"), ("l1", "L1"), ("l2", "L2")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field] = value
    return _validated(GeneratorConfig, **overrides)


def _generator_spec(args) -> GeneratorSpec:
    kind = GeneratorKind(args.generator)
    if kind is GeneratorKind.PENDULUM:
        return GeneratorSpec(kind=kind, pendulum=_pendulum_config(args))
    return GeneratorSpec(kind=kind)


def cmd_gen(args) -> int:
    seed = resolve_seed(args.seed)
    spec = _generator_spec(args)
    _echo("seed", seed)
    _echo("bits", args.bits)
    _echo("config", spec.model_dump_json())

    stream = generate_stream(spec, seed, args.bits)
    if args.out:
        write_bitstream(args.out, stream, args.format)
        logger.info(f"[CLI] Wrote {stream.n} bits to {args.out} ({args.format})")
    elif args.format == RAW:
        sys.stdout.buffer.write(stream.to_bytes())
        sys.stdout.buffer.flush()
    else:
        print(stream.to_string())
    return EXIT_OK


def cmd_test(args) -> int:
    params = _validated(
        TestParams,
        alpha=args.alpha,
        block_m=args.block_m,
        serial_m=args.serial_m,
        apen_m=args.apen_m,
        enforce_min_length=not args.allow_short,
    )
    _echo("config", params.model_dump_json())

    stream = read_bitstream(args.input, args.format, args.bits)
    _echo("bits", stream.n)

    results = run_battery(stream, params)
    for r in results:
        if r.skipped:
            print(f"{r.test_name:<28} {'-':>24}  SKIPPED ({r.reason})")
        else:
            p_text = ", ".join(f"{p:.6f}" for p in r.p_values)
            print(f"{r.test_name:<28} {p_text:>24}  {'PASS' if r.passed else 'FAIL'}")

    counts = summarize(results)
    print(f"tests passed: {counts['passed']}, tests failed: {counts['failed']}, "
          f"tests skipped: {counts['skipped']} (alpha={params.alpha})")
    return EXIT_OK


def cmd_compare(args) -> int:
    seed = resolve_seed(args.seed)
    kwargs = dict(
        generators=default_generators(),
        streams_per_generator=args.streams,
        bits_per_stream=args.bits,
        base_seed=seed,
        measure_bits=args.bits,
        persist_dir=args.persist_dir,
    )
    if args.workers is not None:
        kwargs["workers"] = args.workers
    config = _validated(ExperimentConfig, **kwargs)
    _echo("seeds", config.stream_seeds())
    _echo("config", config.model_dump_json())

    report = run_experiment(config)
    table = render_table(report)
    print(table, end="")
    if args.out:
        write_report(args.out, report)
    if args.table:
        with open(args.table, "w", encoding="utf-8") as fh:
            fh.write(table)
    return EXIT_OK


def cmd_sweep(args) -> int:
    seed = resolve_seed(args.seed)
    grid = parse_grid(args.grid, streams=args.streams, bits=args.bits)
    base = _validated(ExperimentConfig, generators=default_generators()[:1], base_seed=seed,
                      streams_per_generator=args.streams, bits_per_stream=args.bits)
    _echo("seed", seed)
    _echo("grid", grid.model_dump_json())

    table = sweep(base, grid)
    report = Report(config={"base": base.model_dump(mode="json"), "grid": grid.model_dump(mode="json")},
                    sweep=table)
    print(render_table(report), end="")
    if args.out:
        write_report(args.out, report)
    return EXIT_OK


def cmd_bench(args) -> int:
    seed = resolve_seed(args.seed)
    spec = _generator_spec(args)
    _echo("seed", seed)
    _echo("config", spec.model_dump_json())
    if args.bits < MIN_MEASURE_BITS:
        logger.warning(f"[CLI] {args.bits} bits is below {MIN_MEASURE_BITS}; rate will be noisy")

    m = measure_resources(spec, args.bits, seed, allow_short=True)
    print(f"generator:               {m.label}")
    print(f"bits:                    {m.n_bits}")
    print(f"bits per second:         {m.bits_per_second:,.0f}")
    print(f"seconds per 10^6 bits:   {m.seconds_per_million_bits:.4f}")
    print(f"peak extra memory (KB):  {m.peak_extra_kb:.1f}")
    print(f"memory note:             {m.memory_caveat}")
    return EXIT_OK


def _add_pendulum_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", choices=sorted(MODES), default="stream",
                        help="pendulum stepping: paper (random loop counts) or stream (fixed stir)")
    parser.add_argument("--damping", type=float, help="pendulum damping multiplier d in (0, 1]")
    parser.add_argument("--g", type=float, help="pendulum gravity")
    parser.add_argument("--l1", type=float, help="pendulum inner link length")
    parser.add_argument("--l2", type=float, help="pendulum outer link length")


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(prog="cli.main", description="Double-pendulum PRNG and randomness test battery")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a bitstream")
    gen.add_argument("--generator", choices=GENERATORS, required=True)
    gen.add_argument("--seed", type=parse_seed, help="u64 seed, decimal or 0x hex (default: wall clock)")
    gen.add_argument("--bits", type=positive_int, required=True)
    gen.add_argument("--out", help="output file (default: stdout)")
    gen.add_argument("--format", choices=FORMATS, default=ASCII)
    _add_pendulum_flags(gen)
    gen.set_defaults(handler=cmd_gen)

    test = sub.add_parser("test", help="run the test battery on a bitstream file")
    test.add_argument("--in", dest="input", required=True, help="bitstream file")
    test.add_argument("--format", choices=FORMATS, default=ASCII)
    test.add_argument("--bits", type=positive_int, help="bit count for RAW input (trims padding)")
    test.add_argument("--alpha", type=float, default=0.01)
    test.add_argument("--block-m", type=positive_int, default=20)
    test.add_argument("--serial-m", type=positive_int, default=13)
    test.add_argument("--apen-m", type=positive_int, default=10)
    test.add_argument("--allow-short", action="store_true", help="only enforce the computable minimum lengths")
    test.set_defaults(handler=cmd_test)

    compare = sub.add_parser("compare", help="four-generator comparison experiment")
    compare.add_argument("--streams", type=positive_int, default=10)
    compare.add_argument("--bits", type=positive_int, default=1_000_000)
    compare.add_argument("--seed", type=parse_seed, help="base seed (default: wall clock)")
    compare.add_argument("--out", help="JSON report path")
    compare.add_argument("--table", help="plain-text table path")
    compare.add_argument("--workers", type=positive_int, help="process pool size (default: PRNG_WORKERS or 1)")
    compare.add_argument("--persist-dir", help="directory for per-stream ASCII bitstream files")
    compare.set_defaults(handler=cmd_compare)

    sweep_cmd = sub.add_parser("sweep", help="one-at-a-time pendulum parameter sweep")
    sweep_cmd.add_argument("--grid", required=True, help="e.g. 'g=9.81,1.62;ratio=0.5,1,2;d=1,0.9999'")
    sweep_cmd.add_argument("--out", help="JSON report path")
    sweep_cmd.add_argument("--streams", type=positive_int, default=5)
    sweep_cmd.add_argument("--bits", type=positive_int, default=100_000)
    sweep_cmd.add_argument("--seed", type=parse_seed, help="base seed (default: wall clock)")
    sweep_cmd.set_defaults(handler=cmd_sweep)

    bench = sub.add_parser("bench", help="generation rate and memory for one generator")
    bench.add_argument("--generator", choices=GENERATORS, required=True)
    bench.add_argument("--bits", type=positive_int, default=MIN_MEASURE_BITS)
    bench.add_argument("--seed", type=parse_seed, help="u64 seed (default: wall clock)")
    bench.add_argument("--mode", choices=sorted(MODES), default="stream")
    bench.set_defaults(handler=cmd_bench)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK

    configure_logging(args.verbose)
    try:
        return args.handler(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (BitstreamFormatError, GridSpecError, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:
        logger.error(f"[CLI] {args.command} failed: {e}", exc_info=True)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
