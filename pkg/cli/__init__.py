# Pendulum PRNG - Command Line Module
from cli.main import build_parser, main  # noqa: F401
