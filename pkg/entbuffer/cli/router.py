"""Main CLI router."""
import argparse

from entbuffer import __version__
from entbuffer.cli import analyze, regimes, simulate, sweep, verify

COMMANDS = (analyze, sweep, regimes, simulate, verify)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entbuffer",
        description="Closed-form analysis and simulation of a 1G1B entanglement buffer",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Override ENTBUFFER_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser
