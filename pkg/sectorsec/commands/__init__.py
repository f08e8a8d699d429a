"""
CLI command registry
"""
import argparse

from sectorsec.commands import analytic, compare, simulate
from sectorsec.core.config import settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=settings.PROJECT_NAME,
        description="Secrecy outage analysis of sectoral-multicast AF relay networks",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Include all commands
    analytic.register(subparsers)
    simulate.register(subparsers)
    compare.register(subparsers)
    return parser
