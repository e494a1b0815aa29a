"""
pwhlab command line.

Exit codes: 0 success, 2 invalid input, 3 no equilibrium, 4 state outside
the operating domain, 5 unsupported rendering, 1 any other failure.
"""

import argparse
import logging
import sys
from typing import List, Optional

from pwhlab import __version__, config
from pwhlab.commands import COMMANDS
from pwhlab.errors import (
    DomainError,
    InputError,
    NoEquilibriumError,
    PwhError,
    UnsupportedRenderError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT = 2
EXIT_NO_EQUILIBRIUM = 3
EXIT_DOMAIN = 4
EXIT_RENDER = 5

# Most specific first
EXIT_CODES = (
    (NoEquilibriumError, EXIT_NO_EQUILIBRIUM),
    (DomainError, EXIT_DOMAIN),
    (UnsupportedRenderError, EXIT_RENDER),
    (InputError, EXIT_INPUT),
    (PwhError, EXIT_FAILURE),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwhlab",
        description="Stability analysis of power-controlled port-Hamiltonian systems",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log at INFO level")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def exit_code_for(error: Exception) -> int:
    for error_type, code in EXIT_CODES:
        if isinstance(error, error_type):
            return code
    return EXIT_FAILURE


# Options whose value may start with a minus sign
VECTOR_OPTIONS = ("--x0",)


def join_vector_options(argv: List[str]) -> List[str]:
    """Rewrite `--x0 -1,2` as `--x0=-1,2` so argparse does not take the value for a flag."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if token in VECTOR_OPTIONS and i + 1 < len(argv):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(join_vector_options(argv))
    logging.basicConfig(
        level=logging.INFO if args.verbose else config.LOG_LEVEL,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        return args.handler(args)
    except PwhError as e:
        code = exit_code_for(e)
        print(f"error: {e}", file=sys.stderr)
        logger.debug("Command failed", exc_info=True)
        return code


if __name__ == "__main__":
    sys.exit(main())
