"""Subcommands of the pwhlab command line; each module exposes register(subparsers)."""

from pwhlab.commands import analyze, phase, simulate, sweep

COMMANDS = (analyze, simulate, phase, sweep)
