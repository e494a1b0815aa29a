import argparse
import logging

from pwhlab.commands.analyze import ROA_MODES
from pwhlab.errors import UnsupportedRenderError
from pwhlab.export_service import write_phase_csv, write_phase_svg
from pwhlab.model import load_model_file
from pwhlab.pipelines import run_phase

logger = logging.getLogger(__name__)


def parse_grid(text: str):
    try:
        rows, cols = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"Grid must look like RxC, got {text!r}")
    return rows, cols


def register(subparsers) -> None:
    parser = subparsers.add_parser("phase", help="Classify initial conditions and plot the phase plane")
    parser.add_argument("model", help="Model file (JSON)")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--grid", type=parse_grid, metavar="RxC")
    source.add_argument("--samples", type=int, metavar="N")
    parser.add_argument("--t-max", type=float, default=None)
    parser.add_argument("--out", required=True, help="CSV output file")
    parser.add_argument("--svg", default=None, help="SVG phase plot (2-dimensional models only)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--roa-mode", choices=ROA_MODES, default="paper")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    doc, sys = load_model_file(args.model)
    if args.svg and sys.n != 2:
        raise UnsupportedRenderError(f"SVG rendering needs a 2-dimensional state, got n = {sys.n}")

    result = run_phase(doc, sys, grid=args.grid, samples=args.samples, t_max=args.t_max,
                       seed=args.seed, refined=args.roa_mode == "refined")
    write_phase_csv(args.out, result)
    if args.svg:
        write_phase_svg(args.svg, result)

    counts = {tag.value: result.classes.count(tag) for tag in set(result.classes)}
    print(", ".join(f"{name}: {counts[name]}" for name in sorted(counts)))
    return 0
