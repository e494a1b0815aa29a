import argparse
import logging

from pwhlab.export_service import write_sweep_csv
from pwhlab.model import load_model_file
from pwhlab.pipelines import run_sweep

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="Sweep one parameter of a single-port or generator model")
    parser.add_argument("model", help="Model file (JSON)")
    parser.add_argument("--param", required=True, help="Parameter name as written in the model file")
    parser.add_argument("--from", dest="start", type=float, required=True)
    parser.add_argument("--to", dest="stop", type=float, required=True)
    parser.add_argument("--steps", type=int, required=True)
    parser.add_argument("--out", required=True, help="CSV output file")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    doc, _ = load_model_file(args.model)
    result = run_sweep(doc, args.param, args.start, args.stop, args.steps)
    write_sweep_csv(args.out, result)
    n_exist = sum(row.existence for row in result.rows)
    print(f"{len(result.rows)} points, {n_exist} with an equilibrium")
    return 0
