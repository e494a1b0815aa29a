import argparse
import logging

from pwhlab.errors import InputError, NoEquilibriumError
from pwhlab.export_service import write_trajectory_csv
from pwhlab.model import load_model_file
from pwhlab.pipelines import resolve_operating_point
from pwhlab.sim import integrate, simulate_ic

logger = logging.getLogger(__name__)


def parse_vector(text: str):
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise InputError(f"Cannot parse state vector {text!r}; expected comma-separated numbers")


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Integrate one trajectory and write it as CSV")
    parser.add_argument("model", help="Model file (JSON)")
    parser.add_argument("--x0", required=True, help="Initial state v1,v2,...")
    parser.add_argument("--t-end", type=float, required=True)
    parser.add_argument("--rel-tol", type=float, default=1e-8)
    parser.add_argument("--abs-tol", type=float, default=1e-10)
    parser.add_argument("--out", required=True, help="CSV output file")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    doc, sys = load_model_file(args.model)
    x0 = parse_vector(args.x0)

    try:
        op = resolve_operating_point(doc, sys)
    except NoEquilibriumError as e:
        logger.warning(f"Simulating without a reference equilibrium: {e}")
        op = None

    if op is None:
        traj = integrate(sys, x0, args.t_end, args.rel_tol, args.abs_tol)
    else:
        _, traj = simulate_ic(sys, op.stable, x0, args.t_end, args.rel_tol, args.abs_tol)

    write_trajectory_csv(args.out, traj)
    print(f"stop reason: {traj.stop_reason.value} at t = {traj.t_stop:.9g} ({traj.n_steps} steps)")
    return 0
