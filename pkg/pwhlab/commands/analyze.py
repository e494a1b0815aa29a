import argparse
import logging

from pwhlab.export_service import write_json_report
from pwhlab.model import load_model_file
from pwhlab.pipelines import render_text, run_analysis

logger = logging.getLogger(__name__)

# "paper" and "literal" both select every coordinate
ROA_MODES = ("paper", "literal", "refined")


def register(subparsers) -> None:
    parser = subparsers.add_parser("analyze", help="Equilibria, power limits and ROA certificates of a model")
    parser.add_argument("model", help="Model file (JSON)")
    parser.add_argument("--validate", type=int, default=0, metavar="N",
                        help="Monte-Carlo samples used to validate the certificate")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--roa-mode", choices=ROA_MODES, default="paper",
                        help="Index set of the general certificate: every coordinate or the power channels only")
    parser.add_argument("--json", dest="json_path", default=None, help="Also write the report as JSON")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    doc, sys = load_model_file(args.model)
    report = run_analysis(doc, sys, validate=args.validate, seed=args.seed,
                          refined=args.roa_mode == "refined")
    print(render_text(report))
    if args.json_path:
        path = write_json_report(args.json_path, report)
        print(f"Report written to {path}")
    return 0
