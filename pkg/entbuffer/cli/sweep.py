"""`entbuffer sweep CONFIG --param q`: closed-form metrics over a parameter grid."""
import argparse

from entbuffer.core.schemas.run_config import load_run_config
from entbuffer.services.analysis_service import SWEEP_PARAMETERS, AnalysisService
from entbuffer.services.report_service import ReportService
from entbuffer.settings import get_settings

HEADER = ("param_value", "availability", "avg_fidelity")


def register(subparsers):
    parser = subparsers.add_parser("sweep", help="CSV of availability and fidelity over one parameter")
    parser.add_argument("config", help="JSON run configuration")
    parser.add_argument("--param", default="q", choices=SWEEP_PARAMETERS)
    parser.add_argument("--from", dest="start", type=float, default=0.0)
    parser.add_argument("--to", dest="stop", type=float, default=1.0)
    parser.add_argument("--steps", type=int, default=None, help="Grid points (default ENTBUFFER_Q_GRID_POINTS)")
    parser.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = load_run_config(args.config)
    steps = args.steps or get_settings().q_grid_points
    rows = AnalysisService().sweep(config, args.param, args.start, args.stop, steps)
    ReportService().write_csv(args.out, HEADER, [(r.param_value, r.availability, r.avg_fidelity) for r in rows])
    return 0
