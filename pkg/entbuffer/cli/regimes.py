"""`entbuffer regimes CONFIG`: Clifford band, universal cap and replacement point."""
import argparse

from entbuffer.core.schemas.run_config import load_run_config
from entbuffer.services.analysis_service import AnalysisService
from entbuffer.services.report_service import ReportService

HEADER = ("q", "avail_lower_p", "f_lower", "avail_upper_p", "f_upper")


def register(subparsers):
    parser = subparsers.add_parser("regimes", help="CSV of the bilocal Clifford operating band")
    parser.add_argument("config", help="JSON run configuration with protocol.rho")
    parser.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    report = AnalysisService().regimes(load_run_config(args.config))
    rows = [(p.q, p.availability_lower, p.f_lower, p.availability_upper, p.f_upper) for p in report.points]
    replacement = report.replacement
    trailer = [
        ("# universal_cap", report.universal_cap),
        ("# replacement_point", replacement.availability_upper, replacement.f_upper),
    ]
    ReportService().write_csv(args.out, HEADER, rows, trailer)
    return 0
