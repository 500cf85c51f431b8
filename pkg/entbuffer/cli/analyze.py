"""`entbuffer analyze CONFIG`: closed-form metrics report."""
import argparse
import logging
from pathlib import Path

from entbuffer.core.schemas.run_config import load_run_config
from entbuffer.services.analysis_service import AnalysisService
from entbuffer.services.report_service import ReportService

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("analyze", help="Availability, average fidelity and noise threshold")
    parser.add_argument("config", help="JSON run configuration")
    parser.add_argument("--out", default=None, help="Also write the report to this file")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = load_run_config(args.config)
    report = AnalysisService().analyze(config)
    text = ReportService().render("analyze_report.txt", {"report": report})
    print(text, end="")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {args.out}")
    return 0
