"""`entbuffer verify`: run the oracle suite."""
import argparse

from entbuffer.services.report_service import ReportService
from entbuffer.services.simulation_service import SimulationService
from entbuffer.services.verification_service import VerificationService

EXIT_FAILED = 1


def register(subparsers):
    parser = subparsers.add_parser("verify", help="Check every closed form against an independent oracle")
    parser.add_argument("--seed", type=int, default=None, help="Default ENTBUFFER_VERIFY_SEED")
    parser.add_argument("--samples", type=int, default=None, help="Default ENTBUFFER_VERIFY_SAMPLES")
    parser.add_argument("--threads", type=int, default=None)
    parser.add_argument("--no-simulation", dest="simulation", action="store_false",
                        help="Skip the Monte Carlo check")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    service = VerificationService(simulation_service=SimulationService(threads=args.threads),
                                  seed=args.seed, n_samples=args.samples)
    report = service.run(include_simulation=args.simulation)
    print(ReportService().render("verify_report.txt", {"report": report}), end="")
    return 0 if report.passed else EXIT_FAILED
