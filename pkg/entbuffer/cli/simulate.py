"""`entbuffer simulate CONFIG`: Monte Carlo estimates as key,value CSV."""
import argparse
import logging

from entbuffer.core.errors import InsufficientSamplesError
from entbuffer.core.schemas.params import SuccessMode
from entbuffer.core.schemas.run_config import load_run_config
from entbuffer.services.report_service import ReportService
from entbuffer.services.simulation_service import SimulationService

logger = logging.getLogger(__name__)

HEADER = ("key", "value")
EXIT_INSUFFICIENT = 3


def register(subparsers):
    parser = subparsers.add_parser("simulate", help="Discrete-event simulation of the buffer")
    parser.add_argument("config", help="JSON run configuration")
    parser.add_argument("--samples", type=int, default=None, help="Replications N")
    parser.add_argument("--t-sim", dest="t_sim", type=float, default=None, help="Sampling horizon")
    parser.add_argument("--mode", choices=[m.value for m in SuccessMode], default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--threads", type=int, default=None, help="Worker processes (default ENTBUFFER_THREADS)")
    parser.add_argument("--diagnostics", action="store_true", help="Add level histogram, lifetime KS test and convergence check")
    parser.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    config = load_run_config(args.config)
    sim_config = config.sim_config(t_sim=args.t_sim, n_samples=args.samples, seed=args.seed, mode=args.mode)
    reports = ReportService()
    try:
        run = SimulationService(threads=args.threads).simulate(sim_config, diagnostics=args.diagnostics)
    except InsufficientSamplesError as e:
        logger.error(str(e))
        reports.write_csv(args.out, HEADER, [
            ("availability", e.availability),
            ("stderr_availability", e.stderr_availability),
            ("n_samples", e.n_samples),
            ("n_nonempty", e.n_nonempty),
        ])
        return EXIT_INSUFFICIENT

    estimate = run.estimate
    rows = [
        ("avg_fidelity", estimate.avg_fidelity),
        ("stderr_fidelity", estimate.stderr_fidelity),
        ("availability", estimate.availability),
        ("stderr_availability", estimate.stderr_availability),
        ("n_samples", estimate.n_samples),
        ("n_nonempty", estimate.n_nonempty),
        ("clamp_events", estimate.clamp_events),
    ]
    if run.histogram is not None:
        rows.append(("level_tv_distance", run.histogram.tv_distance))
        rows.extend((f"level_{key}", value) for key, value in run.histogram.empirical.items())
    if run.lifetime is not None:
        rows.append(("lifetime_beta", run.lifetime.beta))
        rows.append(("lifetime_ks_statistic", run.lifetime.ks_statistic))
        rows.append(("lifetime_ks_critical_1pct", run.lifetime.critical_value_1pct))
    if run.convergence is not None:
        rows.append(("convergence_fidelity_z", run.convergence.fidelity_z))
        rows.append(("convergence_availability_z", run.convergence.availability_z))
    reports.write_csv(args.out, HEADER, rows)
    if args.out:
        print(reports.render("simulate_summary.txt", {"run": run, "config": sim_config}), end="")
    return 0
