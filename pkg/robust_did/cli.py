"""
Command-Line Interface

The robust-did console script: rdid, rdid-dy and rdidstag read a CSV panel, simulate
draws Monte-Carlo datasets or runs coverage studies. Tables go to standard output,
diagnostics to standard error.

Exit codes:
    0 success, 2 usage or configuration, 3 data, 4 estimation or inference, 5 output
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

from .config import BootstrapPlan, RuntimeConfig
from .constants import (
    ALL_CELLS_FAILED_ERROR,
    ALL_PERIODS_FAILED_ERROR,
    CLI_LOG_FORMAT,
    COHORT_FIGURE_TEMPLATE,
    DEFAULT_SEED,
    EXIT_DATA,
    EXIT_ESTIMATION,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    EXPORT_WRITE_ERROR,
    FIGURE_SUFFIX,
    LOG_FIGURE_SKIPPED,
    LOSSTYPE_ERROR,
)
from .core import RobustDID
from .dynamics import DynamicConfig, rdid_by_period
from .enums import CiType, Command, DgpKind, FigureKind, LossType, RdidType
from .exceptions import ConfigError, EstimationError, InferenceError, PanelDataError, ReportError, RoleError
from .panel import PanelDataset, VariableRoles, load_panel
from .report import (
    ResultsTable,
    build_payload,
    cohort_series,
    dynamic_results_table,
    dynamic_series,
    emit_figure,
    profile_series,
    rdid_results_table,
    simulation_results_table,
    staggered_results_table,
    truth_results_table,
    write_csv,
    write_json,
)
from .simulation import DgpSpec, analytic_truths, generate, run_coverage_study
from .staggered import staggered_table
from .utils import format_level


logger = logging.getLogger(__name__)


def _loss_type(value: str) -> LossType:
    for loss in LossType:
        if value.lower() in (loss.label.lower(), str(loss.value)):
            return loss
    raise argparse.ArgumentTypeError(LOSSTYPE_ERROR.format(value=value))


def _add_role_flags(parser: argparse.ArgumentParser, command: Command) -> None:
    parser.add_argument("input", type=Path, help="CSV file with a header row")
    parser.add_argument("--outcome", required=True, help="Outcome variable")
    parser.add_argument("--covars", nargs="+", default=[], help="Covariates for the doubly robust estimand")
    if command is not Command.RDIDSTAG:
        parser.add_argument("--treat", help="Binary treatment indicator")
    parser.add_argument("--post", help="Binary post-period indicator")
    parser.add_argument("--info", help="Information set index (pre-periods or a discrete covariate)")
    if command is not Command.RDID:
        parser.add_argument("--tname", help="Time variable")
    if command is Command.RDIDSTAG:
        parser.add_argument("--gname", help="First treatment period, 0 for never treated")
    parser.add_argument("--cluster", help="Cluster variable for the bootstrap (default: rows)")
    parser.add_argument("--drop-missing", action="store_true", help="Delete rows with missing role values")


def _add_inference_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--level", type=float, help="Confidence level in percent (default 95)")
    parser.add_argument("--brep", type=int, help="Bootstrap replicates (default 500)")
    parser.add_argument("--seed", type=int, help="Bootstrap seed")
    parser.add_argument("--n-jobs", type=int, help="Parallel workers (-1 = all cores; results do not depend on it)")


def _add_output_flags(parser: argparse.ArgumentParser, figure: bool = True) -> None:
    parser.add_argument("--json", type=Path, help="Write the results payload as JSON")
    parser.add_argument("--csv", type=Path, help="Write the results table as CSV")
    if figure:
        parser.add_argument("--figure", help="Figure file stem; figures are written as SVG")
    parser.add_argument("--verbose", action="store_true", help="Debug logging on standard error")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robust-did", description="Robust difference-in-differences estimation")
    subparsers = parser.add_subparsers(dest="command", required=True)

    rdid = subparsers.add_parser(Command.RDID.value, help="RDID bounds, PO-RDID or linear predictions")
    _add_role_flags(rdid, Command.RDID)
    rdid.add_argument("--rdidtype", type=int, choices=[0, 1, 2], default=0, help="0 bounds, 1 PO-RDID, 2 linear predictions")
    rdid.add_argument("--peval", type=float, help="Evaluation point of the linear prediction (rdidtype 2)")
    _add_inference_flags(rdid)
    _add_output_flags(rdid)

    dynamic = subparsers.add_parser(Command.RDID_DY.value, help="rdid for every post-period level")
    _add_role_flags(dynamic, Command.RDID_DY)
    dynamic.add_argument("--rdidtype", type=int, choices=[0, 1, 2], default=0, help="0 bounds, 1 PO-RDID, 2 linear predictions")
    dynamic.add_argument("--peval", type=float, help="Evaluation point of the linear prediction (rdidtype 2)")
    dynamic.add_argument("--citype", type=int, choices=[1, 2, 3], default=1, help="Interval reported with rdidtype 0")
    dynamic.add_argument("--losstype", type=_loss_type, default=LossType.L1, help="Loss reported with rdidtype 1 (default L1)")
    _add_inference_flags(dynamic)
    _add_output_flags(dynamic)

    staggered = subparsers.add_parser(Command.RDIDSTAG.value, help="ATT(g, t) bounds under staggered adoption")
    _add_role_flags(staggered, Command.RDIDSTAG)
    _add_inference_flags(staggered)
    _add_output_flags(staggered)

    simulate = subparsers.add_parser(Command.SIMULATE.value, help="Draw a Monte-Carlo dataset or run a coverage study")
    simulate.add_argument("--kind", choices=[kind.value for kind in DgpKind], required=True, help="Design")
    simulate.add_argument("--n", type=int, default=1000, help="Units per draw")
    simulate.add_argument("--theta", type=float, default=0.0, help="Effect parameter")
    simulate.add_argument("--p", type=float, default=0.5, help="P(X = 1) in the covariate design")
    simulate.add_argument("--horizon", type=int, default=4, help="T of the staggered design")
    simulate.add_argument("--post-periods", type=int, default=1, help="Post periods of the dip design (1 or 2)")
    simulate.add_argument("--cross-section", action="store_true", help="Draw every row as its own unit; --n then counts rows (dip and covariate designs)")
    simulate.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Root seed")
    simulate.add_argument("--export", type=Path, help="Write the drawn dataset as CSV")
    simulate.add_argument("--sims", type=int, help="Run a coverage study with this many simulations")
    simulate.add_argument("--brep", type=int, help="Bootstrap replicates per simulation")
    simulate.add_argument("--level", type=float, help="Confidence level in percent (default 95)")
    simulate.add_argument("--n-jobs", type=int, help="Parallel workers for simulations")
    _add_output_flags(simulate, figure=False)
    return parser


def _roles(args: argparse.Namespace, command: Command) -> VariableRoles:
    return VariableRoles(
        outcome=args.outcome,
        treat=getattr(args, "treat", None),
        post=args.post,
        info=args.info,
        time=getattr(args, "tname", None),
        cohort=getattr(args, "gname", None),
        cluster=args.cluster,
        covariates=tuple(args.covars),
    ).require(command)


def _plan(args: argparse.Namespace, cluster: str | None = None) -> BootstrapPlan:
    overrides: dict[str, Any] = {"cluster": cluster}
    for name, flag in (("replicates", "brep"), ("level", "level"), ("seed", "seed"), ("n_jobs", "n_jobs")):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[name] = value
    return BootstrapPlan(**overrides)


def _options(args: argparse.Namespace, roles: VariableRoles | None, plan: BootstrapPlan) -> dict[str, Any]:
    options: dict[str, Any] = {
        "level": plan.level,
        "brep": plan.replicates,
        "seed": plan.seed,
        "n_jobs": plan.n_jobs,
    }
    if roles is not None:
        options["input"] = str(args.input)
        options["roles"] = roles.to_dict()
        options["drop_missing"] = args.drop_missing
    for name in ("rdidtype", "peval", "citype", "kind", "n", "theta", "p", "horizon", "post_periods", "cross_section", "sims"):
        if hasattr(args, name):
            options[name] = getattr(args, name)
    if hasattr(args, "losstype"):
        options["losstype"] = args.losstype.label
    return options


def _meta(ds: PanelDataset | None, plan: BootstrapPlan, **extra: Any) -> dict[str, Any]:
    meta: dict[str, Any] = {"seed": plan.seed, **extra}
    if ds is not None:
        meta["n_obs"] = ds.n_obs
        meta["n_dropped"] = ds.n_dropped
    return meta


def _run_rdid(args: argparse.Namespace) -> tuple[ResultsTable, dict[str, Any], dict[str, Any]]:
    roles = _roles(args, Command.RDID)
    plan = _plan(args, roles.cluster)
    ds = load_panel(args.input, roles, drop_missing=args.drop_missing)

    result = RobustDID(ds, RdidType(args.rdidtype), peval=args.peval, plan=plan).estimate()
    table = rdid_results_table(result, roles.outcome)
    if args.figure:
        emit_figure(profile_series(result.profile, roles.info), FigureKind.SCATTER, args.figure + FIGURE_SUFFIX)
    return table, _options(args, roles, plan), _meta(ds, plan, failures=result.draws.failures)


def _run_dynamic(args: argparse.Namespace) -> tuple[ResultsTable, dict[str, Any], dict[str, Any]]:
    roles = _roles(args, Command.RDID_DY)
    plan = _plan(args, roles.cluster)
    ds = load_panel(args.input, roles, drop_missing=args.drop_missing)

    config = DynamicConfig(
        rdidtype=RdidType(args.rdidtype),
        citype=CiType(args.citype),
        losstype=args.losstype,
        peval=args.peval,
        plan=plan,
    )
    result = rdid_by_period(ds, config)
    if not any(row.ok for row in result.rows):
        raise EstimationError(ALL_PERIODS_FAILED_ERROR.format(error=result.rows[0].error))

    table = dynamic_results_table(result, roles.time)
    if args.figure:
        emit_figure(dynamic_series(result, roles.time), FigureKind.BAND, args.figure + FIGURE_SUFFIX)
    return table, _options(args, roles, plan), _meta(ds, plan)


def _run_staggered(args: argparse.Namespace) -> tuple[ResultsTable, dict[str, Any], dict[str, Any]]:
    roles = _roles(args, Command.RDIDSTAG)
    plan = _plan(args, roles.cluster)
    ds = load_panel(args.input, roles, drop_missing=args.drop_missing)

    result = staggered_table(ds, plan)
    if not any(cell.ok for cell in result.cells):
        raise EstimationError(ALL_CELLS_FAILED_ERROR.format(error=result.cells[0].error))

    table = staggered_results_table(result)
    if args.figure:
        for g in result.design.groups:
            series = cohort_series(result, g, roles.time)
            if len(series) == 0:
                logger.warning(LOG_FIGURE_SKIPPED, format_level(g))
                continue
            emit_figure(series, FigureKind.BAND, COHORT_FIGURE_TEMPLATE.format(stem=args.figure, g=format_level(g)))
    return table, _options(args, roles, plan), _meta(ds, plan)


def _run_simulate(args: argparse.Namespace) -> tuple[ResultsTable, dict[str, Any], dict[str, Any]]:
    spec = DgpSpec(
        kind=DgpKind(args.kind),
        n=args.n,
        theta=args.theta,
        p=args.p,
        horizon=args.horizon,
        post_periods=args.post_periods,
        seed=args.seed,
        cross_section=args.cross_section,
    )
    plan = _plan(args)

    ds = None
    if args.export is not None:
        ds = generate(spec)
        try:
            ds.to_frame().to_csv(args.export, index=False)
        except OSError as e:
            raise ReportError(EXPORT_WRITE_ERROR.format(path=args.export, error=e)) from e

    if args.sims is not None:
        report = run_coverage_study(spec, args.sims, plan)
        table = simulation_results_table(report)
        meta = _meta(ds, plan, sims=report.sims, failures=report.failures)
    else:
        table = truth_results_table(analytic_truths(spec), spec.kind)
        meta = _meta(ds, plan)
    return table, _options(args, None, plan), meta


_RUNNERS = {
    Command.RDID: _run_rdid,
    Command.RDID_DY: _run_dynamic,
    Command.RDIDSTAG: _run_staggered,
    Command.SIMULATE: _run_simulate,
}


def _configure_logging(verbose: bool) -> None:
    runtime = RuntimeConfig(debug=True) if verbose else RuntimeConfig()
    logging.basicConfig(format=CLI_LOG_FORMAT, stream=sys.stderr)
    logging.getLogger("robust_did").setLevel(runtime.log_level)


def run_command(argv: Sequence[str] | None = None) -> int:
    """
    Parse arguments, run one command and write its outputs.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or EXIT_OK)

    command = Command(args.command)
    try:
        _configure_logging(args.verbose)
        table, options, meta = _RUNNERS[command](args)
        sys.stdout.write(table.render())
        if args.json is not None:
            write_json(build_payload(command, options, table, meta), args.json)
        if args.csv is not None:
            write_csv(table, args.csv)
    except (RoleError, ConfigError) as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except PanelDataError as e:
        logger.error("%s", e)
        return EXIT_DATA
    except (EstimationError, InferenceError) as e:
        logger.error("%s", e)
        return EXIT_ESTIMATION
    except (ReportError, OSError) as e:
        logger.error("%s", e)
        return EXIT_IO
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
