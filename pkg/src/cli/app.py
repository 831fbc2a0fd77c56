"""
Command-line front end.

Subcommands: bounds, exact, estimate, sweep, verify. Records go to stdout
(or --out), diagnostics to stderr.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 work limit exceeded.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from src.cli.records import OutputRecord, render_records, write_atomically
from src.cli.sweep import SweepSpec, parse_q_list, parse_s_rule, record_params, run_sweep
from src.core.config import CONFIG_ENV_VAR, Config
from src.core.errors import CodeDensityError, ParameterError
from src.core.grid_config_loader import SUITE_NAMES
from src.core.logging_controller import configure_logging, debug, error, info
from src.estimation.estimator import exact_density, first_trial_code, mc_density
from src.estimation.verification import run_suite
from src.geometry.codespace import format_code
from src.metrics import METRIC_NAMES, BaseMetric, get_metric

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

DEFAULT_SEED = 0


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', metavar='PATH',
                        help=f"key=value configuration file (default: ${CONFIG_ENV_VAR})")
    common.add_argument('--debug', action='store_true', help="show debug logging on stderr")
    common.add_argument('--work-limit', type=int, metavar='N',
                        help="maximum work: the larger of C(M,S) candidate codes "
                             "and M(M-1)/2 pair evaluations")
    common.add_argument('--workers', type=int, metavar='N',
                        help="worker processes (default: available CPUs)")
    common.add_argument('--format', choices=('jsonl', 'csv'), default='jsonl')
    common.add_argument('--out', metavar='PATH', help="write records to PATH instead of stdout")
    return common


def _add_point_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--metric', choices=METRIC_NAMES, default='hamming')
    parser.add_argument('-q', type=int, required=True, help="field size")
    parser.add_argument('-n', type=int, required=True, help="length / ambient dimension")
    parser.add_argument('-k', type=int, help="subspace dimension (injection metric)")
    parser.add_argument('-d', type=int, required=True, help="minimum distance")
    parser.add_argument('-S', type=int, required=True, help="code cardinality")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog='codedensity',
        description="Density bounds, exact counts and Monte Carlo estimates for "
                    "block codes (Hamming metric) and subspace codes (injection metric).",
        epilog=f"Environment: {CONFIG_ENV_VAR} names the default configuration file.",
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('bounds', parents=[common], help="closed-form density bounds")
    _add_point_arguments(p)

    p = sub.add_parser('exact', parents=[common], help="exact density by enumeration")
    _add_point_arguments(p)

    p = sub.add_parser('estimate', parents=[common], help="Monte Carlo density estimate")
    _add_point_arguments(p)
    p.add_argument('--trials', type=int, required=True)
    p.add_argument('--seed', type=int, default=DEFAULT_SEED)
    p.add_argument('--dump', metavar='PATH', help="write the first sampled code to PATH")

    p = sub.add_parser('sweep', parents=[common], help="bounds over a list of field sizes")
    p.add_argument('--metric', choices=METRIC_NAMES, default='hamming')
    p.add_argument('-n', type=int, required=True)
    p.add_argument('-k', type=int)
    p.add_argument('-d', type=int, required=True)
    p.add_argument('--q-list', required=True, help="comma-separated field sizes")
    p.add_argument('--s-rule', required=True,
                   help="const:c | gamma:t | list:a,b,... | spread")

    p = sub.add_parser('verify', parents=[common], help="brute-force checks of the counting identities")
    p.add_argument('suite', choices=SUITE_NAMES + ('all',))
    return parser


def load_config(args) -> Config:
    config = Config(args.config)
    config.apply_overrides(
        work_limit=args.work_limit,
        workers=args.workers,
        debug_enabled=True if args.debug else None,
    )
    if config.work_limit < 1:
        raise ParameterError(f"--work-limit must be positive, got {config.work_limit}")
    if config.workers < 1:
        raise ParameterError(f"--workers must be positive, got {config.workers}")
    configure_logging(debug_enabled=config.debug_enabled, log_file=config.log_file)
    return config


def _point(args):
    metric = get_metric(args.metric)
    return metric, metric.make_params(args.q, args.n, args.d, args.S, args.k)


def _bounds_record(command: str, metric: BaseMetric, params) -> OutputRecord:
    interval = metric.density_bounds(params)
    return OutputRecord(
        command=command,
        ambient_size=metric.ambient_size(params),
        ball_size=params.ball_size,
        lower=interval.lower,
        upper=interval.upper,
        lower_raw=interval.lower_raw,
        upper_raw=interval.upper_raw,
        gamma=metric.gamma(params),
        **record_params(metric, params),
    )


def cmd_bounds(args, config: Config) -> List[OutputRecord]:
    metric, params = _point(args)
    return [_bounds_record('bounds', metric, params)]


def cmd_exact(args, config: Config) -> List[OutputRecord]:
    metric, params = _point(args)
    record = _bounds_record('exact', metric, params)
    density = exact_density(metric, params, config.work_limit,
                            config.enumeration_limit, config.workers)
    record.exact_density = density
    record.sandwich_ok = record.lower_raw <= density <= record.upper_raw
    if not record.sandwich_ok:
        error(f"exact density {density} outside [{record.lower_raw}, {record.upper_raw}]")
    return [record]


def cmd_estimate(args, config: Config) -> List[OutputRecord]:
    metric, params = _point(args)
    if args.trials < 1:
        raise ParameterError(f"--trials must be >= 1, got {args.trials}")
    record = _bounds_record('estimate', metric, params)
    result = mc_density(metric, params, args.trials, args.seed,
                        workers=config.workers,
                        block_size=config.mc_block_size,
                        confidence_level=config.confidence_level)
    record.estimate = result.point_estimate
    record.ci_low = result.ci_low
    record.ci_high = result.ci_high
    record.trials = result.trials
    record.successes = result.successes
    record.seed = result.base_seed
    record.confidence_level = result.confidence_level
    if args.dump:
        code = first_trial_code(metric, params, args.seed)
        write_atomically(Path(args.dump), format_code(code) + '\n')
        info(f"Wrote first sampled code to {args.dump}")
    return [record]


def cmd_sweep(args, config: Config) -> List[OutputRecord]:
    spec = SweepSpec(
        metric=args.metric,
        n=args.n,
        d=args.d,
        k=args.k,
        q_values=parse_q_list(args.q_list),
        s_rule=parse_s_rule(args.s_rule),
    )
    records, trend = run_sweep(spec)
    summary = json.dumps(trend.to_dict())
    if args.out:
        print(summary)
    else:
        info(f"trend summary: {summary}")
    return records


def cmd_verify(args, config: Config) -> int:
    reports = run_suite(args.suite, config.work_limit, config.enumeration_limit)
    for report in reports:
        print(report.describe())
    failing = next((r for r in reports if not r.match), None)
    if failing is not None:
        error(f"first failing check: {failing.describe()}")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


COMMANDS = {
    'bounds': cmd_bounds,
    'exact': cmd_exact,
    'estimate': cmd_estimate,
    'sweep': cmd_sweep,
}


def _emit(records: List[OutputRecord], args) -> None:
    text = render_records(records, args.format)
    if args.out:
        write_atomically(Path(args.out), text)
        debug(f"Wrote {len(records)} records to {args.out}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand, return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = load_config(args)
        if args.command == 'verify':
            return cmd_verify(args, config)
        records = COMMANDS[args.command](args, config)
        _emit(records, args)
        if args.command == 'exact' and not all(r.sandwich_ok for r in records):
            return EXIT_VERIFY_FAILED
        return EXIT_OK
    except CodeDensityError as e:
        error(str(e))
        return e.exit_code
    except OSError as e:
        error(f"I/O error: {e}")
        return 1
