"""Command-line front end: one experiment per invocation.

Usage::

    haarlab clt --config experiment.cfg --output results.csv
    haarlab ortho --seed 11 --replicas 20000 --format json
    haarlab sampler-check

Each subcommand runs one experiment kind. Without --config a documented
default configuration is used; --seed, --replicas, --output, and --format
override the config either way. The exit code is 0 only when every record
was produced and written.
"""

from __future__ import annotations

import argparse
import sys

from .config import EXPERIMENTS, ConfigError, parse_config
from .experiments import ExperimentError, run, write_records

__all__ = ["main"]

_DESCRIPTIONS = {
    "clt": "Gaussian limit of the eigenvalue-statistic fluctuation (W1 distance, variance)",
    "rate": "empirical convergence rate of the W1 distance vs matrix size",
    "ortho": "Monte Carlo check of the trace orthogonality relations",
    "coeffs": "Fourier coefficient table and decay fit of the test function",
    "truncation": "optimal Fourier truncation d(n) and its error balance",
    "sampler-check": "unitarity, determinant, and eigensolver diagnostics of the sampler",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="haarlab",
        description="Simulation laboratory for eigenvalue-statistic fluctuations "
        "of Haar unitary matrices.",
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", metavar="PATH", help="experiment config file")
    shared.add_argument("--seed", type=int, metavar="U64", help="override the config seed")
    shared.add_argument(
        "--replicas", type=int, metavar="N", help="override the Monte Carlo replica count"
    )
    shared.add_argument(
        "--output", metavar="PATH", help="write results here instead of stdout"
    )
    shared.add_argument("--format", choices=("csv", "json"), help="output format")
    subparsers = parser.add_subparsers(dest="experiment", required=True)
    for name in EXPERIMENTS:
        subparsers.add_parser(name, parents=[shared], help=_DESCRIPTIONS[name])
    return parser


def _load_config(args: argparse.Namespace):
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ExperimentError(f"cannot read config {args.config!r}: {exc}") from exc
        config = parse_config(text)
        if config.experiment != args.experiment:
            raise ConfigError(
                [
                    f"config declares kind = {config.experiment} but the "
                    f"{args.experiment} subcommand was invoked"
                ]
            )
    else:
        config = parse_config(f"[experiment]\nkind = {args.experiment}\n")
    return config.with_overrides(
        seed=args.seed,
        replicas=args.replicas,
        output_path=args.output,
        format=args.format,
    )


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _load_config(args)
        problems = config.validate()
        if problems:
            raise ConfigError(problems)
        records = run(config)
        write_records(records, config.output_path, config.format)
    except (ConfigError, ExperimentError, ValueError, OSError) as exc:
        print(f"haarlab {args.experiment}: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
