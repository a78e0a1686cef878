"""
bsgcomplexity command line

Example Usage:
==============
    bsgcomplexity complexity --model pure22.txt --gamma 0.5 --mode minima
    bsgcomplexity curve --model pure22.txt --gamma 0.5 --t-min -2.2 --t-max 0.5 --step 0.05
    bsgcomplexity verify --model pure22.txt --gamma 0.5 --n 1002 --samples 5 --seed 7

Exit status: 0 success, 2 usage or validation error, 3 numerical failure,
4 optimizer boundary.
"""

import argparse
import logging
from typing import List, Optional

from bsgcomplexity import __version__
from bsgcomplexity.cli.commands import COMMANDS
from bsgcomplexity.cli.config import FORMAT_CSV, FORMAT_JSON, RunConfig
from bsgcomplexity.error import EXIT_VALIDATION, BsgError
from bsgcomplexity.logger import Logger as log
from bsgcomplexity.logger import setup_logging
from bsgcomplexity.project import __description__, __program__


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the payload here instead of stdout")
    common.add_argument("--format", choices=[FORMAT_CSV, FORMAT_JSON], help="table format")
    common.add_argument("--threads", type=positive_int, help="worker cap (default $BSGCOMPLEXITY_THREADS or 1)")
    common.add_argument("--resolution", type=int, help="density grid points (>= 64)")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    common.add_argument("--log-dir", help="also write a rotating log file here")
    return common


def _model() -> argparse.ArgumentParser:
    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--model", required=True, help="mixture file (term p q beta / pure p q)")
    model.add_argument("--gamma", type=float, required=True, help="species ratio in (0, 1)")
    model.add_argument("--renormalize", action="store_true", help="rescale beta to unit norm")
    return model


def _t_range(parser: argparse.ArgumentParser, t_min: float, t_max: float, step: float) -> None:
    parser.add_argument("--t-min", type=float, default=t_min)
    parser.add_argument("--t-max", type=float, default=t_max)
    parser.add_argument("--step", type=float, default=step)


def build_parser() -> argparse.ArgumentParser:
    """
    build_parser

    :return: argparse.ArgumentParser with one subparser per command
    """
    parser = argparse.ArgumentParser(prog=__program__, description=__description__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)
    common, model = _common(), _model()

    complexity = commands.add_parser("complexity", parents=[common, model], help="optimized complexity")
    complexity.add_argument("--mode", choices=["total", "minima"], default="total")
    complexity.add_argument("--t", type=float, help="energy threshold, default unconstrained")

    curve = commands.add_parser("curve", parents=[common, model], help="complexity curve over t")
    _t_range(curve, -2.2, 0.5, 0.05)

    commands.add_parser("thresholds", parents=[common, model], help="E_inf and ground state bound")

    dens = commands.add_parser("density", parents=[common, model], help="limiting spectral density")
    dens.add_argument("--u", type=float, nargs="+", required=True, help="u0 or u0 u1 u2")
    dens.add_argument("--window", type=float, nargs=2, metavar=("LO", "HI"))

    closed = commands.add_parser("closed-form", parents=[common], help="pure-model closed forms")
    closed.add_argument("--s", type=int, required=True, help="p + q")
    _t_range(closed, -3.0, 1.0, 0.05)

    verify = commands.add_parser("verify", parents=[common, model], help="Monte Carlo checks")
    verify.add_argument("--n", type=int, required=True, help="total dimension N")
    verify.add_argument("--samples", type=positive_int, default=5)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--eigenvalues", help="dump sampled eigenvalues to this CSV")
    return parser


def _log_level(verbose: int) -> int:
    if verbose >= 2:
        return logging.DEBUG
    return logging.INFO if verbose == 1 else logging.WARNING


def main(argv: Optional[List[str]] = None) -> int:
    """
    main

    :param argv: arguments without the program name, defaults to sys.argv[1:]
    :return: int exit status
    """
    args = build_parser().parse_args(argv)
    setup_logging(_log_level(args.verbose), args.log_dir)
    try:
        config = RunConfig.from_args(args)
        return COMMANDS[config.command](config)
    except BsgError as ex:
        log.error(f"{args.command} failed", ex)
        return ex.exit_code
    except OSError as ex:
        log.error(f"{args.command} failed", ex)
        return EXIT_VALIDATION
