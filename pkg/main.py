#!/usr/bin/env python3
"""
pySpecLab

Main entry point: runs the experiments declared in a TOML config, or lists the
experiment catalog.
"""

import argparse
import logging
import sys

from modules.config import ConfigurationError, ValidationError, load_config, parse_config
from modules.core.lab_runner import BatchRunner, setup_logging
from modules.experiments import experiment_schemas, list_experiments
from version import __version__

EXIT_CONFIG_ERROR = 2


def handle_exception(exc_type, exc_value, exc_traceback):
    """Global exception handler"""
    if issubclass(exc_type, KeyboardInterrupt):
        sys.__excepthook__(exc_type, exc_value, exc_traceback)
        return

    logger = logging.getLogger('pySpecLab')
    logger.critical("Uncaught exception", exc_info=(exc_type, exc_value, exc_traceback))


def build_parser():
    parser = argparse.ArgumentParser(
        prog='pyspeclab',
        description="Numerical checks for the spectral geometry of hyperbolic ends and convex sets.")
    parser.add_argument('--config', metavar='PATH', help="TOML run config")
    parser.add_argument('--jobs', type=int, metavar='N', help="experiments run concurrently (overrides [run].jobs)")
    parser.add_argument('--seed', type=int, metavar='U64', help="seed for randomized experiments (overrides [run].seed)")
    parser.add_argument('--out', metavar='DIR', help="output directory (overrides [run].out)")
    parser.add_argument('--filter', metavar='NAME-GLOB', help="run only experiments whose name or id matches")
    parser.add_argument('--list', action='store_true', help="print the experiment catalog and exit")
    parser.add_argument('--version', action='version', version=f"pySpecLab {__version__}")
    return parser


def print_catalog(stream=None):
    stream = stream or sys.stdout
    for entry in list_experiments():
        print(entry.describe(), file=stream)


def apply_overrides(config, args):
    """--jobs/--seed/--out take precedence over the [run] table"""
    if args.jobs is not None:
        if args.jobs < 1:
            raise ValidationError('--jobs', "must be at least 1")
        config.jobs = args.jobs
    if args.seed is not None:
        if not 0 <= args.seed < 2 ** 64:
            raise ValidationError('--seed', "must be an unsigned 64-bit integer")
        config.seed = args.seed
    if args.out is not None:
        config.out = args.out
    return config


def main(argv=None):
    """Main application entry point"""
    sys.excepthook = handle_exception
    args = build_parser().parse_args(argv)

    if args.list:
        print_catalog()
        return 0

    try:
        schemas = experiment_schemas()
        if args.config:
            config = load_config(args.config, schemas)
        else:
            config = parse_config({}, schemas)
        config = apply_overrides(config, args)
    except ValidationError as e:
        print(f"Invalid configuration at '{e.key}': {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ConfigurationError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    logger = setup_logging(config.log_level, config.log_file)
    logger.info(f"pySpecLab {__version__} starting")
    runner = BatchRunner(config, __version__, args.filter)
    return runner.run()


if __name__ == "__main__":
    sys.exit(main())
