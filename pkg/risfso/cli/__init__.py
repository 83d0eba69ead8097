"""Command-line front end: ``risfso sweep | validate | presets``."""

import argparse
import logging
import os
import sys

from risfso.cli.config import (
    FORMATS,
    SweepSpec,
    apply_overrides,
    load_config,
    parse_config,
)
from risfso.cli.presets import PRESETS, load_preset, preset_names, show_preset
from risfso.cli.sweep import evaluate_point, run_sweep
from risfso.cli.validation import LEVELS, run_validation
from risfso.errors import ConfigError, RisFsoError
from risfso.montecarlo import MODES
from risfso.results import TOOL_VERSION

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def build_parser():
    parser = argparse.ArgumentParser(
        prog="risfso",
        description="Closed-form, asymptotic and Monte Carlo metrics of "
        "RIS-assisted FSO links.",
    )
    parser.add_argument(
        "--version", action="version", version=f"risfso {TOOL_VERSION}"
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser("sweep", help="evaluate a sweep config")
    sweep.add_argument("config", help="TOML file or preset name (fig2..fig8)")
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--samples", type=int)
    sweep.add_argument("--mode", choices=MODES)
    sweep.add_argument("--out")
    sweep.add_argument("--format", choices=FORMATS, dest="fmt")
    sweep.add_argument("--threads", type=int)

    validate = commands.add_parser("validate", help="run acceptance checks")
    validate.add_argument("--level", choices=sorted(LEVELS), default="quick")
    validate.add_argument("--seed", type=int, default=0)
    validate.add_argument("--out")
    validate.add_argument("--format", choices=FORMATS, dest="fmt")
    validate.add_argument("--threads", type=int)
    validate.add_argument(
        "--tolerance-scale", type=float, default=1.0, help=argparse.SUPPRESS
    )

    presets = commands.add_parser("presets", help="list or show presets")
    actions = presets.add_subparsers(dest="action", required=True)
    actions.add_parser("list")
    show = actions.add_parser("show")
    show.add_argument("name")
    return parser


def configure_logging(verbose):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def _emit(report, path, fmt):
    if path:
        report.write(path, fmt)
        logger.info("wrote %d row(s) to %s", len(report), path)
    else:
        sys.stdout.write(report.render(fmt))


def _load_specs(target):
    if os.path.exists(target):
        return load_config(target)
    if target in PRESETS:
        return load_preset(target)
    names = ", ".join(preset_names())
    raise ConfigError(
        f"{target!r} is neither a config file nor a preset ({names})"
    )


def _sweep(args):
    specs = apply_overrides(
        _load_specs(args.config),
        seed=args.seed,
        samples=args.samples,
        mode=args.mode,
        out=args.out,
        fmt=args.fmt,
    )
    report = run_sweep(specs, threads=args.threads)
    first = specs[0]
    _emit(report, first.output_path, first.output_format)
    return EXIT_OK


def _validate(args):
    report = run_validation(
        level=args.level,
        seed=args.seed,
        tolerance_scale=args.tolerance_scale,
        threads=args.threads,
    )
    _emit(report, args.out, args.fmt or "csv")
    for row in report.advisories:
        logger.warning("ADVISORY %s: %s", row["check"], row["detail"])
    if not report.passed:
        for row in report.failures:
            logger.error("FAILED %s: %s", row["check"], row["detail"])
        return EXIT_FAILURE
    return EXIT_OK


def _presets(args):
    if args.action == "list":
        sys.stdout.write("\n".join(preset_names()) + "\n")
    else:
        sys.stdout.write(show_preset(args.name))
    return EXIT_OK


COMMANDS = {
    "sweep": _sweep,
    "validate": _validate,
    "presets": _presets,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        for path, message in exc.diagnostics:
            logger.error("config %s: %s", path or "<root>", message)
        return EXIT_CONFIG
    except RisFsoError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_FAILURE


__all__ = [
    "SweepSpec",
    "parse_config",
    "load_config",
    "apply_overrides",
    "load_preset",
    "show_preset",
    "preset_names",
    "evaluate_point",
    "run_sweep",
    "run_validation",
    "build_parser",
    "main",
]
