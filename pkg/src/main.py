#!/usr/bin/env python3
# src/main.py

import argparse
import os
import sys

# Add the parent directory to the Python path so `src` imports work when run as a script
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src import __version__
from src.hilbert_core.operators import DimensionLimitError
from src.reporting.report_schema import ConfigValidator, ReportValidator
from src.representations.encoding import encoding_to_dict
from src.resource_profiler.costs import traces_to_csv
from src.utils.config import DEFAULT_CONFIG, Config, load_config
from src.utils.file_handler import FileHandler
from src.utils.logger import get_logger, setup_logger
from src.verification_controller import ARITHMETIC_OPS, ENCODINGS, PROFILE_OPS, SCHEMES, VerificationController

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

VERIFY_COMMANDS = ("build", "verify-properties", "verify-axioms", "verify-arithmetic", "certify-entanglement", "report")

logger = get_logger("src")


class ConfigError(ValueError):
    """Configuration file, override or output option is unusable."""


def parse_n(text):
    """'3' -> [3]; '2..5' -> [2, 3, 4, 5]."""
    try:
        if ".." in text:
            low, high = (int(part) for part in text.split("..", 1))
        else:
            low = high = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a..b, got {text!r}")
    if low < 1 or high < low:
        raise argparse.ArgumentTypeError(f"n range must satisfy 1 <= a <= b, got {text!r}")
    return list(range(low, high + 1))


def setup_config(config_path=None):
    """
    Load the configuration: `config_path`, then resources/config/config.yaml in the
    working directory, then the copy next to the package, then the built-in defaults.

    Raises:
        ConfigError: the given file is missing, unreadable or fails validation
    """
    if config_path and not os.path.exists(config_path):
        raise ConfigError(f"Configuration file {config_path} does not exist")

    default_paths = [
        config_path,
        os.path.join("resources", "config", "config.yaml"),
        os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "resources", "config", "config.yaml"),
    ]
    config = None
    for path in default_paths:
        if path and os.path.exists(path):
            try:
                config = load_config(path)
            except Exception as e:
                raise ConfigError(f"Failed to load configuration from {path}: {e}")
            break
    if config is None:
        config = Config()

    validator = ConfigValidator()
    if not validator.validate(config.config):
        raise ConfigError("; ".join(validator.get_errors()))
    return config


def apply_tolerances(config, overrides):
    """Apply repeated `--tolerance name=value` options to the config."""
    tolerances = dict(config.get("tolerances", {}) or {})
    for override in overrides or []:
        name, sep, value = override.partition("=")
        if not sep or name not in DEFAULT_CONFIG["tolerances"]:
            raise ConfigError(f"Tolerance override must be name=value with name in {sorted(DEFAULT_CONFIG['tolerances'])}, got {override!r}")
        try:
            tolerances[name] = float(value)
        except ValueError:
            raise ConfigError(f"Tolerance {name} needs a number, got {value!r}")
    config.set("tolerances", tolerances)
    validator = ConfigValidator()
    if not validator.validate(config.config):
        raise ConfigError("; ".join(validator.get_errors()))
    return config


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors raise instead of exiting, so `run` can map them to exit code 2."""

    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def build_parser():
    parser = ArgumentParser(prog="multisuccessor-arithmetic", description="Multisuccessor arithmetic models: verification and resource profiling")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=parse_n, required=True, help="Bits per register, an integer or a range a..b")
    common.add_argument("--config", help="Path to configuration file")
    common.add_argument("--format", choices=["json", "csv", "text"], help="Output format")
    common.add_argument("--output", help="Write output to this file instead of stdout")
    common.add_argument("--tolerance", action="append", metavar="NAME=VALUE", help="Override a tolerance; may be repeated")

    encoded = argparse.ArgumentParser(add_help=False)
    encoded.add_argument("--encoding", choices=ENCODINGS, help="Number encoding")

    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)
    build = commands.add_parser("build", parents=[common, encoded], help="Build a model and its number encoding")
    build.add_argument("--export", help="Also write the dense encoding table as JSON")
    commands.add_parser("verify-properties", parents=[common, encoded], help="Check operator properties 1-12")
    axioms = commands.add_parser("verify-axioms", parents=[common, encoded], help="Check the nine axioms mod 2^n")
    axioms.add_argument("--policy", choices=["strict", "exclude-wrap"], help="Wrap-around policy")
    arithmetic = commands.add_parser("verify-arithmetic", parents=[common, encoded], help="Check arithmetic operators against integer oracles")
    arithmetic.add_argument("--op", choices=ARITHMETIC_OPS + ("all",), default="all", help="Operator group")
    commands.add_parser("certify-entanglement", parents=[common, encoded], help="Schmidt ranks of every encoded number")
    profile = commands.add_parser("profile", parents=[common], help="Count resources and fit their scaling")
    profile.add_argument("--scheme", choices=SCHEMES + ("all",), default="all", help="Encoding scheme")
    profile.add_argument("--op", choices=PROFILE_OPS + ("all",), default="all", help="Operation")
    profile.add_argument("--granularity", choices=["coarse", "fine"], help="Cost granularity")
    report = commands.add_parser("report", parents=[common, encoded], help="Properties, axioms and arithmetic in one report")
    report.add_argument("--policy", choices=["strict", "exclude-wrap"], help="Wrap-around policy")
    return parser


def _config_echo(args, config, options):
    return {
        "command": args.command,
        "n": args.n,
        **options,
        "tolerances": config.tolerances,
        "limits": config.limits,
    }


def _emit(text, output):
    if output:
        FileHandler.write_file(output, text)
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _render(report, fmt):
    validator = ReportValidator()
    payload = report.to_dict()
    if not validator.validate(payload):
        raise ConfigError(f"Report failed schema validation: {'; '.join(validator.get_errors())}")
    return report.to_json() if fmt == "json" else report.to_text()


def _run_verify(args, config, controller, fmt):
    defaults = config.defaults
    options = {"encoding": args.encoding or defaults["encoding"]}
    if args.command in ("verify-axioms", "report"):
        options["policy"] = args.policy or defaults["policy"]
    ops = None
    if args.command == "verify-arithmetic":
        options["op"] = args.op
        ops = None if args.op == "all" else [args.op]
    if fmt == "csv":
        raise ConfigError("CSV output is only available for the profile command")

    report = controller.run(
        args.command,
        args.n,
        encoding=options["encoding"],
        policy=options.get("policy", defaults["policy"]),
        ops=ops,
        config_echo=_config_echo(args, config, options),
    )
    if args.command == "build" and args.export:
        tables = [encoding_to_dict(controller.encoding(options["encoding"], n)) for n in args.n]
        FileHandler.write_json(args.export, tables[0] if len(tables) == 1 else tables)
        logger.info(f"Exported encoding tables to {args.export}")
    _emit(_render(report, fmt), args.output)
    return report.passed


def _run_profile(args, config, controller, fmt):
    schemes = list(SCHEMES) if args.scheme == "all" else [args.scheme]
    ops = list(PROFILE_OPS) if args.op == "all" else [args.op]
    granularity = args.granularity or config.defaults["granularity"]
    options = {"scheme": args.scheme, "op": args.op, "granularity": granularity}
    report, traces = controller.run_profile(schemes, ops, args.n, granularity, config_echo=_config_echo(args, config, options))
    if fmt == "csv":
        fits = [check.detail["fit"] for check in report.checks if check.detail.get("fit")]
        for fit in fits:
            logger.info(f"profile/{fit['scheme']}-{fit['op']}: {fit['verdict']} {fit['params']} (R²={fit['r2']:.4f})")
        _emit(traces_to_csv(traces), args.output)
        if args.output:
            fit_output = f"{os.path.splitext(args.output)[0]}.fit.json"
            FileHandler.write_json(fit_output, fits)
            logger.info(f"Wrote scaling fits to {fit_output}")
    else:
        _emit(_render(report, fmt), args.output)
    return report.passed


def run(argv=None):
    """
    Parse `argv`, run one command and return its exit code.

    Returns:
        int: 0 when every check passes, 1 when a check fails, 2 on usage,
        configuration, dimension-cap or output errors
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    except ConfigError as e:
        sys.stderr.write(f"{e}\n")
        return EXIT_USAGE

    try:
        config = apply_tolerances(setup_config(args.config), args.tolerance)
        setup_logger("src", config)
        fmt = args.format or config.defaults["format"]
        if args.output and not FileHandler.is_writable(args.output):
            raise ConfigError(f"Output path {args.output} is not writable")
        controller = VerificationController(config)
        if args.command == "profile":
            passed = _run_profile(args, config, controller, fmt)
        else:
            passed = _run_verify(args, config, controller, fmt)
    except (ConfigError, DimensionLimitError, ValueError, OSError) as e:
        logger.error(f"{args.command}: {e}")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
