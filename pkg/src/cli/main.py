"""
ECAT Command Line
Batch front-end: builds a RunConfig from flags and an optional JSON config file, runs one
subcommand and writes its CSV or JSON artifact.

Exit codes: 0 success, 2 missing file, 3 invalid input, 4 numerical failure.
"""
import argparse
import logging
import sys

from src.cli.commands import COMMANDS
from src.cli.output import write_output
from src.cli.run_config import OUTPUT_FORMATS, RunConfig, load_config_file, merge_params
from src.config import LOG_FORMAT, LOG_LEVEL
from src.errors import InvalidArgument, NumericalFailure
from src.ingestion.data_loader import reset_data_cache

logger = logging.getLogger("ecat.cli.main")

EXIT_OK = 0
EXIT_MISSING_FILE = 2
EXIT_INVALID = 3
EXIT_NUMERICAL = 4

GLOBAL_KEYS = ("subcommand", "data_dir", "config", "output", "format", "timestamp", "log_level")

# (flag, type, help) per subcommand; str-typed ranges accept "a..b:step" or "a,b,c"
SUBCOMMAND_ARGS = {
    "cat-evolve": [
        ("--n-atoms", int, "atom number N"),
        ("--omega-r-mhz", float, "Omega_r / 2pi in MHz"),
        ("--delta-mhz", float, "Delta / 2pi in MHz"),
        ("--model", str, "exact or kerr"),
        ("--tau-scales", str, "sample times in units of tau_c"),
    ],
    "fnl-scan": [
        ("--n-range", str, "atom numbers"),
        ("--target", float, "F_nl target"),
    ],
    "revival": [
        ("--n-atoms", str, "atom numbers"),
        ("--w", float, "dressing parameter Omega_r / 2 Delta"),
        ("--tau-scale", float, "revival time in units of pi / chi0"),
    ],
    "inhomogeneity": [
        ("--sides", str, "cube edge lengths in atoms"),
        ("--ratios", str, "D / R_b values"),
        ("--spacing-nm", float, "lattice spacing in nm"),
        ("--omega-r-mhz", float, "Omega_r / 2pi in MHz"),
        ("--delta-mhz", float, "Delta / 2pi in MHz"),
    ],
    "lifetimes": [
        ("--n-range", str, "principal quantum numbers"),
        ("--temperatures", str, "environment temperatures in K"),
    ],
    "bbr": [
        ("--n", int, "principal quantum number"),
        ("--temperature", float, "environment temperature in K"),
    ],
    "decoherence": [
        ("--n-atoms", int, "atom number N"),
        ("--n", int, "principal quantum number"),
        ("--temperature", float, "environment temperature in K"),
        ("--omega-r-mhz", float, "Omega_r / 2pi in MHz"),
        ("--delta-mhz", float, "Delta / 2pi in MHz"),
        ("--gamma-s", float, "spontaneous rate override, 1/s"),
        ("--gamma-bbr", float, "blackbody rate override, 1/s"),
    ],
    "catsize": [
        ("--n-range", str, "principal quantum numbers"),
        ("--budget-nl", float, "F_nl target"),
        ("--fih", float, "F_IH target"),
        ("--fdc", float, "F_dc target"),
        ("--temperature", float, "environment temperature in K"),
        ("--spacing-nm", float, "lattice spacing in nm"),
        ("--w-prefactor", float, "use w* = a N^b instead of the memo table"),
        ("--w-exponent", float, "exponent b of the power-law w* table"),
        ("--gamma-s", float, "spontaneous rate override, 1/s"),
        ("--gamma-bbr", float, "blackbody rate override, 1/s"),
    ],
    "sigma-bound": [
        ("--n-atoms", int, "atom number N"),
        ("--delta-e-ev", float, "per-atom splitting in eV"),
        ("--trap-loss-rate", float, "trap loss rate per atom, 1/s"),
        ("--correlated-linewidth-hz", float, "correlated laser linewidth in Hz"),
        ("--uncorrelated-linewidth-hz", float, "uncorrelated linewidth in Hz"),
        ("--bbr-temperature", float, "add BBR-shift noise at this temperature (K)"),
        ("--bbr-delta-t", float, "temperature stability in K"),
    ],
    "husimi": [
        ("--state", str, "css, cat or ghz"),
        ("--n-atoms", int, "atom number N"),
        ("--w", float, "dressing parameter"),
        ("--n-theta", int, "polar samples"),
        ("--n-phi", int, "azimuthal samples"),
    ],
    "phonon": [
        ("--omega-e-khz", float, "rotation Rabi frequency / 2pi in kHz"),
        ("--lamb-dicke", float, "Lamb-Dicke parameter"),
        ("--trap-khz", float, "trap frequency / 2pi in kHz"),
    ],
    "energy-cat": [
        ("--n-atoms", int, "atom number N"),
        ("--w", float, "dressing parameter"),
    ],
    "realization": [
        ("--omega-r-mhz", float, "Omega_r / 2pi in MHz"),
        ("--delta-mhz", float, "Delta / 2pi in MHz"),
        ("--n-atoms", int, "atom number N"),
        ("--ramp-ns", float, "switch-on ramp duration in ns"),
        ("--n", int, "principal quantum number (enables the decay section)"),
        ("--temperature", float, "environment temperature in K"),
        ("--gamma-s", float, "spontaneous rate override, 1/s"),
        ("--gamma-bbr", float, "blackbody rate override, 1/s"),
    ],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecat", description="Energy cat states by Rydberg dressing")
    parser.add_argument("--data-dir", help="data directory (overrides ECAT_DATA_DIR)")
    parser.add_argument("--config", help="JSON run configuration; flags win over its values")
    parser.add_argument("--output", help="output file (stdout when omitted)")
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="csv")
    parser.add_argument("--timestamp", action="store_true", help="record the generation time in the header")
    parser.add_argument("--log-level", default=LOG_LEVEL)

    subparsers = parser.add_subparsers(dest="subcommand", required=True)
    for name, arguments in SUBCOMMAND_ARGS.items():
        sub = subparsers.add_parser(name)
        for flag, kind, text in arguments:
            sub.add_argument(flag, type=kind, default=None, help=text)
        if name == "inhomogeneity":
            sub.add_argument("--exact", action="store_true", default=None, help="also run the exact oracle")
    return parser


def setup_logging(level: str) -> None:
    root = logging.getLogger("ecat")
    root.setLevel(level.upper())
    if not root.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%H:%M:%S"))
        root.addHandler(handler)


def build_run_config(args: argparse.Namespace) -> RunConfig:
    flags = {key: value for key, value in vars(args).items() if key not in GLOBAL_KEYS}
    file_values = load_config_file(args.config) if args.config else {}
    return RunConfig(
        subcommand=args.subcommand,
        params=merge_params(file_values, flags),
        data_dir=args.data_dir,
        output=args.output,
        fmt=args.format,
        timestamp=args.timestamp,
    )


def _exit_code(error: Exception) -> int:
    if isinstance(error, FileNotFoundError):
        logger.error(f"Missing file: {error}")
        return EXIT_MISSING_FILE
    if isinstance(error, InvalidArgument):
        logger.error(f"Invalid input ({error.field}): {error}")
        return EXIT_INVALID
    logger.error(f"Numerical failure in {error.module}.{error.operation}: {error}")
    return EXIT_NUMERICAL


def run(config: RunConfig) -> int:
    """Run one subcommand and write its artifact; returns the exit status."""
    try:
        logger.info("═" * 60)
        logger.info(f"ecat {config.subcommand} (config {config.sha256[:12]})")
        logger.info("═" * 60)
        result = COMMANDS[config.subcommand](config)
        write_output(result, config)
    except (FileNotFoundError, InvalidArgument, NumericalFailure) as e:
        return _exit_code(e)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    reset_data_cache()

    try:
        config = build_run_config(args)
    except (FileNotFoundError, InvalidArgument) as e:
        return _exit_code(e)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
