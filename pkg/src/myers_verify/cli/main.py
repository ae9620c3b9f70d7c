"""Entry point of the ``myers-verify`` command."""

import argparse
import sys
from typing import List, Optional

import structlog

from myers_verify import __version__
from myers_verify.cli.commands import (
    EXIT_ERROR,
    EXIT_OK,
    Outcome,
    cmd_sweep,
    run_scenario,
)
from myers_verify.cli.config import build_scenario, load_config
from myers_verify.cli.output import leading_for, write_csv
from myers_verify.exceptions import MyersVerifyError, ScenarioError
from myers_verify.log import configure_logging

logger = structlog.get_logger(__name__)

SUBCOMMANDS = {
    "compare": "check a comparison statement on a grid",
    "constants": "compute a compactness constant and its branch",
    "criterion": "test a compactness criterion on a manifold",
    "ambrose": "Ambrose-type diagnosis and the blow-up sequence",
    "sweep": "run a scenario over a Cartesian parameter grid",
}


def _positive(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config", required=True, help="scenario file of 'key = value' lines"
    )
    common.add_argument("--out", help="write the CSV report to this path")
    common.add_argument(
        "--step", type=_positive, help="grid step, overrides the scenario's grid_step"
    )
    common.add_argument(
        "--quiet", action="store_true", help="only log warnings and errors"
    )

    parser = argparse.ArgumentParser(
        prog="myers-verify",
        description="Numerical checks of Myers-type compactness criteria.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, help_text in SUBCOMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def execute(args: argparse.Namespace) -> Outcome:
    """Load the scenario named by ``args`` and run its workflow."""
    raw = load_config(args.config)
    if args.step is not None:
        raw["grid_step"] = repr(args.step)
    if args.command == "sweep":
        return cmd_sweep(raw)

    declared = raw.setdefault("workflow", args.command)
    if declared != args.command:
        raise ScenarioError(
            "workflow", f"scenario declares {declared!r}, run with '{args.command}'"
        )
    scenario = build_scenario(raw)
    return run_scenario(scenario)


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line; returns the process exit code.

    Exit codes: 0 success, 1 usage or input error, 2 conclusion violated,
    3 hypothesis violated or empty window, 4 falsification alarm.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    configure_logging(level="WARNING" if args.quiet else None)
    try:
        outcome = execute(args)
        if args.out:
            write_csv(args.out, outcome.rows, leading_for(outcome.rows))
    except (MyersVerifyError, OSError, ValueError) as e:
        logger.error("command.failed", command=args.command, error=str(e))
        print(f"myers-verify: error: {e}", file=sys.stderr)
        return EXIT_ERROR

    sys.stdout.write(outcome.text)
    return outcome.exit_code


if __name__ == "__main__":
    sys.exit(main())
