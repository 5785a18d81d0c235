"""
Command-line entry point: golden-tonnetz <subcommand> [options].
"""

import argparse
import logging
import sys

from golden_tonnetz import __version__
from golden_tonnetz.commands.base import HORIZONTAL_CHOICES, VERTICAL_CHOICES
from golden_tonnetz.commands.registry import get_command_class, load_handlers
from golden_tonnetz.engine.config import EngineConfig
from golden_tonnetz.engine.exceptions import (
    ToneParseError, TonnetzError, UnsupportedScaleError, UsageError,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

USAGE_ERRORS = (ToneParseError, UsageError, UnsupportedScaleError)


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so every failure gets an error code line"""

    def error(self, message):
        raise UsageError(message)


def build_parser():
    common = ArgumentParser(add_help=False)
    common.add_argument("--atlas", help="atlas file (default: bundled, or $GOLDEN_TONNETZ_ATLAS)")
    common.add_argument("--horizontal", choices=sorted(HORIZONTAL_CHOICES), default="fifth")
    common.add_argument("--vertical", choices=sorted(VERTICAL_CHOICES), default="relative")
    common.add_argument("--window", help="window extent as CxR, e.g. 10x6")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--output", help="write output to this file")
    common.add_argument("--verbose", action="store_true")

    parser = ArgumentParser(prog="golden-tonnetz", description="Golden Tonnetz toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", metavar="command", parser_class=ArgumentParser)
    for name, command_cls in sorted(load_handlers().items()):
        sub = subparsers.add_parser(name, parents=[common], help=command_cls.help)
        command_cls.add_arguments(sub)
    return parser


def run(argv=None, stdout=None, stderr=None, config=None):
    """
    Run one invocation.

    Logging for the invocation goes to its own stderr and is detached on return.

    Returns:
        int: 0 on success, 1 on domain errors, 2 on usage or parse errors
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    package_logger = logging.getLogger("golden_tonnetz")
    package_logger.addHandler(handler)
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        package_logger.setLevel(logging.INFO if args.verbose else logging.WARNING)

        command = get_command_class(args.command)(config=config or EngineConfig.from_settings(), stdout=stdout)
        command.output_path = args.output
        return command.handle(args)
    except USAGE_ERRORS as e:
        stderr.write(f"error: {e.code}: {e}\n")
        return EXIT_USAGE
    except TonnetzError as e:
        stderr.write(f"error: {e.code}: {e}\n")
        return EXIT_DOMAIN
    except OSError as e:
        stderr.write(f"error: E_IO: {e}\n")
        return EXIT_DOMAIN
    except SystemExit as e:
        # --help and --version
        return e.code or EXIT_OK
    finally:
        package_logger.removeHandler(handler)


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
