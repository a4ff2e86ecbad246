from __future__ import annotations

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import texts
from .errors import ConvergenceFailure, ValidationError
from .handlers import get_commands
from .handlers.common import common_flags


log = logging.getLogger("uqpkit.cli")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="uqp",
        description=texts.DESCRIPTION_TEXT,
        epilog=texts.USAGE_TEXT,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", metavar="<command>")
    parent = common_flags()
    for command in get_commands():
        sub = subparsers.add_parser(command.name, help=command.help, parents=[parent])
        command.configure(sub)
        sub.set_defaults(handler=command.handler)
    return parser


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(texts.ERROR_TEXT.format(message=exc), file=sys.stderr)
        print(parser.format_usage() + texts.USAGE_TEXT, file=sys.stderr)
        return 1
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)

    if args.command is None:
        print(parser.format_usage() + texts.USAGE_TEXT, file=sys.stderr)
        return 1
    if args.verbose:
        logging.getLogger("uqpkit").setLevel(logging.DEBUG)

    try:
        return args.handler(args)
    except (ValidationError, ConvergenceFailure) as exc:
        print(texts.ERROR_TEXT.format(message=exc), file=sys.stderr)
        return 1
    except OSError as exc:
        print(texts.IO_ERROR_TEXT.format(message=exc), file=sys.stderr)
        return 2
    except Exception:
        log.exception("Command %s failed", args.command)
        return 1
