# vcm/main.py
"""
Command-line entry point: vcm <subcommand> [flags]
"""
import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from vcm import __version__
from vcm.cli import commands
from vcm.config import get_settings
from vcm.exceptions import VcmError

logger = logging.getLogger("vcm")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vcm",
        description="Voting committees: multiwinner rules, decision rules and ultimate satisfaction",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="JSON experiment config; flags override it")
    parser.add_argument("--threads", type=int, default=None, help="worker threads for experiments")
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="diagnostics on standard error (default: VCM_LOG_LEVEL or WARNING)",
    )

    subparsers = parser.add_subparsers(dest="command", metavar="<command>")
    commands.register(subparsers)
    return parser


def configure_logging(level: Optional[str]) -> None:
    level = level or get_settings().log_level
    logging.basicConfig(
        level=level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _one_line(error: Exception) -> str:
    if isinstance(error, ValidationError):
        first = error.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        return f"{where}: {first['msg']}" if where else first["msg"]
    return str(error).splitlines()[0] if str(error) else type(error).__name__


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 for --help / --version
        return int(e.code or 0)

    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2
    if args.threads is not None and args.threads < 1:
        parser.print_usage(sys.stderr)
        print("vcm: error: --threads must be at least 1", file=sys.stderr)
        return 2

    configure_logging(args.log_level)
    logger.debug("Running %s", args.command)
    try:
        output = args.handler(args)
    except (VcmError, ValidationError, OSError) as e:
        print(f"error: {_one_line(e)}", file=sys.stderr)
        return 1

    sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
