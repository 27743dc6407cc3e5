#!/usr/bin/env python3
"""
shannon – graph semiring computations and certified Shannon capacity bounds.

Exit codes: 0 pass, 1 hard failure, 2 usage or configuration error,
3 budget exhaustion.
"""

import argparse
import sys
import traceback
from typing import List, Optional

from shannon.commands import CommandHandler
from shannon.config import FORMATS, VERBOSITIES, Settings, load_settings
from shannon.emitter import emit, get_log_level, set_log_level
from shannon.errors import ShannonError
from shannon.log_levels import LogLevel


def _common_flags() -> argparse.ArgumentParser:
    """Flags accepted by every subcommand; unset flags defer to the configuration."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Configuration file (default: ~/.local/share/shannon/shannon_config.toml)")
    common.add_argument("--verbosity", choices=VERBOSITIES, help="Log verbosity")
    common.add_argument("--format", choices=FORMATS, help="NDJSON records or rich tables")
    common.add_argument("--kmax", type=int, help="Largest strong power used for lower bounds")
    common.add_argument("--tol", type=float, help="Theta certificate tolerance")
    common.add_argument("--budget-nodes", type=int, help="Branch-and-bound node budget")
    common.add_argument("--budget-seconds", type=float, help="Branch-and-bound time budget")
    common.add_argument("--seed", type=int, help="Seed for every random choice")
    common.add_argument("--report-dir", help="Directory for verification reports")
    common.add_argument("--cache-dir", help="Directory of the alpha cache")
    common.add_argument("--no-cache", action="store_true", help="Bypass the alpha cache")
    common.add_argument("--verify-cache", action="store_true", help="Recompute every cache hit")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="shannon", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", parents=[common], help="Write the default configuration file")
    p.add_argument("--force", action="store_true", help="Overwrite an existing configuration")

    p = sub.add_parser("gen", parents=[common], help="Print a generated or parsed graph as graph6")
    p.add_argument("graph", help="Generator spec, g6:<string> or graph6 file")
    p.add_argument("--out", help="Also write the graph6 line to this file")

    for name, help_text in (
        ("alpha", "Exact stable set number with witness"),
        ("theta", "Lovász number with certificates"),
        ("capacity", "Certified enclosure of the Shannon capacity"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("graph", help="Generator spec, g6:<string> or graph6 file")
        p.add_argument("--power", type=int, default=1, help="Use the strong power G^k")

    p = sub.add_parser("eval", parents=[common], help="Evaluate a polynomial at graphs")
    p.add_argument("polynomial", help='e.g. "x^2 + 2 x y" or "3 x1^2 x2 + 1"')
    p.add_argument("graphs", nargs="+", help="One graph per variable")
    p.add_argument("--out", help="Write the resulting graph6 line to this file")
    p.add_argument("--alpha", action="store_true", help="Also compute α of the result")
    p.add_argument("--theta", action="store_true", help="Also compute ϑ of the result")

    p = sub.add_parser("verify", parents=[common], help="Run the verification suite")
    p.add_argument("--report", help="Report file (default: <report-dir>/report-<seed>-<timestamp>.json)")
    p.add_argument("--self-test", action="store_true", help="Inject a failing check")
    return parser


def apply_flags(settings: Settings, args: argparse.Namespace) -> Settings:
    """CLI flags override the configuration files."""
    settings = settings.replace(
        "general",
        verbosity=args.verbosity,
        format=args.format,
        seed=args.seed,
        report_dir=args.report_dir,
        cache_dir=args.cache_dir,
    )
    settings = settings.replace("capacity", kmax=args.kmax, tol=args.tol)
    settings = settings.replace("budgets", alpha_nodes=args.budget_nodes, alpha_seconds=args.budget_seconds)
    if getattr(args, "self_test", False):
        settings = settings.replace("suite", self_test=True)
    return settings


def main(argv: Optional[List[str]] = None) -> int:
    """CLI entry point."""
    args = build_parser().parse_args(argv)
    set_log_level(args.verbosity or "info")

    try:
        settings = apply_flags(load_settings(args.config), args)
        set_log_level(settings.general.verbosity)
        emit("debug_log", {"message": f"Launch args: {sys.argv}", "location": "main.main"})
        emit("debug_log", {"message": f"Settings from {settings.source}", "location": "main.main"})
        return CommandHandler(settings, args).handle_command(args.command)
    except ShannonError as e:
        emit(
            "error",
            {
                "message": str(e),
                "error": type(e).__name__,
                "exit_code": e.exit_code,
                "location": "main.main",
                **e.details(),
            },
        )
        _emit_trace()
        return e.exit_code
    except Exception as e:
        emit("error", {"message": f"Command failed: {e}", "location": "main.main"})
        _emit_trace()
        return 1


def _emit_trace():
    # full stack trace only at warn level or below
    if get_log_level() <= LogLevel.WARN:
        emit("warn_log", {"message": f"Full stack trace:\n{traceback.format_exc()}", "location": "main.main"})


if __name__ == "__main__":
    sys.exit(main())
