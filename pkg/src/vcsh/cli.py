"""Command-line entry point ``vcsh``."""
from __future__ import annotations

import argparse
import sys

from .errors import VcshError
from .evaluator import render
from .parser import parse_formula
from .shell import FORMATS, repl, run_script
from .workspace import Workspace, load_workspace


def _load(path):
    if path is None:
        return Workspace()
    return load_workspace(path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vcsh", description="Conceptual shell for variable concepts.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a command script")
    run.add_argument("script")
    run.add_argument("--workspace", help="workspace file to load first")
    run.add_argument("--keep-going", action="store_true", help="continue after a failing command")
    run.add_argument("--format", choices=FORMATS, default="text")

    rp = sub.add_parser("repl", help="interactive command loop")
    rp.add_argument("--workspace")
    rp.add_argument("--format", choices=FORMATS, default="text")

    ev = sub.add_parser("eval", help="evaluate one formula at a world")
    ev.add_argument("formula")
    ev.add_argument("--workspace", required=True)
    ev.add_argument("--world", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ws = _load(args.workspace)
        if args.command == "run":
            return run_script(args.script, ws, args.keep_going, args.format)
        if args.command == "repl":
            repl(ws, args.format)
            return 0
        phi = parse_formula(args.formula, functions=ws.functions)
        print(render(ws.evaluator.eval_formula(phi, ws.world(args.world))))
        return 0
    except (VcshError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
