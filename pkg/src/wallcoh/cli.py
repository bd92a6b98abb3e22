"""Command-line entry point.

Each command runs one task against a job document:

    wallcoh analyze conifold.json --structured
    wallcoh duality francia.json --a 0 --box -6:6
    wallcoh crosscheck segre.json --fine-bound 6

``--all-tasks`` runs the document's full task list instead.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import jobs
from .errors import ConfigError

ENV_CACHE = "WALLCOH_CACHE_DIR"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wallcoh",
        description="exact weight-by-weight local cohomology engine for "
                    "torus-graded ring presentations",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in jobs.TASKS:
        p = sub.add_parser(name, help=f"run the {name} task")
        p.add_argument("config", help="path to the job document (JSON)")
        p.add_argument("--box", metavar="MIN:MAX",
                       help="override the weight window")
        p.add_argument("--fine-bound", type=int, metavar="B",
                       help="override the fine-degree total bound")
        p.add_argument("--kmax", type=int, metavar="K",
                       help="override the truncation cap")
        p.add_argument("--mode", choices=("weight", "fine"),
                       help="duality comparison mode")
        p.add_argument("--a", type=int,
                       help="force the crossing parameter (diagnostic mode)")
        p.add_argument("--structured", action="store_true",
                       help="emit the structured report document")
        p.add_argument("--cache-dir",
                       help=f"cache directory (or ${ENV_CACHE})")
        p.add_argument("--all-tasks", action="store_true",
                       help="run every task listed in the document")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides: dict = {
        "fine_bound": args.fine_bound,
        "k_max": args.kmax,
        "mode": args.mode,
        "a": args.a,
    }
    if args.box:
        try:
            lo, hi = args.box.split(":")
            overrides["weight_min"] = int(lo)
            overrides["weight_max"] = int(hi)
        except ValueError:
            print("error: --box expects MIN:MAX integers", file=sys.stderr)
            return jobs.EXIT_INPUT
    cache_dir = args.cache_dir or os.environ.get(ENV_CACHE)
    if cache_dir:
        overrides["cache_dir"] = cache_dir
    if not args.all_tasks:
        overrides["tasks"] = [args.command]
    try:
        config = jobs.load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return jobs.EXIT_INPUT
    report, code = jobs.run(config)
    if args.structured:
        print(jobs.render_structured(report))
    else:
        print(jobs.render_text(report))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
