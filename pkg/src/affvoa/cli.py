"""Command-line entry point: ``affvoa <subcommand> [flags]``.

Exit codes: 0 certified, 1 a check failed (or a size refusal), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import reports


def _weight(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"weight must be comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affvoa", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True):
        sp.add_argument("--out", type=Path, help="write the JSON document here instead of stdout")
        if seed:
            sp.add_argument("--seed", type=int, required=True)
        return sp

    s = common(sub.add_parser("singular", help="solve for singular vectors"), seed=False)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--m", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--depth", type=int)
    s.add_argument("--weight", type=_weight)
    s.add_argument("--max-columns", type=int, default=reports.DEFAULT_MAX_COLUMNS)
    s.add_argument("--seed", type=int, default=0, help="unused; accepted for uniformity")

    s = common(sub.add_parser("variety", help="C2 variety certificate for sl_3"))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, default=3, choices=[3])

    s = common(sub.add_parser("slice", help="Slodowy slice intersection"))
    s.add_argument("kind", choices=["minimal", "regular"])

    s = common(sub.add_parser("character", help="character formula cross-check"), seed=False)
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--m", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--seed", type=int, default=0, help="unused; accepted for uniformity")

    s = common(sub.add_parser("zhu", help="Harish-Chandra characteristic-variety test"))
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int, default=3, choices=[3])
    s.add_argument("--depth", type=int, default=6, help="degree cap in U(sl_3)")

    common(sub.add_parser("selftest", help="fast structural checks"))
    return p


def dispatch(args) -> dict:
    if args.command == "singular":
        return reports.run_singular(args.n, args.m, args.q, args.depth, args.weight, args.max_columns)
    if args.command == "variety":
        return reports.run_variety(args.m, args.seed)
    if args.command == "slice":
        return reports.run_slice(args.kind, args.seed)
    if args.command == "character":
        return reports.run_character(args.n, args.depth, args.m, args.q)
    if args.command == "zhu":
        return reports.run_zhu(args.m, args.seed, cap=args.depth)
    return reports.run_selftest(args.seed)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        doc = dispatch(args)
    except reports.RefusedError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if doc["result"]["certified"] else 1


if __name__ == "__main__":
    sys.exit(main())
