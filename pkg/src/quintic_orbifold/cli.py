"""Command line interface: analyze, verify, batch, classes."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from .errors import OrbifoldError
from .pipeline import analyze, batch, format_table, parse_input, verify


def _load(args):
    inp = parse_input(args.file)
    opts = inp.options
    if getattr(args, "max_group_order", None):
        opts = replace(opts, max_group_order=args.max_group_order)
    if getattr(args, "no_duality_check", False):
        opts = replace(opts, duality_check=False)
    return replace(inp, options=opts)


def cmd_analyze(args) -> int:
    out = analyze(_load(args))
    print(format_table(out) if args.table else out.to_json())
    return 0


def cmd_classes(args) -> int:
    inp = _load(args)
    out = analyze(replace(inp, options=replace(inp.options, emit_classes=True)))
    print(format_table(out).split("\ne = ")[0])
    return 0


def cmd_verify(args) -> int:
    reports = verify(_load(args))
    if args.json:
        print(json.dumps(reports, indent=2, sort_keys=True))
    else:
        for r in reports:
            flags = f"automorphism={r['is_automorphism']} gorenstein={r['is_gorenstein']} ord={r['order']}"
            if "trace" in r:
                flags += f" lift_ord={r['lift_order']} tr={r['trace']} m={r['max_multiplicity']}"
            print(f"generator {r['generator']}: {flags}")
    bad = [r for r in reports if not r["is_gorenstein"]]
    return 3 if bad else 0


def cmd_batch(args) -> int:
    res = batch(args.dir, jobs=args.jobs)
    print(json.dumps(res.to_dict(), indent=2, sort_keys=True) if args.json else res.summary())
    return 0 if res.ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="quintic-orbifold", description="Hodge numbers of crepant resolutions X/G")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full orbifold analysis of one input file")
    p.add_argument("file")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine format (default)")
    fmt.add_argument("--table", action="store_true", help="human-readable table")
    p.add_argument("--max-group-order", type=int)
    p.add_argument("--no-duality-check", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="per-generator Gorenstein and lifting diagnostics")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("batch", help="analyze every *.json file in a directory")
    p.add_argument("dir")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("classes", help="per-conjugacy-class breakdown only")
    p.add_argument("file")
    p.add_argument("--max-group-order", type=int)
    p.set_defaults(func=cmd_classes)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except OrbifoldError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
