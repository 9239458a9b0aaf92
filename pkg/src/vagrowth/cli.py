"""Command-line entry point.

Commands: validate, growth, relative, coset, conjugacy, oracle, verify.
Text output for a series is three lines (numerator, denominator,
coefficients); JSON mirrors the fields.  Exit codes: 0 success, 1
validation or parse error, 2 reconstruction uncertified at the requested
guard, 3 verify mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from .group import GroupFileError, load_group, load_subgroup, resolve_subgroup, validate
from .growth import GrowthEngine
from .oracle import oracle_counts
from .series import InsufficientData


def _parser():
    p = argparse.ArgumentParser(
        prog="vag",
        description="Exact weighted growth series of virtually abelian groups",
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("validate", "growth", "relative", "coset", "conjugacy", "oracle", "verify"):
        sp = sub.add_parser(name)
        sp.add_argument("group", help="group file (JSON)")
        if name in ("relative", "coset", "oracle", "verify"):
            sp.add_argument("--subgroup", help="subgroup file (JSON)")
        if name in ("oracle", "verify"):
            sp.add_argument(
                "--mode",
                choices=("standard", "relative", "coset", "conjugacy"),
                default="standard",
            )
        if name != "validate":
            sp.add_argument("--max-weight", type=int, default=12)
        if name not in ("validate", "oracle"):
            sp.add_argument("--guard", type=int, default=16)
            sp.add_argument("--max-den-degree", type=int, default=64)
        sp.add_argument("--format", choices=("text", "json"), default="text")
    return p


def _emit_series(rf, prefix, fmt, out):
    if fmt == "json":
        out.append(
            json.dumps(
                {
                    "numerator": list(rf.num),
                    "denominator": list(rf.den),
                    "coefficients": list(prefix),
                }
            )
        )
    else:
        out.append(f"numerator: {list(rf.num)}")
        out.append(f"denominator: {list(rf.den)}")
        out.append(f"coefficients: {list(prefix)}")


def run(argv):
    """Execute one command; returns (exit_code, list of output lines)."""
    args = _parser().parse_args(argv)
    out = []
    try:
        data, gens = load_group(args.group)
    except GroupFileError as e:
        return 1, [f"error: {e}"]

    violations = validate(data, gens)
    if violations:
        if args.command == "validate" and args.format == "json":
            return 1, [json.dumps({"ok": False, "violations": violations})]
        return 1, [f"validation error: {v}" for v in violations]
    if args.command == "validate":
        if args.format == "json":
            return 0, [json.dumps({"ok": True})]
        return 0, ["ok"]

    sub = None
    sub_path = getattr(args, "subgroup", None)
    needs_sub = args.command in ("relative", "coset") or (
        args.command in ("oracle", "verify") and getattr(args, "mode", None) in ("relative", "coset")
    )
    if needs_sub:
        if not sub_path:
            return 1, [f"error: {args.command} requires --subgroup"]
        try:
            sub_gens = load_subgroup(sub_path, data)
        except GroupFileError as e:
            return 1, [f"error: {e}"]
        sub = resolve_subgroup(data, sub_gens)

    n = args.max_weight
    if args.command == "oracle":
        mode = args.mode
        counts = oracle_counts(data, gens, mode, n, sub)
        if args.format == "json":
            return 0, [json.dumps({"coefficients": counts})]
        return 0, [f"coefficients: {counts}"]

    engine = GrowthEngine(data, gens)
    kwargs = dict(max_weight=n, guard=args.guard, max_den_degree=args.max_den_degree)
    try:
        if args.command == "growth":
            rf, prefix = engine.standard_series(**kwargs)
        elif args.command == "relative":
            rf, prefix = engine.relative_series(sub, **kwargs)
        elif args.command == "coset":
            rf, prefix = engine.coset_series(sub, **kwargs)
        elif args.command == "conjugacy":
            rf, prefix = engine.conjugacy_series(**kwargs)
        else:  # verify
            mode = args.mode
            if mode == "standard":
                rf, prefix = engine.standard_series(**kwargs)
            elif mode == "relative":
                rf, prefix = engine.relative_series(sub, **kwargs)
            elif mode == "coset":
                rf, prefix = engine.coset_series(sub, **kwargs)
            else:
                rf, prefix = engine.conjugacy_series(**kwargs)
            reference = oracle_counts(data, gens, mode, n, sub)
            for w, (a, b) in enumerate(zip(prefix, reference)):
                if a != b:
                    msg = f"mismatch at weight {w}: engine={a}, oracle={b}"
                    if args.format == "json":
                        return 3, [json.dumps({"ok": False, "weight": w, "engine": a, "oracle": b})]
                    return 3, [msg]
            if args.format == "json":
                return 0, [json.dumps({"ok": True, "coefficients": prefix})]
            return 0, [f"verify: ok (coefficients agree to {n})"]
    except InsufficientData as e:
        return 2, [f"reconstruction uncertified: {e}"]
    _emit_series(rf, prefix, args.format, out)
    return 0, out


def main(argv=None):
    code, lines = run(sys.argv[1:] if argv is None else argv)
    for line in lines:
        print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
