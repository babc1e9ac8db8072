"""Command-line front end: ``partition-lab {verify,series,enumerate,fixtures}``.

Exit status: 0 on success, 1 on usage errors, 2 when a verification fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .enumeration import admissible_jsonl, gen_P
from .lattice import AB, ArrayShape, display_pattern, load_displays, render
from .multisum import eval_T
from .series import eval_z1, format_series, product_side, to_json
from .verify import case_config, default_config, negative_controls, run_suite

ORDER_ENV = "PARTITION_LAB_ORDER"
DEFAULT_ORDER = 12
ORDER_CAP = 40

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None:
        return DEFAULT_ORDER
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{ORDER_ENV} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="partition-lab", description="Exact checks of colored-partition identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, need_i=False, ell=2):
        sp.add_argument("--case", choices=["ag", "ab"], type=str.lower, default="ag")
        sp.add_argument("--ell", type=int, default=ell)
        sp.add_argument("--i", type=int, required=need_i, default=None)
        sp.add_argument("--order", type=int, default=None, help=f"truncation order (default ${ORDER_ENV} or {DEFAULT_ORDER})")
        sp.add_argument("--force", action="store_true", help=f"allow orders above {ORDER_CAP}")
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--out", default=None, help="write output to this file")

    v = sub.add_parser("verify", help="run verification checks")
    common(v)
    v.add_argument("--check", choices=["fe", "main", "product", "classical", "telescope", "all"], default="all")
    v.add_argument("--suite", choices=["default", "negative"], default=None, help="run a named suite instead")
    v.add_argument("--config", default=None, help="JSON file with a list of check entries")

    s = sub.add_parser("series", help="print a generating function")
    common(s, need_i=True)
    s.add_argument("--side", choices=["enum", "multisum", "product"], default="enum")
    s.add_argument("--z1", action="store_true", help="set z = 1")

    e = sub.add_parser("enumerate", help="stream admissible partitions of n as JSON lines")
    common(e, need_i=True)
    e.add_argument("--n", type=int, required=True)

    f = sub.add_parser("fixtures", help="show forbidden-cell patterns")
    common(f, ell=4)
    f.add_argument("--max-value", type=int, default=None)
    return p


def _order(args) -> int:
    n = args.order if args.order is not None else _default_order()
    if n < 0:
        raise UsageError("order must be non-negative")
    if n > ORDER_CAP and not args.force:
        raise UsageError(f"order {n} exceeds the safety cap {ORDER_CAP}; pass --force")
    return n


def _shape(args) -> ArrayShape:
    try:
        return ArrayShape(args.case.upper(), args.ell, args.i)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cmd_verify(args) -> tuple[str, int]:
    if args.config:
        with open(args.config) as fh:
            config = json.load(fh)
    elif args.suite == "default":
        config = default_config()
    elif args.suite == "negative":
        config = negative_controls()
    else:
        if args.ell < 2:
            raise UsageError("verify needs --ell >= 2")
        if args.i is not None and not 0 <= args.i <= args.ell:
            raise UsageError("need 0 <= i <= ell")
        config = case_config(args.case, args.ell, _order(args), args.check, args.i)
    reports = run_suite(config)
    if args.json:
        text = "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in reports)
    else:
        lines = [r.line() for r in reports]
        failed = sum(not r.passed for r in reports)
        lines.append(f"{len(reports) - failed} passed, {failed} failed")
        text = "\n".join(lines) + "\n"
    return text, EXIT_FAIL if any(not r.passed for r in reports) else EXIT_OK


def _cmd_series(args) -> tuple[str, int]:
    shape = _shape(args)
    n = _order(args)
    if args.side == "enum":
        s = gen_P(shape, n)
    elif args.side == "multisum":
        s = eval_T(shape.i, shape.ell, n, star=shape.case == AB)
    else:
        s = product_side(shape.case, shape.ell, shape.i, n)
    if args.z1:
        s = eval_z1(s)
    if args.json:
        return json.dumps(to_json(s)) + "\n", EXIT_OK
    return format_series(s) + "\n", EXIT_OK


def _cmd_enumerate(args) -> tuple[str, int]:
    shape = _shape(args)
    if args.n < 0:
        raise UsageError("n must be non-negative")
    if args.n > ORDER_CAP and not args.force:
        raise UsageError(f"n {args.n} exceeds the safety cap {ORDER_CAP}; pass --force")
    return "".join(line + "\n" for line in admissible_jsonl(shape, args.n)), EXIT_OK


def _cmd_fixtures(args) -> tuple[str, int]:
    ell = args.ell
    indices = [args.i] if args.i is not None else range(ell + 1)
    blocks, data = [], {}
    for i in indices:
        try:
            shape = ArrayShape(args.case.upper(), ell, i)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        vmax = args.max_value
        if vmax is None:
            shown = load_displays().get(shape.case, {}).get(str(i)) if ell == 4 else None
            vmax = max(r["max_value"] for r in shown) if shown else 2 * shape.rows
        data[str(i)] = display_pattern(shape, vmax)
        blocks.append(f"{shape.case} ell={ell} i={i}\n{render(shape, vmax)}")
    if args.json:
        return json.dumps({args.case.upper(): data}, sort_keys=True) + "\n", EXIT_OK
    return "\n\n".join(blocks) + "\n", EXIT_OK


COMMANDS = {"verify": _cmd_verify, "series": _cmd_series, "enumerate": _cmd_enumerate, "fixtures": _cmd_fixtures}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"partition-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
