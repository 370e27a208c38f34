"""Command line front end: ``hyperjac verify | eval | picard | present``."""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from .expr import EvalError, ParseError, evaluate
from .picard import pic_pgl2, pic_sl2
from .presentation import KAPPA_TABLE, kappa_presentation, presentation, relation_generator
from .suites import SUITES, cells, default_cells, run_suites, summary, to_json, to_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 as well, but we want our own text
        self.print_usage(sys.stderr)
        raise UsageError(message)


def parse_range(text: str) -> tuple[int, int]:
    """``LO..HI`` or a single integer."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            out = (int(lo), int(hi))
        else:
            out = (int(text), int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use LO..HI") from None
    if out[0] > out[1]:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return out


def _genus(text: str) -> int:
    try:
        g = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer {text!r}") from None
    if g < 2:
        raise argparse.ArgumentTypeError(f"genus must be at least 2, got {g}")
    return g


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperjac", description="Symbolic checks for Chow rings of hyperelliptic Picard stacks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification suites over a (g, d) range")
    v.add_argument("--g", type=parse_range, metavar="LO..HI")
    v.add_argument("--d", type=parse_range, metavar="LO..HI")
    v.add_argument("--default-sweep", action="store_true", help="use 2 <= g <= 8, g-4 <= d <= g+6 instead of --g/--d")
    v.add_argument("--suite", action="append", metavar="NAME", help=f"all or one of {', '.join(SUITES)}; repeatable")
    v.add_argument("--format", choices=("json", "text"), default="text")
    v.add_argument("--jobs", type=int, default=1, help="worker processes")
    v.add_argument("--timing", action="store_true", help="record elapsed ms (reports are then not reproducible)")
    v.add_argument("--output", "-o", help="write the report here instead of stdout")

    e = sub.add_parser("eval", help="evaluate an expression in a tower ring")
    e.add_argument("--g", type=_genus, required=True)
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--flavor", default="full", help="full, reduced, splitting:I,J or rigid")
    e.add_argument("expr")

    pc = sub.add_parser("picard", help="integral Picard group")
    pc.add_argument("--g", type=_genus, required=True)
    pc.add_argument("--d", type=int, required=True)
    pc.add_argument("--group", choices=("sl2", "pgl2"), default="pgl2")

    pr = sub.add_parser("present", help="Chow ring presentation")
    pr.add_argument("--g", type=_genus, required=True)
    pr.add_argument("--d", type=int, required=True)
    return p


def _cmd_verify(args) -> int:
    suites = args.suite or ["all"]
    bad = [s for s in suites if s != "all" and s not in SUITES]
    if bad:
        raise UsageError(f"unknown suite {bad[0]!r}; valid suites: all, {', '.join(SUITES)}")
    if args.default_sweep:
        if args.g or args.d:
            raise UsageError("--default-sweep replaces --g and --d")
        cell_list = default_cells()
    elif args.g is None or args.d is None:
        raise UsageError("--g and --d are required unless --default-sweep is given")
    elif args.g[0] < 2:
        raise UsageError(f"genus must be at least 2, got {args.g[0]}")
    else:
        cell_list = cells(args.g, args.d)
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    results = run_suites(None, None, suites, jobs=args.jobs, timing=args.timing, cell_list=cell_list)
    report = to_json(results) if args.format == "json" else to_text(results)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(report)
    else:
        sys.stdout.write(report)
    return EXIT_OK if summary(results)["fail"] == 0 else EXIT_FAIL


def _cmd_eval(args) -> int:
    try:
        out = evaluate(args.expr, args.g, args.d, args.flavor)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvalError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(out)
    return EXIT_OK


def _cmd_picard(args) -> int:
    grp = pic_sl2(args.g, args.d) if args.group == "sl2" else pic_pgl2(args.g, args.d)
    print(grp)
    return EXIT_OK


def _cmd_present(args) -> int:
    p = presentation(args.g, args.d)
    k = kappa_presentation(args.g, args.d)
    n = args.g + 1
    k01, km12 = KAPPA_TABLE.gens()
    gen_k = k01 * args.d - km12 * (args.g - 1)
    print(f"A*(g={args.g}, d={args.d}) = Q[a1, a2p] / (({relation_generator(args.g, args.d)})^{n})")
    print(f"  in kappa classes: Q[k01, km12] / (({gen_k})^{n})")
    print(f"  k01 = kappa(0,1), km12 = kappa(-1,2); expanded relation: {p.relation}")
    ok = p.ok and k.ok
    print(f"  checks: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


_VALUE_FLAGS = ("--g", "--d")


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--d -2..4`` into ``--d=-2..4``; argparse reads ``-2..4`` as an option."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(a)
            elif re.fullmatch(r"-\d+(\.\.-?\d+)?", nxt):
                out.append(f"{a}={nxt}")
            else:
                out.extend((a, nxt))
        else:
            out.append(a)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_join_negative_values(argv))
        handler = {"verify": _cmd_verify, "eval": _cmd_eval, "picard": _cmd_picard, "present": _cmd_present}
        return handler[args.command](args)
    except UsageError as exc:
        print(f"hyperjac: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
