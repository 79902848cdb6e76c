"""Command-line interface: ``classtwo <command> ...``.

Exit codes: 0 yes / valid / equivalent, 1 no / distinct, 2 undetermined over Q,
64 usage error, 65 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import decide
from .decide import NO, UNDETERMINED, YES, Verdict
from .errors import ClassTwoError
from .forms import binary_rational_roots, determinant_pencil, pfaffian_pencil
from .groupfile import parse_group
from .maltsev import format_element, parse_element
from .report import render_text, verdict_object

EXIT_OK, EXIT_NO, EXIT_UNDETERMINED, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 64, 65

_EXIT = {YES: EXIT_OK, NO: EXIT_NO, UNDETERMINED: EXIT_UNDETERMINED}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    search = _Parser(add_help=False)
    search.add_argument("--height", type=int, default=decide.DEFAULT_HEIGHT,
                        help="coefficient height bound for witness searches")
    search.add_argument("--budget", type=int, default=decide.DEFAULT_BUDGET,
                        help="node budget for witness searches")

    p = _Parser(prog="classtwo", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("check", parents=[common], help="validate a group file")
    c.add_argument("file")
    c = sub.add_parser("pfaffian", parents=[common], help="Pfaffian form of a rank-2 centre")
    c.add_argument("file")
    for name, helptext in (("embed-standard", "does N(k,1) embed in the group"),
                           ("approx-standard", "is the group approximated by N(k,1)")):
        c = sub.add_parser(name, parents=[common, search], help=helptext)
        c.add_argument("file")
        c.add_argument("--k", type=int, required=True)
    for name in ("precedes", "equiv"):
        c = sub.add_parser(name, parents=[common, search])
        c.add_argument("file_a")
        c.add_argument("file_b")
    sub.add_parser("paper-example", parents=[common],
                   help="run the rank-2 example through every criterion")
    c = sub.add_parser("bch", parents=[common], help="multiply two element words")
    c.add_argument("file")
    c.add_argument("expr_a")
    c.add_argument("expr_b")
    return p


def _emit(args, verdict_obj, text, extra=None):
    if args.format == "json":
        payload = {"command": args.command, "verdict": verdict_obj}
        if extra:
            payload.update(extra)
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _run(args) -> int:
    cmd = args.command
    if cmd == "check":
        g = parse_group(args.file)
        rad = g.radical().cols
        v = Verdict(f"{g.name} is a valid group", YES, {"group": g, "radical_dim": rad},
                    [f"dimV = {g.dimV}, dimW = {g.dimW}", "bracket coordinates are alternating",
                     "bracket image spans the centre"], [decide.IMAGE_SPANS_CENTRE])
        text = f"valid: {g.name} (dimV = {g.dimV}, dimW = {g.dimW})"
        if rad:
            text += f"\nnote: bracket radical of dimension {rad}"
        _emit(args, verdict_object(v), text)
        return EXIT_OK
    if cmd == "pfaffian":
        g = parse_group(args.file)
        pf = pfaffian_pencil(g.pencil)
        det = determinant_pencil(g.pencil)
        rep = binary_rational_roots(pf) if not pf.is_zero else None
        roots = [] if rep is None else [f"{p} ×{m}" for p, m in rep.roots]
        text = [f"pfaffian: {pf.compact()}", f"  full: {pf}", f"determinant: {det.compact()}",
                "roots: " + (", ".join(roots) if roots else ("all" if rep is None else "none"))]
        if rep is not None and rep.leftover.degree:
            text.append(f"leftover: {rep.leftover.compact()}")
        cert = {"pfaffian": pf, "determinant": det,
                "roots": [] if rep is None else [{"point": p, "multiplicity": m}
                                                 for p, m in rep.roots],
                "leftover": None if rep is None else rep.leftover}
        v = Verdict(f"Pfaffian form of {g.name}", YES, cert, text[:], [])
        _emit(args, verdict_object(v), "\n".join(text))
        return EXIT_OK
    if cmd in ("embed-standard", "approx-standard"):
        g = parse_group(args.file)
        if cmd == "embed-standard":
            v = decide.embeds_standard(g, args.k, height=args.height, budget=args.budget)
        else:
            v = decide.approx_by_standard(g, args.k)
        _emit(args, verdict_object(v), render_text(v))
        return _EXIT[v.answer]
    if cmd in ("precedes", "equiv"):
        a, b = parse_group(args.file_a), parse_group(args.file_b)
        fn = decide.precedes if cmd == "precedes" else decide.geom_equiv
        v = fn(a, b, height=args.height, budget=args.budget)
        _emit(args, verdict_object(v), render_text(v))
        return _EXIT[v.answer]
    if cmd == "paper-example":
        v = decide.paper_example()
        _emit(args, verdict_object(v), render_text(v))
        return _EXIT[v.answer]
    if cmd == "bch":
        g = parse_group(args.file)
        x, y = parse_element(g, args.expr_a), parse_element(g, args.expr_b)
        z = x * y
        v = Verdict(f"({args.expr_a}) * ({args.expr_b})", YES,
                    {"x": x, "y": y, "product": z, "word": format_element(g, z)}, [], [])
        text = f"{x!r} * {y!r} = {z!r}\nword: {format_element(g, z)}"
        _emit(args, verdict_object(v), text)
        return EXIT_OK
    raise UsageError(f"unknown command {cmd}")


def run_command(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        return _run(args)
    except (ClassTwoError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
