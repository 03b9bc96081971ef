"""Command-line interface.

Exit codes: 0 success (all checks pass / homeomorphic), 1 a check failed
(or ``classify`` found the pair not homeomorphic), 2 usage, parse or
evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import FourfoldError
from .intlat import descended_divisibility, dn_configuration
from .knotpoly import twist_knot
from .mfdcalc import homeomorphic, invariants, render
from .parser import parse_expr
from .report import report
from .scenarios import REGISTRY, make_spec, run_scenario
from .swcalc import e1_double_twist_values, knot_surgery_series

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(fmt: str, payload: dict, text_lines: list[str]) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _cmd_eval(args) -> int:
    expr = parse_expr(args.expr)
    rec = invariants(expr)
    d = rec.as_dict()
    _emit(args.format, {"expr": render(expr), **d}, [render(expr)] + [f"  {k:<9} {v}" for k, v in d.items()])
    return EXIT_OK


def _cmd_classify(args) -> int:
    a, b = parse_expr(args.expr1), parse_expr(args.expr2)
    ok, reason = homeomorphic(a, b)
    _emit(
        args.format,
        {"a": render(a), "b": render(b), "homeomorphic": ok, "reason": reason},
        [f"{render(a)}  vs  {render(b)}", f"  homeomorphic: {'yes' if ok else 'no'} ({reason})"],
    )
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_divisibility(args) -> int:
    data = dn_configuration(args.n)
    div = descended_divisibility(data.K, data.combined())
    squares = list(data.config1.expected_squares)
    _emit(
        args.format,
        {"n": args.n, "chain_squares": squares, "divisibility": div},
        [f"D({args.n}): chains {squares} (x2)", f"  divisibility of K: {div}"],
    )
    return EXIT_OK


def _cmd_sw(args) -> int:
    twists = args.twist or []
    if args.n == 1:
        if len(twists) not in (1, 2) or len(set(twists)) != 1:
            raise FourfoldError("E(1) values are known only for two surgeries with the same twist knot")
        recs = e1_double_twist_values(twists[0])
        classes = [{"fiber_multiple": r.fiber_multiple, "abs_value": abs(r.value)} for r in recs]
        _emit(
            args.format,
            {"n": 1, "twists": [twists[0]] * 2, "classes": classes, "chamber": recs[0].chamber_note},
            [f"X({twists[0]},1), {recs[0].chamber_note}"]
            + [f"  |SW({c['fiber_multiple']:+d}F)| = {c['abs_value']}" for c in classes],
        )
        return EXIT_OK
    series = knot_surgery_series(args.n, [twist_knot(m) for m in twists])
    classes = [{"fiber_multiple": r.fiber_multiple, "value": r.value} for r in series.basic_classes()]
    _emit(
        args.format,
        {"n": args.n, "twists": twists, "series": str(series), "classes": classes},
        [f"SW = {series}"] + [f"  SW({c['fiber_multiple']:+d}F) = {c['value']}" for c in classes],
    )
    return EXIT_OK


def _parse_param(text: str) -> tuple[str, int]:
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    try:
        return key.strip(), int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{key}: {value!r} is not an integer") from None


def _cmd_theorem(args) -> int:
    cert = run_scenario(make_spec(args.id, **dict(args.param or [])))
    sys.stdout.buffer.write(report(cert, args.format))
    sys.stdout.flush()
    return EXIT_OK if cert.overall else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="fourfold", parents=[fmt], description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[fmt], help="invariants of a manifold expression")
    s.add_argument("expr")
    s.set_defaults(func=_cmd_eval)

    s = sub.add_parser("classify", parents=[fmt], help="decide homeomorphism of two expressions")
    s.add_argument("expr1")
    s.add_argument("expr2")
    s.set_defaults(func=_cmd_classify)

    s = sub.add_parser("divisibility", parents=[fmt], help="divisibility of the canonical class of D(n)")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=_cmd_divisibility)

    s = sub.add_parser("sw", parents=[fmt], help="SW basic classes after knot surgery on E(n)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--twist", type=int, action="append", metavar="M")
    s.set_defaults(func=_cmd_sw)

    s = sub.add_parser("theorem", parents=[fmt], help="run a theorem scenario and print its certificate")
    s.add_argument("id", choices=sorted(REGISTRY))
    s.add_argument("--param", type=_parse_param, action="append", metavar="KEY=VALUE")
    s.set_defaults(func=_cmd_theorem)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "format"):
        args.format = "text"
    try:
        return args.func(args)
    except FourfoldError as exc:
        sys.stderr.write(f"fourfold: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE
