"""Command line interface.

Exit codes: 0 on success, 1 when a verification fails, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import steiner, verify
from .cells import CellError, to_text
from .cylinders import expansion_cone
from .oriental import MonotoneMap, cosimplicial_map, oriental, oriental_expansion
from .polygraph import Polygraph

MAX_N = 8


class UsageError(Exception):
    pass


def _read_polygraph(source: str) -> Polygraph:
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc}") from None
    return Polygraph.loads(text)


def _cached_oriental_json(n: int) -> str:
    cache = os.environ.get("ORIENTALIS_CACHE_DIR")
    path = Path(cache) / f"oriental-{n}.json" if cache else None
    if path is not None and path.is_file():
        return path.read_text(encoding="utf-8")
    text = oriental(n).dumps()
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text


def _polygraph_text(S: Polygraph, unicode: bool) -> str:
    lines = []
    for k in S.gens():
        if k.dim == 0:
            lines.append(k.text(unicode))
        else:
            lines.append(f"{k.text(unicode)} : {to_text(S.source(k), unicode)} -> "
                         f"{to_text(S.target(k), unicode)}")
    return "\n".join(lines)


def _check_n(n: int, force: bool = False):
    if n < 0:
        raise UsageError("N must be nonnegative")
    if n > MAX_N and not force:
        raise UsageError(f"N > {MAX_N} is expensive; pass --force to proceed")


def cmd_gen(args) -> int:
    if args.import_ is not None:
        S = _read_polygraph(args.import_)
        if args.json:
            print(S.dumps())
        else:
            print(_polygraph_text(S, args.unicode))
        return 0
    if args.n is None:
        raise UsageError("gen needs N or --import")
    _check_n(args.n, args.force)
    if args.json:
        print(_cached_oriental_json(args.n))
    else:
        print(_polygraph_text(oriental(args.n), args.unicode))
    return 0


def cmd_verify(args) -> int:
    only = [c.strip() for c in args.only.split(",") if c.strip()] if args.only else None
    if args.import_ is not None:
        S = _read_polygraph(args.import_)
        n = args.n if args.n is not None else S.dimension
        report = verify.run(n, only, polygraph=S)
    else:
        if args.n is None:
            raise UsageError("verify needs N or --import")
        _check_n(args.n, args.force)
        try:
            report = verify.run(args.n, only)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps(report.to_json(), indent=1, ensure_ascii=False))
    else:
        print(report.text())
    return 0 if report.passed else 1


def cmd_map(args) -> int:
    try:
        values = tuple(int(v) for v in args.phi.split(","))
    except ValueError:
        raise UsageError(f"bad --phi {args.phi!r}") from None
    n = len(values) - 1 if args.from_ is None else args.from_
    m = max(values) if args.to is None else args.to
    if n != len(values) - 1:
        raise UsageError(f"--phi has {len(values)} values but --from is {n}")
    _check_n(max(n, m))
    try:
        phi = MonotoneMap(n, m, values)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    f = cosimplicial_map(phi)
    e = f.source.parse_cell(args.cell)
    out = f.apply(e)
    if args.json:
        print(json.dumps({"cell": to_text(out)}))
    else:
        print(to_text(out, args.unicode))
    return 0


def cmd_eval(args) -> int:
    _check_n(args.n)
    O = oriental(args.n)
    e = O.parse_cell(args.cell)
    table = steiner.eval(O, e)
    if args.json:
        print(json.dumps(table.to_json(), ensure_ascii=False))
    else:
        print(table.text(args.unicode))
    return 0


def cmd_cone(args) -> int:
    _check_n(args.n)
    if args.n == 0:
        raise UsageError("cones are computed in O_n = X(O_(n-1)), so N must be at least 1")
    O = oriental(args.n)
    cone = expansion_cone(O.parse_cell(args.cell), oriental_expansion(args.n))
    if args.json:
        print(json.dumps(cone.to_json(), ensure_ascii=False))
    else:
        print(cone.text(args.unicode))
        print("# cells: s a_0, t a_0, ..., s a_(n-1), t a_(n-1), principal a_n; "
              "each eps a_i is a principal cell, not an iterated boundary cylinder")
    return 0


def cmd_adc(args) -> int:
    _check_n(args.n, args.force)
    K = steiner.simplex_adc(args.n)
    if args.json:
        print(json.dumps(steiner.adc_to_json(K), ensure_ascii=False))
    else:
        for b in K.basis_elements():
            if b.dim == 0:
                print(f"{b.text(args.unicode)}  e = 1")
            else:
                print(f"d{b.text(args.unicode)} = {K.diff[b].text(args.unicode)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orientalis",
                                     description="Orientals via the expansion monad.")
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--json", action="store_true", help="JSON output")
        p.add_argument("--unicode", action="store_true", help="print keys as ⟨...⟩")

    p = sub.add_parser("gen", help="print the n-th oriental")
    p.add_argument("n", type=int, nargs="?")
    fmt(p)
    p.add_argument("--text", action="store_true", help="text output (default)")
    p.add_argument("--import", dest="import_", metavar="FILE", help="read a polygraph as JSON ('-' for stdin)")
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run the verification checks")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--only", metavar="CHECKS", help="comma separated subset of: " + ", ".join(verify.check_names()))
    p.add_argument("--force", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--import", dest="import_", metavar="FILE")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("map", help="apply the image of an order-preserving map")
    p.add_argument("--phi", required=True, help="values of the map, e.g. 0,0,1")
    p.add_argument("--from", dest="from_", type=int)
    p.add_argument("--to", type=int)
    p.add_argument("--cell", required=True)
    fmt(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("eval", help="table of a cell of O_n")
    p.add_argument("n", type=int)
    p.add_argument("--cell", required=True)
    fmt(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cone", help="expansion cone of a cell of O_n")
    p.add_argument("n", type=int)
    p.add_argument("--cell", required=True)
    fmt(p)
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("adc", help="augmented directed complexes")
    p.add_argument("kind", choices=["simplex"])
    p.add_argument("n", type=int)
    p.add_argument("--force", action="store_true")
    fmt(p)
    p.set_defaults(func=cmd_adc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CellError, steiner.TableError) as exc:
        print(f"orientalis: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
