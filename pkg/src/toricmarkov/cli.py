"""Command-line interface: ``toric-markov <subcommand> MATRIX [options]``.

Exit codes: 0 success, 2 parse or usage error, 3 not a configuration matrix,
4 budget or size limit exceeded, 5 a supplied move set failed verification.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from . import markov
from .errors import (
    BadSequence,
    BudgetExceeded,
    EmptyMatrix,
    FiberTooLarge,
    LimitExceeded,
    MovesNotInKernel,
    NotConfiguration,
    NotGenerating,
    ParseError,
    ZeroColumn,
)
from .exactla import ConfigMatrix, admit_matrix
from .fibergraph import fiber_graph, to_dot
from .seedbasis import DEFAULT_PAIR_BUDGET
from .textio import format_binomial_line, format_rows, parse_bases, parse_matrix

EXIT_OK, EXIT_USAGE, EXIT_NOT_CONFIG, EXIT_LIMIT, EXIT_VERIFY = 0, 2, 3, 4, 5

FORMATS = ("rows", "json", "binomials")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("matrix", nargs="?", help='matrix such as "7,8,9,10" or "1 0; 0 1"')
    common.add_argument("--file", help="read the matrix from a file (text or JSON)")
    common.add_argument("--format", choices=FORMATS, default="rows")
    common.add_argument("--seed-basis", metavar="FILE",
                        help="use this generating set instead of computing one (verified first)")
    common.add_argument("--fiber-limit", type=int, default=None, metavar="N")
    common.add_argument("--pairs-budget", type=int, default=DEFAULT_PAIR_BUDGET, metavar="N")
    common.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="toric-markov", description="Minimal Markov bases of toric ideals.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("seed", parents=[common], help="a (possibly non-minimal) Markov basis")
    p = sub.add_parser("bases", parents=[common], help="all minimal Markov bases")
    p.add_argument("--limit", type=int, default=markov.DEFAULT_MATERIALIZE_LIMIT, metavar="N")
    sub.add_parser("count", parents=[common], help="number of minimal Markov bases")
    p = sub.add_parser("random", parents=[common], help="uniformly random minimal Markov bases")
    p.add_argument("--count", type=int, default=1, metavar="N")
    p.add_argument("--rng-seed", type=int, default=None, metavar="S")
    sub.add_parser("indispensable", parents=[common], help="the indispensable set")
    sub.add_parser("universal", parents=[common], help="the universal Markov basis")
    p = sub.add_parser("fiber-graph", parents=[common], help="fiber graphs of the generating fibers")
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    p.add_argument("--key", help="show this fiber instead, e.g. 3 or 2,0,1")
    p = sub.add_parser("prufer", help="decode a Pruefer sequence")
    p.add_argument("--seq", "--prufer", dest="seq", required=True, help='e.g. "0,0,2,4"')
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("verify", parents=[common], help="check move sets for the Markov property")
    p.add_argument("--moves", metavar="FILE", default="-",
                   help="move sets in rows/json/binomials format (default: stdin)")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_matrix(args) -> ConfigMatrix:
    if args.file:
        text = _read(args.file)
    elif args.matrix is not None:
        text = args.matrix
    else:
        raise _UsageError("a matrix is required (positional or --file)")
    A = admit_matrix(parse_matrix(text))
    if args.seed_basis:
        groups = parse_bases(_read(args.seed_basis), A.n)
        moves = [z for g in groups for z in g]
        markov.use_seed_basis(A, moves, args.pairs_budget, args.time_budget, args.fiber_limit)
    else:
        markov.seed_basis(A, args.pairs_budget, args.time_budget)
    markov.generating_fibers(A, args.fiber_limit)
    return A


def _emit_basis(out, A: ConfigMatrix, basis: markov.MarkovBasis, fmt: str) -> None:
    if fmt == "rows":
        out.write(format_rows(basis.moves))
    elif fmt == "binomials":
        out.write(format_binomial_line(basis.moves))
    else:
        obj = {"matrix": [list(r) for r in A.rows], "kind": basis.kind,
               "moves": [list(z) for z in basis.moves]}
        out.write(json.dumps(obj) + "\n")


def _emit_bases(out, A: ConfigMatrix, bases, kind: str, fmt: str, count: int | None) -> None:
    if fmt == "json":
        obj = {"matrix": [list(r) for r in A.rows], "kind": kind,
               "bases": [[list(z) for z in b.moves] for b in bases]}
        if count is not None:
            obj["count"] = str(count)
        out.write(json.dumps(obj) + "\n")
        return
    for i, b in enumerate(bases):
        if fmt == "rows" and i:
            out.write("\n")
        _emit_basis(out, A, b, fmt)


def _fiber_text(graphs) -> str:
    lines = []
    for g in graphs:
        lines.append("fiber " + " ".join(map(str, g.key)))
        for comp in g.component_elements:
            lines.append("  " + " | ".join(" ".join(map(str, u)) for u in comp))
    return "\n".join(lines) + ("\n" if lines else "")


def _run(args, out) -> int:
    if args.command == "prufer":
        try:
            seq = [int(s) for s in args.seq.replace(",", " ").split()]
        except ValueError:
            raise _UsageError(f"bad sequence {args.seq!r}") from None
        edges = markov.prufer_tree(seq, args.n)
        out.write(" ".join(f"{{{a},{b}}}" for a, b in edges) + "\n")
        return EXIT_OK

    A = _load_matrix(args)
    fmt = args.format
    cmd = args.command
    if cmd == "count":
        total = markov.count_markov(A)
        if fmt == "json":
            obj = {"matrix": [list(r) for r in A.rows], "kind": "minimal", "count": str(total)}
            out.write(json.dumps(obj) + "\n")
        else:
            out.write(f"{total}\n")
    elif cmd == "seed":
        _emit_basis(out, A, markov.seed_basis(A), fmt)
    elif cmd == "bases":
        total = markov.count_markov(A)
        if total > args.limit:
            raise LimitExceeded(f"{total} bases exceed --limit {args.limit}")
        _emit_bases(out, A, markov.markov_bases(A), "minimal", fmt, total)
    elif cmd == "random":
        if args.count < 1:
            raise _UsageError("--count must be at least 1")
        _emit_bases(out, A, markov.random_markov(A, args.rng_seed, args.count), "sample", fmt, None)
    elif cmd == "indispensable":
        _emit_basis(out, A, markov.indispensable_set(A), fmt)
    elif cmd == "universal":
        _emit_basis(out, A, markov.universal_markov(A), fmt)
    elif cmd == "fiber-graph":
        if args.key is not None:
            try:
                key = tuple(int(x) for x in args.key.replace(",", " ").split())
            except ValueError:
                raise _UsageError(f"bad fiber key {args.key!r}") from None
            if len(key) != A.d:
                raise _UsageError(f"--key needs {A.d} entries")
            graphs = [fiber_graph(A, key, args.fiber_limit)]
        else:
            graphs = markov.generating_fibers(A)
        if args.dot:
            out.write("".join(to_dot(g, f"fiber{i}") for i, g in enumerate(graphs)))
        elif fmt == "json":
            obj = {"matrix": [list(r) for r in A.rows], "fibers": [
                {"key": list(g.key), "elements": [list(u) for u in g.fiber.elements],
                 "components": [list(c) for c in g.components]} for g in graphs]}
            out.write(json.dumps(obj) + "\n")
        else:
            out.write(_fiber_text(graphs))
    elif cmd == "verify":
        groups = parse_bases(_read(args.moves), A.n)
        ok = True
        for moves in groups:
            verdict = markov.verify_markov_basis(A, moves)
            ok = ok and verdict.generates
            line = f"generates={str(verdict.generates).lower()} minimal={str(verdict.minimal).lower()}"
            if verdict.certificate is not None:
                t, u, v = verdict.certificate
                line += (f" fiber={','.join(map(str, t))} unconnected="
                         f"{','.join(map(str, u))}|{','.join(map(str, v))}")
            out.write(line + "\n")
        return EXIT_OK if ok else EXIT_VERIFY
    return EXIT_OK


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    err = sys.stderr
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"toric-markov: {exc}", file=err)
        return EXIT_USAGE
    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.DEBUG, stream=err)
    try:
        return _run(args, out)
    except (_UsageError, ParseError, BadSequence, EmptyMatrix, OSError) as exc:
        print(f"toric-markov: {exc}", file=err)
        return EXIT_USAGE
    except (NotConfiguration, ZeroColumn) as exc:
        print(f"toric-markov: {exc}", file=err)
        return EXIT_NOT_CONFIG
    except (BudgetExceeded, FiberTooLarge, LimitExceeded) as exc:
        print(f"toric-markov: {exc}", file=err)
        return EXIT_LIMIT
    except (NotGenerating, MovesNotInKernel) as exc:
        print(f"toric-markov: supplied moves rejected: {exc}", file=err)
        return EXIT_VERIFY


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
