#!/usr/bin/env python3
"""
Command-line entry point of the quiver invariants lab.

Subcommands:
    mutate          apply a mutation sequence to a quiver file
    carriage-graph  components of the carriage flip graph
    check           symbolic invariance check of an invariant
    search          degree-bounded invariant search
    orbit           random mutation walk watching invariants
    integer-orbit   orbit enumeration of an integer quiver

Exit codes: 0 on success, 1 when a property fails (a witness is found,
a verification fails, a watched invariant varies), 2 for usage, input
and resource errors. Reports go to standard output, logs to standard
error; `--json` switches every report to canonical JSON.
"""
import argparse
import sys
from typing import Callable, Dict, List, Optional, TextIO

from core.carriage_graph import component_lines, component_report, components
from core.exact_poly import format_poly, format_rat
from core.quiver import (Quiver, letter_form, mutate, pfaffian,
                         sign_pattern)
from errors import FormatError, LabError
from invariants.carriage_wise import (CarriageWisePolynomial, Witness,
                                      check_invariant_symbolic)
from invariants.invariant_factory_provider import \
    DefaultInvariantFactoryProvider
from invariants.search import search_invariants, verify_spanned_by_det
from logger import get_logger
from models.base import dump_json
from orbits.orbit_lab import integer_orbit_bfs, random_mutation_walk
from utils import parse_vertex_list

logger = get_logger(__name__)

invariant_provider = DefaultInvariantFactoryProvider()


def load_invariant(source: str) -> CarriageWisePolynomial:
    """A built-in invariant by name, otherwise an invariant file."""
    if source in invariant_provider.FACTORY_MAP:
        return invariant_provider.get_factory(source).create_invariant()
    return CarriageWisePolynomial.load_from_file(source)


def _pattern_text(Q: Quiver) -> str:
    return sign_pattern(Q).text if Q.is_inner else "boundary"


def cmd_mutate(args: argparse.Namespace, out: TextIO) -> int:
    try:
        sequence = parse_vertex_list(args.seq)
    except ValueError:
        raise FormatError(f"not a vertex sequence: {args.seq!r}")
    Q = Quiver.load_from_file(args.input)
    trail = []
    for step, k in enumerate(sequence, start=1):
        Q = mutate(Q, k)
        entry = {"step": step, "k": k, "pattern": _pattern_text(Q),
                 "upper": Q.to_json()["upper"]}
        if Q.n % 2 == 0:
            entry["pfaffian"] = format_rat(pfaffian(Q))
        trail.append(entry)
    if args.out:
        Q.save_to_file(args.out)
    if args.json:
        out.write(dump_json({"trail": trail, "result": Q.to_json()}))
        return 0
    for entry in trail:
        line = f"step {entry['step']}: mu_{entry['k']} -> {entry['pattern']}"
        if "pfaffian" in entry:
            line += f"  Pf={entry['pfaffian']}"
        out.write(line + "\n")
    if not args.out:
        out.write(Q.dumps())
    return 0


def cmd_carriage_graph(args: argparse.Namespace, out: TextIO) -> int:
    if args.json:
        parts = components(args.n)
        out.write(dump_json({
            "n": args.n,
            "connected": len(parts) == 1,
            "components": [{"size": len(part), "least": part[0].text}
                           for part in parts],
        }))
        return 0
    out.write(component_report(args.n) + "\n")
    if args.components:
        for line in component_lines(args.n):
            out.write(line + "\n")
    return 0


def cmd_check(args: argparse.Namespace, out: TextIO) -> int:
    F = load_invariant(args.invariant)
    result = check_invariant_symbolic(F, args.seed)
    if isinstance(result, Witness):
        if args.json:
            out.write(dump_json({"verified": False,
                                 "witness": result.to_json()}))
        else:
            data = result.to_json()
            out.write("not invariant\n")
            out.write(f"  s={data['s']} k={data['k']} t={data['t']}\n")
            out.write(f"  diff: {data['diff']}\n")
            if "point" in data:
                out.write(f"  point: {', '.join(data['point'])}\n")
                out.write(f"  image: {', '.join(data['image'])}\n")
        return 1
    if args.json:
        out.write(dump_json({"verified": True}))
    else:
        out.write("verified\n")
    return 0


def _element_lines(F: CarriageWisePolynomial) -> List[str]:
    if F.is_uniform:
        piece = next(iter(F.pieces.values()))
        lines = [f"  {format_poly(piece)}"]
        if F.n == 4:
            lines.append(f"  letters: {letter_form(piece)}")
        return lines
    return [f"  {s.text}: {format_poly(p)}" for s, p in F.pieces.items()]


def cmd_search(args: argparse.Namespace, out: TextIO) -> int:
    basis = search_invariants(args.n, args.degree, args.mode,
                              sample_prepass=args.sample_prepass,
                              seed=args.seed)
    if args.out:
        basis.save_to_file(args.out)
    span = verify_spanned_by_det(basis) if basis.n == 4 else None
    if args.json:
        data = basis.to_json()
        if span is not None:
            data["det_span"] = span.to_json()
        out.write(dump_json(data))
    else:
        out.write(f"dimension {basis.dimension}\n")
        for index, F in enumerate(basis.elements):
            out.write(f"element {index}:\n")
            for line in _element_lines(F):
                out.write(line + "\n")
        if span is not None:
            out.write(span.describe() + "\n")
    if span is not None and not span.ok:
        logger.warning(span.describe())
        return 1
    return 0


def cmd_orbit(args: argparse.Namespace, out: TextIO) -> int:
    Q = Quiver.load_from_file(args.input)
    watch = [load_invariant(source) for source in args.watch]
    report = random_mutation_walk(Q, args.steps, args.seed, watch,
                                  args.watch)
    if args.out:
        report.save_to_file(args.out)
    out.write(report.dumps())
    varying = report.varying()
    if varying:
        logger.warning(f"watched invariants vary: {', '.join(varying)}")
        return 1
    return 0


def cmd_integer_orbit(args: argparse.Namespace, out: TextIO) -> int:
    Q = Quiver.load_from_file(args.input)
    out.write(integer_orbit_bfs(Q, args.cap).dumps())
    return 0


COMMANDS: Dict[str, Callable[[argparse.Namespace, TextIO], int]] = {
    "mutate": cmd_mutate,
    "carriage-graph": cmd_carriage_graph,
    "check": cmd_check,
    "search": cmd_search,
    "orbit": cmd_orbit,
    "integer-orbit": cmd_integer_orbit,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverlab",
        description="Exact experiments with invariants of quiver mutation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--json", action="store_true",
                       help="print the report as JSON")
        return p

    p = command("mutate", "apply a mutation sequence to a quiver")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--seq", default="", help="vertices, e.g. 4,2,2")
    p.add_argument("--out")

    p = command("carriage-graph", "components of the flip graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--components", action="store_true",
                   help="list every component")

    p = command("check", "symbolic invariance check")
    p.add_argument("--invariant", required=True,
                   help="invariant file, or det / markov")
    p.add_argument("--seed", type=int, default=None)

    p = command("search", "degree-bounded invariant search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--mode", choices=("full", "collapsed"),
                   default="collapsed")
    p.add_argument("--out")
    p.add_argument("--sample-prepass", action="store_true")
    p.add_argument("--seed", type=int, default=None)

    p = command("orbit", "random mutation walk")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--watch", action="append", default=[],
                   help="det, markov or an invariant file; repeatable")
    p.add_argument("--out")

    p = command("integer-orbit", "orbit enumeration of an integer quiver")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--cap", type=int, default=10000)
    return parser


def main(argv: Optional[List[str]] = None, out: TextIO = None) -> int:
    """Run one command and return its exit code."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except LabError as err:
        sys.stderr.write(f"error: {err}\n")
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
