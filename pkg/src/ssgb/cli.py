"""Command line entry point.

    ssgb gb system.txt [--algorithm ssg|buchberger] [--raw] [--certify]
                       [--check-invariants] [--verify] [--stats out.json]
    ssgb gb --bench katsura:4[:32003] [--order lex]
    ssgb gb --bench random:3[:7] --seed 5
    ssgb verify system.txt basis.txt

Exit codes: 0 success, 1 parse/usage error, 2 verification failure,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .algebra import DEFAULT_MODULUS, ORDERS, is_prime
from .engine import (
    EngineOptions,
    IterationLimitExceeded,
    InvariantViolation,
    incremental_groebner,
    interreduce,
)
from .frontend import (
    ParseError,
    SystemDescription,
    format_basis,
    gen_benchmark,
    parse_system,
    random_system,
)
from .oracle import buchberger, certify_labeled, ideal_membership, is_groebner_basis
from .stats import RunStats

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_INTERNAL = 3

log = logging.getLogger("ssgb")


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    basis: list
    stats: RunStats
    algorithm: str
    raw: Optional[list] = None
    verdicts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())


def _same_ideal(G, F) -> bool:
    """(G) == (F), each side tested against a Buchberger basis of the other."""
    G_gb = buchberger(G)
    if not all(ideal_membership(f, G_gb) for f in F):
        return False
    F_gb = buchberger(F)
    return all(ideal_membership(g, F_gb) for g in G)


def run_gb(
    desc: SystemDescription,
    algorithm: str = "ssg",
    certify: bool = False,
    check_invariants: bool = False,
    verify: bool = False,
    sort_by_degree: bool = False,
) -> RunReport:
    stats = RunStats()
    F = desc.generators
    if algorithm == "ssg":
        opts = EngineOptions(
            certify=certify, check_invariants=check_invariants, sort_by_degree=sort_by_degree
        )
        trace: list = []
        basis = incremental_groebner(F, opts, stats, trace)
        raw = trace[-1].raw_basis() if trace else list(basis)
        report = RunReport(basis, stats, algorithm, raw)
        if certify:
            report.verdicts["certify"] = all(
                certify_labeled(h, state.f, state.G) for state in trace for h in state.R
            )
    elif algorithm == "buchberger":
        started = time.perf_counter()
        raw = buchberger(F, stats)
        basis = interreduce(raw)
        stats.basis_size_reduced = len(basis)
        stats.wall_time = time.perf_counter() - started
        report = RunReport(basis, stats, algorithm, raw)
    else:
        raise UsageError(f"unknown algorithm {algorithm!r}")
    if verify:
        nonzero = [g for g in basis if g.terms]
        report.verdicts["gb_check"] = not nonzero or is_groebner_basis(nonzero)
        report.verdicts["ideal_equality"] = _same_ideal(nonzero, F)
        if algorithm == "ssg":
            report.verdicts["oracle_match"] = interreduce(buchberger(F)) == basis
    return report


def _bench_system(text: str, order: str, seed: Optional[int]) -> SystemDescription:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"--bench expects family:n[:p], got {text!r}")
    family = parts[0]
    try:
        n = int(parts[1])
        p = int(parts[2]) if len(parts) == 3 else DEFAULT_MODULUS
    except ValueError:
        raise UsageError(f"--bench expects integers in {text!r}") from None
    if not is_prime(p):
        raise UsageError(f"modulus {p} is not prime")
    if family == "random":
        if not 1 <= n <= 7:
            raise UsageError("random systems support 1 to 7 variables")
        return random_system(random.Random(seed if seed is not None else 0), n, p, order)
    try:
        return gen_benchmark(family, n, p, order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_system(path: str) -> SystemDescription:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        return parse_system(text)
    except ParseError as exc:
        raise UsageError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None


def cmd_gb(args) -> int:
    if args.bench and args.file:
        raise UsageError("give either a system file or --bench, not both")
    if args.bench:
        desc = _bench_system(args.bench, args.order, args.seed)
    elif args.file:
        desc = _read_system(args.file)
    else:
        raise UsageError("missing system file (or --bench)")
    try:
        report = run_gb(
            desc,
            args.algorithm,
            certify=args.certify,
            check_invariants=args.check_invariants,
            verify=args.verify,
            sort_by_degree=args.sort_degree,
        )
    except InvariantViolation as exc:
        print(f"error: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except IterationLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.raw:
        sys.stdout.write(format_basis(report.raw, desc.ring, raw=True))
    else:
        sys.stdout.write(format_basis(report.basis, desc.ring))
    if args.stats:
        with open(args.stats, "w", encoding="utf-8") as fh:
            json.dump(report.stats.as_dict(), fh, indent=2)
            fh.write("\n")
    for name, ok in report.verdicts.items():
        print(f"{name}: {'ok' if ok else 'FAILED'}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    system = _read_system(args.system)
    basis_desc = _read_system(args.basis)
    if basis_desc.ring != system.ring:
        raise UsageError("system and basis files declare different rings")
    G = [g for g in basis_desc.generators if g.terms]
    gb_ok = bool(G) and is_groebner_basis(G)
    ideal_ok = _same_ideal(G, system.generators)
    print(f"gb_check: {'ok' if gb_ok else 'FAILED'}")
    print(f"ideal_equality: {'ok' if ideal_ok else 'FAILED'}")
    return EXIT_OK if gb_ok and ideal_ok else EXIT_VERIFY


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ssgb", description="Signature-based Groebner bases over prime fields.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gb = sub.add_parser("gb", help="compute a reduced Groebner basis")
    gb.add_argument("file", nargs="?")
    gb.add_argument("--algorithm", choices=("ssg", "buchberger"), default="ssg")
    gb.add_argument("--raw", action="store_true", help="print the unreduced output set")
    gb.add_argument("--certify", action="store_true", help="track and check cofactors")
    gb.add_argument("--check-invariants", action="store_true")
    gb.add_argument("--verify", action="store_true", help="cross-check with Buchberger")
    gb.add_argument("--stats", metavar="PATH", help="write run statistics as JSON")
    gb.add_argument("--bench", metavar="FAMILY:N[:P]", help="cyclic, katsura or random")
    gb.add_argument("--order", choices=ORDERS, default="grevlex", help="order for --bench")
    gb.add_argument("--seed", type=int, help="seed for --bench random:N")
    gb.add_argument("--sort-degree", action="store_true", help="adjoin generators by degree")
    gb.set_defaults(func=cmd_gb)

    ver = sub.add_parser("verify", help="check that a basis file is a GB of a system")
    ver.add_argument("system")
    ver.add_argument("basis")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ssgb: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
