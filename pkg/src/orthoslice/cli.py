"""Command-line front end: ``orthoslice <verb> [flags]``.

Exit codes: 0 when every check passes, 2 when a verification fails, 1 on a
usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import suites
from .reports import emit

EXIT_PASS, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--tol-track", type=float, default=1e-8, help="path tracking tolerance")
    p.add_argument("--tol-real", type=float, default=1e-8, help="imaginary-part tolerance for real points")
    p.add_argument("--tol-dedup", type=float, default=1e-6, help="endpoint deduplication tolerance")
    p.add_argument("--threads", type=int, default=1, help="worker count")
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.add_argument("--expensive", action="store_true",
                   help="also run the 2^15-path full-slice solve for the starred SO(5) slice")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="orthoslice", description="Verify coordinate-slice decompositions of SO(n).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, hlp in (
        ("verify-so3", "the SO(3) slice: four circles and the unique generic two-zero slice"),
        ("verify-hso4", "hollow SO(4): 14 components, their incidence, points, degrees, cuboctahedron"),
        ("verify-so5star", "the starred SO(5) slice: 64 components, incidence, 288 points, polytope"),
        ("witness-so4", "the 40-point witness set of hollow SO(4)"),
        ("polytopes", "face lattices, automorphisms and Euler feasibility"),
        ("all", "every suite above plus the pattern census and a one-candidate slice search"),
    ):
        _common(sub.add_parser(name, help=hlp))
    p = sub.add_parser("enumerate-patterns", help="isomorph-free census of zero patterns")
    _common(p)
    p.add_argument("--m", type=int, default=6)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--edges", type=int, default=12)
    p.add_argument("--max-degree", type=int, default=5)
    p.add_argument("--transpose", choices=("both", "yes", "no"), default="both",
                   help="count with and/or without the transpose symmetry")
    p.add_argument("--out", help="stream representatives to this file (hex bitmask per line)")
    p = sub.add_parser("search-real-slice", help="look for a totally real slice of the starred SO(5) slice")
    _common(p)
    p.add_argument("--strategy", choices=("structured", "random"), default="structured")
    p.add_argument("--budget", type=int, default=1, help="number of candidate hyperplane pairs")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("orthoslice: error: --threads must be positive", file=sys.stderr)
        return EXIT_USAGE
    cfg = suites.RunConfig(args.seed, args.tol_track, args.tol_real, args.tol_dedup, args.threads, args.expensive)
    verbs = {
        "verify-so3": suites.verify_so3,
        "verify-hso4": suites.verify_hso4,
        "verify-so5star": suites.verify_so5star,
        "witness-so4": suites.witness_so4,
        "polytopes": suites.polytopes,
        "all": suites.run_all,
    }
    if args.command in verbs:
        report = verbs[args.command](cfg)
    elif args.command == "enumerate-patterns":
        if not (1 <= args.m <= 8 and 1 <= args.n <= 8 and 0 <= args.edges <= args.m * args.n):
            print("orthoslice: error: need 1 <= m, n <= 8 and 0 <= edges <= m*n", file=sys.stderr)
            return EXIT_USAGE
        report = suites.enumerate_patterns(cfg, args.m, args.n, args.edges, args.max_degree, args.transpose,
                                           args.out)
    else:
        if args.budget < 1:
            print("orthoslice: error: --budget must be positive", file=sys.stderr)
            return EXIT_USAGE
        report = suites.search_slice(cfg, args.strategy, args.budget)
    text = emit(report, args.format)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_PASS if report.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
