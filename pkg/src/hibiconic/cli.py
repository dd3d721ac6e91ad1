"""Command line interface.

Subcommands ``conic``, ``fsig``, ``nccr``, ``mutate``, ``graph`` and
``check``. Exit status 2 means the input could not be parsed, 3 that the
request makes no sense for the input (an NCCR for a poset that is not a
Segre product, a mutation without admissible functional), 4 that an
enumeration hit ``--cap`` and the output is partial.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .checks import run_checks
from .conic import CapExceeded, cell_of, conic_polytope, enumerate_conic
from .exact import format_rational
from .geometry import signature_table
from .hasse import TreeError, choose_spanning_tree
from .mutation import MutationError, admissible_patterns, exchange_graph, left_mutation, negate, right_mutation
from .poset import AugmentedPoset, PosetError, augment, disjoint_chains, load_poset, parse_segre_lengths
from .segre import L_tilde, SegreSpec, conic_classes, nccr_set, parse_segre_nccr, segre_tree
from .serialize import cell_to_json, classes_to_csv, signature_rows, signatures_to_csv

EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_CAP = 4


class UsageError(Exception):
    def __init__(self, message: str, code: int = EXIT_PARSE) -> None:
        super().__init__(message)
        self.code = code


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _dump(obj) -> None:
    _emit(json.dumps(obj, indent=2, ensure_ascii=False))


def _point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",")) if text.strip() else ()
    except ValueError:
        raise UsageError(f"bad point {text!r}") from None


def _load(args) -> tuple[AugmentedPoset, bool]:
    """The poset from a file or ``--segre``; flag tells whether it is a Segre poset."""
    if getattr(args, "segre", None):
        return augment(disjoint_chains(parse_segre_lengths(args.segre))), True
    if not getattr(args, "poset", None):
        raise UsageError("give a poset file or --segre")
    try:
        return augment(load_poset(args.poset)), False
    except OSError as exc:
        raise UsageError(f"cannot read {args.poset}: {exc}") from None


def _tree(args, ap: AugmentedPoset, segre: bool):
    if args.tree:
        try:
            return choose_spanning_tree(ap, [ap.parse_edge(tok) for tok in args.tree.split(",")])
        except KeyError as exc:
            raise UsageError(str(exc)) from None
    return segre_tree(ap) if segre else choose_spanning_tree(ap)


def _segre_spec(args) -> SegreSpec:
    if getattr(args, "segre_nccr", None):
        return parse_segre_nccr(args.segre_nccr)
    ap, _ = _load(args)
    if not ap.is_pure():
        raise UsageError("the Hibi ring is not Gorenstein, so no NCCR of this kind", EXIT_INFEASIBLE)
    P = ap.poset
    ups = {a: b for a, b in P.covers}
    downs = {b for _, b in P.covers}
    if len(ups) != len(P.covers) or len(downs) != len(P.covers):
        raise UsageError("NCCRs are only implemented for Segre products (disjoint chains)", EXIT_INFEASIBLE)
    lengths = []
    for e in P.elements:
        if e not in downs:
            k = 1
            while e in ups:
                e = ups[e]
                k += 1
            lengths.append(k)
    if len(lengths) < 2:
        raise UsageError("a Segre product needs at least two chains", EXIT_INFEASIBLE)
    return SegreSpec(t=len(lengths), r=lengths[0] + 1)


def cmd_conic(args) -> int:
    ap, segre = _load(args)
    tree = _tree(args, ap, segre)
    code = 0
    try:
        classes = enumerate_conic(conic_polytope(ap, tree), cap=args.cap)
    except CapExceeded as exc:
        classes, code = exc.partial, EXIT_CAP
    if args.format == "csv":
        _emit(classes_to_csv(classes))
    else:
        _dump({
            "tree": tree.labels(),
            "cotree": [ap.edge_label(k) for k in tree.cotree],
            "classes": [{"class": list(k), "cell": cell_to_json(cell_of(tree, k))} for k in classes],
            "truncated": code == EXIT_CAP,
        })
    return code


def cmd_fsig(args) -> int:
    ap, segre = _load(args)
    tree = _tree(args, ap, segre)
    table = signature_table(ap, tree)
    if args.format == "csv":
        _emit(signatures_to_csv(table))
    else:
        _dump({
            "tree": tree.labels(),
            "cotree": [ap.edge_label(k) for k in tree.cotree],
            "signatures": signature_rows(table),
            "total": format_rational(sum(table.values())),
        })
    return 0


def cmd_nccr(args) -> int:
    spec = _segre_spec(args)
    _dump({
        "r": spec.r,
        "t": spec.t,
        "L": [list(c) for c in nccr_set(spec)],
        "conic": [list(c) for c in conic_classes(spec)],
        "L_tilde": [list(c) for c in L_tilde(spec)],
    })
    return 0


def cmd_mutate(args) -> int:
    spec = _segre_spec(args)
    L = frozenset(_point(p) for p in args.set.split(";")) if args.set else frozenset(nccr_set(spec))
    chi = _point(args.at)
    if chi not in L:
        raise UsageError(f"{chi} is not in the generator set")
    try:
        if args.left:
            M = left_mutation(spec, L, chi)
            found = admissible_patterns(spec, negate(L), tuple(-v for v in chi))
        else:
            M = right_mutation(spec, L, chi)
            found = admissible_patterns(spec, L, chi)
    except MutationError as exc:
        raise UsageError(str(exc), EXIT_INFEASIBLE) from None
    (nu,) = M - L
    _dump({
        "direction": "left" if args.left else "right",
        "chi": list(chi),
        "nu": list(nu),
        "lambda": [format_rational(v) for v in found[0].lam],
        "pattern": list(found[0].pattern),
        "result": [list(p) for p in sorted(M)],
    })
    return 0


def cmd_graph(args) -> int:
    spec = _segre_spec(args)
    g = exchange_graph(spec, mode=args.mode, cap=args.cap, jobs=args.jobs)
    if args.format == "dot":
        _emit(g.to_dot())
    else:
        _dump(g.to_json())
    return EXIT_CAP if g.truncated else 0


def cmd_check(args) -> int:
    ap, segre = _load(args)
    tree = _tree(args, ap, segre)
    reports = run_checks(ap, tree, trials=args.trials, seed=args.seed)
    for rep in reports:
        _emit(rep.line())
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hibiconic", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def poset_source(p):
        p.add_argument("poset", nargs="?", help="poset JSON file")
        p.add_argument("--segre", metavar="R1,...,RT", help="disjoint chains with these numbers of elements")
        p.add_argument("--tree", metavar="EDGES", help="spanning tree as e1,e2,... or a<b,... edge tokens")

    def segre_source(p):
        p.add_argument("poset", nargs="?", help="poset JSON file (must be disjoint chains of equal length)")
        p.add_argument("--segre", metavar="R1,...,RT", help="disjoint chains with these numbers of elements")
        p.add_argument("--segre-nccr", metavar="r=R,t=T", help="t polynomial rings in r variables")

    p = sub.add_parser("conic", help="conic classes and their cells")
    poset_source(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--cap", type=int, default=10000)
    p.set_defaults(func=cmd_conic)

    p = sub.add_parser("fsig", help="generalized F-signatures")
    poset_source(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_fsig)

    p = sub.add_parser("nccr", help="NCCR generator set of a Segre product")
    segre_source(p)
    p.set_defaults(func=cmd_nccr)

    p = sub.add_parser("mutate", help="mutate an NCCR generator set at one point")
    segre_source(p)
    p.add_argument("--at", required=True, metavar="C1,...", help="point to mutate at")
    p.add_argument("--set", metavar="P;Q;...", help="generator set, points separated by ';' (default: L)")
    p.add_argument("--left", action="store_true", help="left instead of right mutation")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("graph", help="exchange graph of NCCR generator sets")
    segre_source(p)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--mode", choices=("generators", "translation"), default="generators")
    p.add_argument("--cap", type=int, default=10000)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("check", help="run the internal consistency checks on a poset")
    poset_source(p)
    p.add_argument("--trials", type=int, default=3, help="random spanning trees to compare")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PosetError, TreeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
