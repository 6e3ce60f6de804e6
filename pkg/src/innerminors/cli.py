"""Command-line front end.

One computation per invocation; reports are deterministic for fixed
inputs and budgets so they can serve as golden files.  Machine output
is JSON with sorted keys and carries at least the fields of the text
output.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import NamedTuple, Optional

from .certificates import (
    chi_check,
    discussion_order,
    extraction_pipeline,
    inner_binomials,
    knutson_certify,
    konig_search,
    order6,
    polyomino_ideal,
    sn_partition,
    verify_konig,
)
from .certificates.konig import STRATEGIES
from .errors import BudgetExceeded, InputError, SizeGuardError
from .grid import CellCollection, antidiagonal_partition, parse_cells, render
from .grid.classify import classify
from .groebner import (
    DEFAULT_PAIR_BUDGET,
    DEFAULT_TERM_BUDGET,
    Budget,
    buchberger,
    is_squarefree_monomial_ideal,
)
from .harness import CLAIMS, batch_verify
from .lattice import is_prime_binomial
from .polyring import MonomialOrder

ENV_PAIRS = "INNERMINORS_BUDGET_PAIRS"
ENV_TERMS = "INNERMINORS_BUDGET_TERMS"

PAIRING_CAP = 6


class RunConfig(NamedTuple):
    subcommand: str
    inputs: tuple[str, ...]
    order: str
    order_vars: Optional[str]
    order_scheme: str
    budget_pairs: int
    budget_terms: int
    format: str
    out: Optional[str]


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{name} must be an integer, got {raw!r}")


def _positive(value: int, what: str) -> int:
    if value < 1:
        raise InputError(f"{what} must be positive, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    """Usage mistakes are input errors; keep exit code 2 for budget aborts."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="innerminors",
        description="Binomial ideals of grid cell collections: generators, "
        "bases, certificates, primality, and enumeration.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, order=False, budgets=False, formats=("text", "machine")):
        if order:
            p.add_argument(
                "--order",
                default="discussion",
                choices=("discussion", "order6", "custom"),
                help="monomial order selector",
            )
            p.add_argument(
                "--order-vars",
                help="custom order: ascending variables 'i,j;i,j;...'",
            )
            p.add_argument(
                "--order-scheme",
                default="grevlex",
                choices=("lex", "grlex", "grevlex"),
                help="custom order: comparison scheme",
            )
        if budgets:
            p.add_argument("--budget-pairs", type=int, default=None)
            p.add_argument("--budget-terms", type=int, default=None)
        p.add_argument("--format", default="text", choices=formats)
        p.add_argument("--out", help="write the report to this file")

    p = sub.add_parser("classify", help="shape predicates and path witnesses")
    p.add_argument("input")
    common(p)

    p = sub.add_parser("ideal", help="list the inner 2-minor generators")
    p.add_argument("input")
    common(p, order=True)

    p = sub.add_parser("gb", help="reduced Groebner basis")
    p.add_argument("input")
    common(p, order=True, budgets=True)

    p = sub.add_parser("knutson", help="run the certification pipeline")
    p.add_argument("input")
    common(p, budgets=True)

    p = sub.add_parser("konig", help="search and verify a coprime-initial certificate")
    p.add_argument("input")
    p.add_argument("--strategy", default="auto", choices=STRATEGIES)
    common(p, budgets=True)

    p = sub.add_parser("prime", help="lattice primality oracle and basis criterion")
    p.add_argument("input")
    common(p, budgets=True)

    p = sub.add_parser("extract", help="certify a parallelogram difference")
    p.add_argument("host")
    p.add_argument("removed")
    common(p, budgets=True)

    p = sub.add_parser("chi", help="exhaustive index-pair sweep")
    p.add_argument("--max-n", type=int, default=5)
    common(p)

    p = sub.add_parser("enumerate", help="batch-verify a registered claim")
    p.add_argument("--claim", required=True, choices=sorted(CLAIMS))
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument(
        "--golden",
        action="store_true",
        help="zero the timing column for byte-stable output",
    )
    common(p, budgets=True)

    p = sub.add_parser("render", help="draw the collection")
    p.add_argument("input")
    p.add_argument(
        "--labels",
        default="none",
        choices=("none", "classes"),
        help="vertex labels: anti-diagonal class indices",
    )
    common(p, formats=("text", "machine", "svg"))
    return parser


def _read_collection(path: str) -> CellCollection:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}")
    return parse_cells(text)


def _budget_from(args) -> Budget:
    pairs = args.budget_pairs
    if pairs is None:
        pairs = _env_int(ENV_PAIRS, DEFAULT_PAIR_BUDGET)
    terms = args.budget_terms
    if terms is None:
        terms = _env_int(ENV_TERMS, DEFAULT_TERM_BUDGET)
    return Budget(
        _positive(pairs, "--budget-pairs"), _positive(terms, "--budget-terms")
    )


def _order_from(args, P: CellCollection):
    if args.order == "discussion":
        return discussion_order(P.vertex_set())
    if args.order == "order6":
        return order6(P.vertex_set())
    if not args.order_vars:
        raise InputError("--order custom requires --order-vars")
    variables = []
    for chunk in args.order_vars.split(";"):
        piece = chunk.strip()
        if not piece:
            continue
        parts = piece.split(",")
        if len(parts) != 2:
            raise InputError(f"bad variable {piece!r} in --order-vars")
        try:
            variables.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InputError(f"bad variable {piece!r} in --order-vars")
    try:
        order = MonomialOrder(tuple(variables), args.order_scheme)
    except ValueError as exc:
        raise InputError(str(exc))
    if not order.covers(P.vertex_set()):
        raise InputError("--order-vars does not cover every vertex variable")
    return order


def _emit(args, text_report: str, machine_obj) -> str:
    if args.format == "machine":
        return json.dumps(machine_obj, sort_keys=True, indent=2) + "\n"
    return text_report


def _flag(value: bool) -> str:
    return "yes" if value else "no"


# -- subcommand handlers -------------------------------------------------------


def _cmd_classify(args) -> str:
    P = _read_collection(args.input)
    record = classify(P)
    d = record.as_dict()
    lines = [f"cells: {len(P.cells)}", f"vertices: {len(P.vertex_set())}"]
    for key, value in d.items():
        if isinstance(value, bool):
            lines.append(f"{key}: {_flag(value)}")
        elif value is None:
            lines.append(f"{key}: none")
        else:
            lines.append(f"{key}: {json.dumps(value)}")
    machine = dict(d)
    machine["cells"] = [[c.i, c.j] for c in P.cells]
    machine["vertex_count"] = len(P.vertex_set())
    return _emit(args, "\n".join(lines) + "\n", machine)


def _generators_report(args, P: CellCollection, polys, heading: str) -> str:
    order = _order_from(args, P)
    ordered = sorted(polys, key=lambda f: order.key(f.initial_monomial(order)))
    lines = [f"{heading}: {len(ordered)}"]
    lines.extend(f.canonical_str(order) for f in ordered)
    machine = {
        heading: [f.canonical_str(order) for f in ordered],
        "count": len(ordered),
        "order": order.descriptor(),
    }
    return _emit(args, "\n".join(lines) + "\n", machine)


def _cmd_ideal(args) -> str:
    P = _read_collection(args.input)
    return _generators_report(args, P, polyomino_ideal(P), "generators")


def _cmd_gb(args) -> str:
    P = _read_collection(args.input)
    order = _order_from(args, P)
    basis = buchberger(polyomino_ideal(P), order, _budget_from(args))
    return _generators_report(args, P, basis, "basis")


def _cmd_knutson(args) -> str:
    P = _read_collection(args.input)
    report = knutson_certify(P, _budget_from(args))
    d = report.as_dict()
    lines = [f"verdict: {report.verdict}", f"route: {report.route}"]
    if report.f_polynomial_summary is not None:
        degree, initial = report.f_polynomial_summary
        lines.append(f"product degree: {degree}")
        lines.append(f"product initial: {initial}")
    for name, ok in report.subchecks:
        lines.append(f"check {name}: {_flag(ok)}")
    for flag in report.proxy_flags:
        lines.append(f"flag: {flag}")
    for name, outcome in report.attempts:
        lines.append(f"attempt {name}: {outcome}")
    return _emit(args, "\n".join(lines) + "\n", d)


def _cmd_konig(args) -> str:
    P = _read_collection(args.input)
    budget = _budget_from(args)
    cert = konig_search(P, args.strategy, budget)
    if cert is None:
        return _emit(
            args,
            "certificate: none found\n",
            {"certificate": None, "strategy": args.strategy},
        )
    verification = verify_konig(P, cert, budget)
    order = discussion_order(P.vertex_set())
    lines = [f"strategy: {cert.strategy}", f"height claim: {cert.height_claim}"]
    chosen = []
    for binomial, claimed in cert.chosen:
        lines.append(f"generator {binomial.polynomial.canonical_str(order)}"
                     f" with initial {claimed}")
        chosen.append(
            {
                "generator": binomial.polynomial.canonical_str(order),
                "initial": str(claimed),
            }
        )
    weights = {
        f"{v[0]},{v[1]}": str(w) for v, w in sorted(cert.weight.items())
    }
    for name, ok in verification.checks:
        lines.append(f"check {name}: {_flag(ok)}")
    lines.append(f"height status: {verification.height_status}")
    lines.append(f"verified: {_flag(verification.passed)}")
    machine = {
        "certificate": {
            "strategy": cert.strategy,
            "height_claim": cert.height_claim,
            "chosen": chosen,
            "weights": weights,
        },
        "verification": verification.as_dict(),
    }
    return _emit(args, "\n".join(lines) + "\n", machine)


def _cmd_prime(args) -> str:
    P = _read_collection(args.input)
    budget = _budget_from(args)
    generators = polyomino_ideal(P)
    record = is_prime_binomial(generators, budget)
    row_order = order6(P.vertex_set())
    basis = buchberger(generators, row_order, budget)
    reduced_matches = {g.monic(row_order) for g in basis} == {
        g.monic(row_order) for g in generators
    }
    squarefree = is_squarefree_monomial_ideal(
        g.initial_monomial(row_order) for g in basis
    )
    criterion = reduced_matches and squarefree
    lines = [
        f"prime: {_flag(record.is_prime)}",
        f"saturation index: {record.saturation_index}",
        f"witness: {record.witness.canonical_str() if record.witness else 'none'}",
        f"row-order basis equals generators: {_flag(reduced_matches)}",
        f"row-order initials squarefree: {_flag(squarefree)}",
        f"basis criterion applies: {_flag(criterion)}",
    ]
    machine = {
        "is_prime": record.is_prime,
        "saturation_index": record.saturation_index,
        "witness": record.witness.canonical_str() if record.witness else None,
        "basis_criterion": {
            "reduced_basis_equals_generators": reduced_matches,
            "squarefree_initials": squarefree,
            "applies": criterion,
        },
        "lattice_hnf": [list(r) for r in record.lattice_hnf],
        "saturation_hnf": [list(r) for r in record.saturation_hnf],
    }
    return _emit(args, "\n".join(lines) + "\n", machine)


def _cmd_extract(args) -> str:
    host = _read_collection(args.host)
    removed = _read_collection(args.removed)
    report = extraction_pipeline(host, removed, _budget_from(args))
    d = report.as_dict()
    lines = [
        f"difference cells: {len(report.difference.cells)}",
        f"split classes: a={report.a} b={report.b}",
        f"proof branch: {report.proof_branch}",
        f"first side: {', '.join(f'({c.i},{c.j})' for c in report.q1_cells)}",
        f"second side: {', '.join(f'({c.i},{c.j})' for c in report.q2_cells)}",
    ]
    for name, ok in report.subchecks:
        lines.append(f"check {name}: {_flag(ok)}")
    lines.append(f"passed: {_flag(report.passed)}")
    return _emit(args, "\n".join(lines) + "\n", d)


def _cmd_chi(args) -> str:
    if args.max_n < 2:
        raise InputError("--max-n must be at least 2")
    if args.max_n > 7:
        raise InputError("--max-n above 7 is not a desk-scale sweep")
    import itertools

    rows = []
    for n in range(2, args.max_n + 1):
        checks = 0
        for l in range(2, n + 1):
            for sigma in itertools.permutations(range(1, n + 1)):
                chi_check(n, l, sigma)
                checks += 1
        expected = math.factorial(n) * (n - 1)
        if checks != expected:
            raise InputError(
                f"sweep miscount at n={n}: {checks} != {expected}"
            )
        pairs = 0
        if n <= PAIRING_CAP:
            for l in range(2, n + 1):
                pairs += len(sn_partition(n, l))
        rows.append({"n": n, "checks": checks, "pairs": pairs})
    lines = []
    for row in rows:
        lines.append(
            f"n={row['n']}: {row['checks']} checks ok, {row['pairs']} pairs"
        )
    lines.append("all index-pair witnesses exist")
    return _emit(args, "\n".join(lines) + "\n", {"rows": rows, "all_hold": True})


def _cmd_enumerate(args) -> str:
    if args.jobs < 1:
        raise InputError("--jobs must be positive")
    budget = _budget_from(args)
    report = batch_verify(
        args.claim,
        args.max_n,
        max_pairs=budget.max_pairs,
        max_terms=budget.max_terms,
        jobs=args.jobs,
    )
    rows = [
        {
            "n": r.n,
            "passes": r.passes,
            "fails": r.fails,
            "skips": r.skips,
            "wall_time": 0.0 if args.golden else round(r.wall_time, 3),
        }
        for r in report.rows
    ]
    lines = ["claim,n,passes,fails,skips,wall_time"]
    for r in rows:
        lines.append(
            f"{report.claim},{r['n']},{r['passes']},{r['fails']},"
            f"{r['skips']},{r['wall_time']:.3f}"
        )
    machine = {"claim": report.claim, "rows": rows}
    return _emit(args, "\n".join(lines) + "\n", machine)


def _cmd_render(args) -> str:
    P = _read_collection(args.input)
    labels = None
    if args.labels == "classes":
        labels = {}
        for k, part in enumerate(antidiagonal_partition(P), start=1):
            for v in part.vertices:
                labels[v] = str(k)
    if args.format == "svg":
        return render(P, labels, "svg")
    text = render(P, labels, "ascii")
    machine = {
        "cells": [[c.i, c.j] for c in P.cells],
        "vertices": [list(v) for v in P.vertex_set()],
        "ascii": text,
        "svg": render(P, labels, "svg"),
    }
    return _emit(args, text, machine)


_HANDLERS = {
    "classify": _cmd_classify,
    "ideal": _cmd_ideal,
    "gb": _cmd_gb,
    "knutson": _cmd_knutson,
    "konig": _cmd_konig,
    "prime": _cmd_prime,
    "extract": _cmd_extract,
    "chi": _cmd_chi,
    "enumerate": _cmd_enumerate,
    "render": _cmd_render,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = _HANDLERS[args.subcommand](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceeded, SizeGuardError) as exc:
        print(f"aborted: {exc}", file=sys.stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(report)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(report)
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
