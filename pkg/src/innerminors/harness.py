"""Fixed-polyomino enumeration and batch verification of the
certificate machinery at desk scale.

Shapes are enumerated by growth: every n-cell polyomino is a
(n-1)-cell polyomino plus one edge-neighbor, deduplicated by the
translation-normalized cell tuple.  Claim checks are pure functions of
one collection, so instances can be fanned out to worker processes and
merged back in enumeration order.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, NamedTuple, Optional

from .certificates import (
    check_initial_product,
    check_lemma_detfk,
    discussion_order,
    knutson_certify,
    konig_search,
    order6,
    polyomino_ideal,
    verify_konig,
)
from .errors import BudgetExceeded, InputError, SizeGuardError, SoundnessAlarm
from .grid import Cell, CellCollection, antidiagonal_partition, vertex_sort_key
from .grid.classify import ClassificationRecord, classify
from .groebner import Budget, buchberger, is_squarefree_monomial_ideal
from .lattice import is_prime_binomial

MAX_ENUMERATION_CELLS = 10

# fixed (translation-distinct) polyomino counts for 1..10 cells
FIXED_COUNTS = (1, 2, 6, 19, 63, 216, 760, 2725, 9910, 36446)

_FIXED: dict[int, tuple[tuple[Cell, ...], ...]] = {}


def _canonical(cells: frozenset) -> tuple[Cell, ...]:
    imin = min(c[0] for c in cells)
    jmin = min(c[1] for c in cells)
    return tuple(
        sorted(
            (Cell(c[0] - imin + 1, c[1] - jmin + 1) for c in cells),
            key=vertex_sort_key,
        )
    )


def _grow(shapes: tuple[tuple[Cell, ...], ...]) -> tuple[tuple[Cell, ...], ...]:
    seen: set[tuple[Cell, ...]] = set()
    for shape in shapes:
        have = frozenset(shape)
        for c in shape:
            for nb in c.neighbors():
                if nb in have:
                    continue
                seen.add(_canonical(have | {nb}))
    return tuple(sorted(seen))


def _fixed_shapes(n: int) -> tuple[tuple[Cell, ...], ...]:
    if n not in _FIXED:
        if n == 1:
            _FIXED[1] = ((Cell(1, 1),),)
        else:
            _FIXED[n] = _grow(_fixed_shapes(n - 1))
        if len(_FIXED[n]) != FIXED_COUNTS[n - 1]:
            raise SoundnessAlarm(
                f"enumeration found {len(_FIXED[n])} polyominoes with "
                f"{n} cells, expected {FIXED_COUNTS[n - 1]}"
            )
    return _FIXED[n]


def _symmetry_canonical(shape: tuple[Cell, ...]) -> tuple[Cell, ...]:
    images = []
    for sx, sy, swap in (
        (1, 1, False), (1, 1, True), (-1, 1, False), (-1, 1, True),
        (1, -1, False), (1, -1, True), (-1, -1, False), (-1, -1, True),
    ):
        pts = frozenset(
            ((c[1] * sy, c[0] * sx) if swap else (c[0] * sx, c[1] * sy))
            for c in shape
        )
        images.append(_canonical(pts))
    return min(images)


def enumerate_fixed(n: int, dedup_symmetries: bool = False):
    """Yield each n-cell polyomino exactly once, translated to start at
    (1, 1), in a stable canonical order.  With ``dedup_symmetries`` only
    one representative per rotation/reflection class is produced."""
    if not 1 <= n <= MAX_ENUMERATION_CELLS:
        raise InputError(
            f"enumeration supports 1..{MAX_ENUMERATION_CELLS} cells, got {n}"
        )
    shapes = _fixed_shapes(n)
    if dedup_symmetries:
        reps: set[tuple[Cell, ...]] = set()
        for shape in shapes:
            key = _symmetry_canonical(shape)
            if key in reps:
                continue
            reps.add(key)
            yield CellCollection(shape)
    else:
        for shape in shapes:
            yield CellCollection(shape)


PREDICATES: dict[str, Callable[[ClassificationRecord], bool]] = {
    "thin": lambda r: r.is_thin,
    "simple": lambda r: r.is_simple,
    "convex": lambda r: r.is_convex,
    "ladder": lambda r: r.is_ladder,
    "parallelogram": lambda r: r.is_parallelogram,
    "thm51": lambda r: r.thin_thm51,
    "cellwise-intersections": lambda r: r.thin_cellwise_intersections,
    "closed-path": lambda r: r.closed_path is not None,
    "weakly-closed-path": lambda r: r.weakly_closed_path is not None,
}


class EnumerationCursor(NamedTuple):
    max_cells: int
    filter: tuple[str, ...] = ()

    def validated(self) -> "EnumerationCursor":
        if not 1 <= self.max_cells <= MAX_ENUMERATION_CELLS:
            raise InputError(
                f"max_cells must lie in 1..{MAX_ENUMERATION_CELLS}"
            )
        for name in self.filter:
            if name not in PREDICATES:
                raise InputError(
                    f"unknown predicate {name!r}; known: {sorted(PREDICATES)}"
                )
        return self

    def instances(self):
        self.validated()
        tests = [PREDICATES[name] for name in self.filter]
        for n in range(1, self.max_cells + 1):
            for P in enumerate_fixed(n):
                if not tests:
                    yield P
                    continue
                record = classify(P)
                if all(t(record) for t in tests):
                    yield P


# -- claim registry ----------------------------------------------------------


def serialize_cells(P: CellCollection) -> str:
    return json.dumps([[c.i, c.j] for c in P.cells])


def _gb_equals_generators(P: CellCollection, order, budget: Budget) -> bool:
    gens = polyomino_ideal(P)
    gb = buchberger(gens, order, budget)
    return {g.monic(order) for g in gb} == {g.monic(order) for g in gens}


def _check_initial_product(P: CellCollection, budget: Budget) -> bool:
    return check_initial_product(P).passed


def _check_det_memberships(P: CellCollection, budget: Budget) -> bool:
    for k, part in enumerate(antidiagonal_partition(P), start=1):
        if not part.cells:
            continue
        if not check_lemma_detfk(P, k, budget).passed:
            return False
    return True


def _check_konig_certificate(P: CellCollection, budget: Budget) -> bool:
    cert = konig_search(P, "auto", budget)
    if cert is None:
        return False
    return verify_konig(P, cert, budget).passed


def _check_certified(P: CellCollection, budget: Budget) -> bool:
    return knutson_certify(P, budget).verdict != "not certified"


def _check_thin_groebner(P: CellCollection, budget: Budget) -> bool:
    order = discussion_order(P.vertex_set())
    if not _gb_equals_generators(P, order, budget):
        return False
    gb = buchberger(polyomino_ideal(P), order, budget)
    if not is_squarefree_monomial_ideal(g.initial_monomial(order) for g in gb):
        return False
    return is_prime_binomial(polyomino_ideal(P), budget).is_prime


def _check_row_order_prime(P: CellCollection, budget: Budget) -> bool:
    if not _gb_equals_generators(P, order6(P.vertex_set()), budget):
        return False
    return is_prime_binomial(polyomino_ideal(P), budget).is_prime


def _check_prime(P: CellCollection, budget: Budget) -> bool:
    return is_prime_binomial(polyomino_ideal(P), budget).is_prime


def _check_parallelogram_groebner(P: CellCollection, budget: Budget) -> bool:
    return _gb_equals_generators(P, discussion_order(P.vertex_set()), budget)


class Claim(NamedTuple):
    name: str
    summary: str
    filter: Callable[[ClassificationRecord], bool]
    check: Callable[[CellCollection, Budget], bool]


CLAIMS: dict[str, Claim] = {}


def register_claim(
    name: str,
    summary: str,
    filter: Callable[[ClassificationRecord], bool],
    check: Callable[[CellCollection, Budget], bool],
) -> Claim:
    claim = Claim(name, summary, filter, check)
    CLAIMS[name] = claim
    return claim


register_claim(
    "lemma44-ladder",
    "ladder: the class-determinant product has the full vertex monomial as initial",
    lambda r: r.is_ladder,
    _check_initial_product,
)
register_claim(
    "lemma47-ladder",
    "ladder: each class determinant enters the ideal exactly when a class cell is added",
    lambda r: r.is_ladder,
    _check_det_memberships,
)
register_claim(
    "simple-thin-konig",
    "simple thin: a coprime-initial certificate exists and verifies",
    lambda r: r.is_simple and r.is_thin,
    _check_konig_certificate,
)
register_claim(
    "ladder-knutson",
    "ladder: the certification pipeline fires some route",
    lambda r: r.is_ladder,
    _check_certified,
)
register_claim(
    "thin-gb",
    "qualifying thin: reduced basis = generators, squarefree initials, prime",
    lambda r: r.is_thin and r.thin_thm51,
    _check_thin_groebner,
)
register_claim(
    "prop55-prime",
    "thin with cellwise maximal-interval intersections: generators are a "
    "basis under the row-major order and the ideal is prime",
    lambda r: r.is_thin and r.thin_cellwise_intersections,
    _check_row_order_prime,
)
register_claim(
    "simple-prime",
    "simple: the lattice oracle reports a prime ideal",
    lambda r: r.is_simple,
    _check_prime,
)
register_claim(
    "parallelogram-gb",
    "parallelogram: inner binomials are the reduced basis",
    lambda r: r.is_parallelogram,
    _check_parallelogram_groebner,
)


# -- batch driver --------------------------------------------------------------


class RowTally(NamedTuple):
    n: int
    passes: int
    fails: int
    skips: int
    wall_time: float


class BatchReport(NamedTuple):
    claim: str
    rows: tuple[RowTally, ...]

    @property
    def passes(self) -> int:
        return sum(r.passes for r in self.rows)

    @property
    def fails(self) -> int:
        return sum(r.fails for r in self.rows)

    @property
    def skips(self) -> int:
        return sum(r.skips for r in self.rows)

    def as_csv(self) -> str:
        lines = ["claim,n,passes,fails,skips,wall_time"]
        for r in self.rows:
            lines.append(
                f"{self.claim},{r.n},{r.passes},{r.fails},{r.skips},{r.wall_time:.3f}"
            )
        return "\n".join(lines) + "\n"


def _run_instance(args) -> str:
    name, cells, max_pairs, max_terms = args
    claim = CLAIMS[name]
    P = CellCollection(cells)
    budget = Budget(max_pairs, max_terms) if max_pairs is not None else Budget()
    try:
        ok = claim.check(P, budget)
    except (BudgetExceeded, SizeGuardError):
        return "skip"
    return "pass" if ok else "fail"


def batch_verify(
    claim_name: str,
    n_max: int,
    max_pairs: Optional[int] = None,
    max_terms: Optional[int] = None,
    jobs: int = 1,
    abort_on_fail: bool = True,
) -> BatchReport:
    """Run one registered claim over every enumerated instance passing
    its hypothesis filter, tallying pass/fail/budget-skip per size.

    The checked statements are theorems, so a fail is an implementation
    bug: by default it aborts with the offending instance serialized.
    Each instance gets a fresh budget meter.
    """
    if claim_name not in CLAIMS:
        raise InputError(
            f"unknown claim {claim_name!r}; registered: {sorted(CLAIMS)}"
        )
    if not 1 <= n_max <= MAX_ENUMERATION_CELLS:
        raise InputError(f"n_max must lie in 1..{MAX_ENUMERATION_CELLS}")
    claim = CLAIMS[claim_name]
    if max_pairs is None and max_terms is not None:
        raise InputError("max_pairs and max_terms must be given together")
    rows = []
    for n in range(1, n_max + 1):
        started = time.perf_counter()
        instances = [
            P for P in enumerate_fixed(n) if claim.filter(classify(P))
        ]
        tasks = [
            (claim_name, tuple((c.i, c.j) for c in P.cells), max_pairs, max_terms)
            for P in instances
        ]
        if jobs > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(_run_instance, tasks, chunksize=8))
        else:
            outcomes = [_run_instance(t) for t in tasks]
        passes = outcomes.count("pass")
        fails = outcomes.count("fail")
        skips = outcomes.count("skip")
        if fails and abort_on_fail:
            bad = instances[outcomes.index("fail")]
            raise SoundnessAlarm(
                f"claim {claim_name!r} fails on {serialize_cells(bad)}"
            )
        rows.append(
            RowTally(n, passes, fails, skips, time.perf_counter() - started)
        )
    return BatchReport(claim_name, tuple(rows))
