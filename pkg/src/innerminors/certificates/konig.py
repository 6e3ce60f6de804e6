"""Certificates that height-many generators admit coprime initial terms.

A certificate picks, for each cell of the collection, one inner-interval
binomial and one of its two quadratic terms, such that the claimed
terms are pairwise coprime squarefree monomials; a rational weight
vector then realizes every claim strictly.  Weights are found by exact
Fourier-Motzkin elimination; all binomials are homogeneous of degree
two, so feasible weights can always be shifted positive.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from ..errors import BudgetExceeded, SizeGuardError, SoundnessAlarm
from ..grid import (
    Cell,
    CellCollection,
    Interval,
    find_collapse_datum,
    interval_sort_key,
    maximal_inner_intervals,
    vertex_sort_key,
)
from ..grid.classify import classify
from ..groebner import (
    Budget,
    initial_ideal,
    monomial_height,
)
from ..polyring import Monomial, Polynomial, Variable
from .ideals import (
    InnerBinomial,
    binomial_of_interval,
    discussion_order,
    inner_binomials,
    polyomino_ideal,
)

GENERIC_CELL_LIMIT = 20
FEASIBILITY_CAP = 50_000


class KonigCertificate(NamedTuple):
    chosen: tuple[tuple[InnerBinomial, Monomial], ...]
    weight: dict[Variable, Fraction]
    height_claim: int
    strategy: str


class KonigVerification(NamedTuple):
    passed: bool
    checks: tuple[tuple[str, bool], ...]
    height_status: str   # "verified" | "assumed" | "failed"

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": {name: ok for name, ok in self.checks},
            "height_status": self.height_status,
        }


# -- strict weight feasibility ----------------------------------------------


def solve_strict(
    comparisons: Sequence[tuple[Monomial, Monomial]],
    variables: Optional[Sequence[Variable]] = None,
) -> Optional[dict[Variable, Fraction]]:
    """Rational weights making each left monomial strictly heavier than
    its right partner; None when infeasible.  Strictness is encoded as
    a slack of one, which is harmless for homogeneous comparisons."""
    ineqs: list[tuple[dict[Variable, Fraction], Fraction]] = []
    for heavy, light in comparisons:
        coef: dict[Variable, Fraction] = {}
        for v, e in heavy.items:
            coef[v] = coef.get(v, Fraction(0)) + e
        for v, e in light.items:
            coef[v] = coef.get(v, Fraction(0)) - e
        coef = {v: c for v, c in coef.items() if c}
        if not coef:
            return None  # identical monomials can never compare strictly
        ineqs.append((coef, Fraction(1)))
    if variables is None:
        variables = sorted({v for coef, _ in ineqs for v in coef})
    else:
        variables = list(variables)

    stack: list[tuple[Variable, list, list]] = []
    current = ineqs
    for v in reversed(variables):
        pos = [iq for iq in current if iq[0].get(v, 0) > 0]
        neg = [iq for iq in current if iq[0].get(v, 0) < 0]
        rest = [iq for iq in current if not iq[0].get(v, 0)]
        stack.append((v, pos, neg))
        combined = rest
        for p in pos:
            a = p[0][v]
            for q in neg:
                b = -q[0][v]
                coef = {}
                for w, c in p[0].items():
                    if w != v:
                        coef[w] = coef.get(w, Fraction(0)) + b * c
                for w, c in q[0].items():
                    if w != v:
                        coef[w] = coef.get(w, Fraction(0)) + a * c
                coef = {w: c for w, c in coef.items() if c}
                combined.append((coef, b * p[1] + a * q[1]))
                if len(combined) > FEASIBILITY_CAP:
                    raise BudgetExceeded(
                        "feasibility",
                        "elimination produced too many inequalities",
                    )
        current = combined
    for coef, const in current:
        if coef:
            raise SoundnessAlarm("variable escaped elimination")
        if const > 0:
            return None

    weights: dict[Variable, Fraction] = {}
    for v, pos, neg in reversed(stack):
        lower: Optional[Fraction] = None
        upper: Optional[Fraction] = None
        for p in pos:
            a = p[0][v]
            partial = sum(
                (c * weights[w] for w, c in p[0].items() if w != v),
                Fraction(0),
            )
            bound = (p[1] - partial) / a
            lower = bound if lower is None else max(lower, bound)
        for q in neg:
            b = -q[0][v]
            partial = sum(
                (c * weights[w] for w, c in q[0].items() if w != v),
                Fraction(0),
            )
            bound = (partial - q[1]) / b
            upper = bound if upper is None else min(upper, bound)
        if lower is not None and upper is not None:
            if lower > upper:
                raise SoundnessAlarm("back-substitution bounds crossed")
            weights[v] = (lower + upper) / 2
        elif lower is not None:
            weights[v] = lower + 1
        elif upper is not None:
            weights[v] = upper - 1
        else:
            weights[v] = Fraction(0)
    shift = min(weights.values(), default=Fraction(0))
    if shift < 1:
        delta = Fraction(1) - shift
        weights = {v: w + delta for v, w in weights.items()}
    return weights


def monomial_weight(m: Monomial, weights: dict[Variable, Fraction]) -> Fraction:
    return sum((Fraction(e) * weights.get(v, Fraction(0)) for v, e in m.items), Fraction(0))


# -- verification -------------------------------------------------------------


def verify_konig(
    P: CellCollection,
    cert: KonigCertificate,
    budget: Optional[Budget] = None,
) -> KonigVerification:
    generators = {b.polynomial for b in inner_binomials(P)}
    chosen_polys = [b.polynomial for b, _ in cert.chosen]
    are_generators = all(p in generators for p in chosen_polys) and len(
        set(chosen_polys)
    ) == len(chosen_polys)
    count_ok = (
        len(cert.chosen) == len(P.cells) and cert.height_claim == len(P.cells)
    )

    claims_ok = True
    used: set[Variable] = set()
    for b, m in cert.chosen:
        split = b.term_for(m)
        if split is None or not m.is_squarefree():
            claims_ok = False
            break
        vs = set(m.variables())
        if used & vs:
            claims_ok = False
            break
        used |= vs

    weights_ok = claims_ok
    if weights_ok:
        for b, m in cert.chosen:
            _, other = b.term_for(m)
            if not monomial_weight(m, cert.weight) > monomial_weight(other, cert.weight):
                weights_ok = False
                break

    height_status = "assumed"
    try:
        init = initial_ideal(
            polyomino_ideal(P), discussion_order(P.vertex_set()), budget
        )
        height_status = (
            "verified" if monomial_height(init) == len(P.cells) else "failed"
        )
    except (BudgetExceeded, SizeGuardError):
        height_status = "assumed"

    checks = (
        ("chosen-are-generators", are_generators),
        ("count-equals-cells", count_ok),
        ("initials-coprime-squarefree", claims_ok),
        ("weights-strict", weights_ok),
        ("height-matches-cells", height_status != "failed"),
    )
    passed = all(ok for _, ok in checks)
    return KonigVerification(passed, checks, height_status)


# -- strategies ---------------------------------------------------------------


def _certificate_from_claims(
    P: CellCollection,
    claims: Sequence[tuple[InnerBinomial, Monomial]],
    strategy: str,
) -> Optional[KonigCertificate]:
    comparisons = []
    for b, m in claims:
        split = b.term_for(m)
        if split is None:
            return None
        comparisons.append((m, split[1]))
    weights = solve_strict(comparisons, sorted(P.vertex_set()))
    if weights is None:
        return None
    return KonigCertificate(tuple(claims), weights, len(P.cells), strategy)


def _bar_claims(P: CellCollection) -> Optional[list[tuple[InnerBinomial, Monomial]]]:
    """Closed-form per-cell labeling of a single bar: every cell's own
    binomial with the diagonal term claimed."""
    maxes = maximal_inner_intervals(P)
    if len(maxes) != 1 or set(maxes[0].cells()) != P.cellset:
        return None
    if maxes[0].width != 1 and maxes[0].height != 1:
        return None
    claims = []
    for c in sorted(P.cells, key=vertex_sort_key):
        b = binomial_of_interval(c.interval())
        claims.append((b, b.diagonal_monomial))
    return claims


def _interval_strategy(P: CellCollection) -> Optional[KonigCertificate]:
    claims = _bar_claims(P)
    if claims is None:
        return None
    # powers of two along the bar realize the diagonal claims; keep the
    # closed form and fall back to the solver if it ever fails
    cells = sorted(P.cells, key=vertex_sort_key)
    horizontal = len({c.j for c in cells}) == 1
    weights: dict[Variable, Fraction] = {}
    m = len(cells)
    for idx in range(m + 1):
        if horizontal:
            low = (cells[0].i + idx, cells[0].j)
            high = (cells[0].i + idx, cells[0].j + 1)
        else:
            low = (cells[0].i, cells[0].j + idx)
            high = (cells[0].i + 1, cells[0].j + idx)
        weights[low] = Fraction(2 ** idx)
        weights[high] = Fraction(2 ** (m + 1 + idx))
    cert = KonigCertificate(tuple(claims), weights, m, "interval")
    for b, claimed in cert.chosen:
        _, other = b.term_for(claimed)
        if not monomial_weight(claimed, weights) > monomial_weight(other, weights):
            return _certificate_from_claims(P, claims, "interval")
    return cert


def _generic_strategy(
    P: CellCollection, budget: Optional[Budget] = None
) -> Optional[KonigCertificate]:
    h = len(P.cells)
    if h > GENERIC_CELL_LIMIT:
        raise SizeGuardError(
            f"{h} cells exceed the generic search limit of {GENERIC_CELL_LIMIT}"
        )
    bins = inner_binomials(P)
    slots: list[tuple[InnerBinomial, Monomial]] = []
    used: set[Variable] = set()

    def dfs(start: int) -> Optional[KonigCertificate]:
        if len(slots) == h:
            return _certificate_from_claims(P, slots, "generic")
        if h - len(slots) > len(bins) - start:
            return None
        for idx in range(start, len(bins)):
            b = bins[idx]
            for m in (b.diagonal_monomial, b.antidiagonal_monomial):
                vs = set(m.variables())
                if used & vs:
                    continue
                slots.append((b, m))
                used.update(vs)
                got = dfs(idx + 1)
                if got is not None:
                    return got
                slots.pop()
                used.difference_update(vs)
        return None

    return dfs(0)


# -- recursive strategy for simple thin shapes --------------------------------


def _attach_edge(D: Cell, present: set) -> Optional[frozenset]:
    touching = [n for n in D.neighbors() if n in present]
    if len(touching) != 1:
        return None
    other = touching[0]
    shared = set(D.vertices()) & set(other.vertices())
    if len(shared) != 2:
        return None
    return frozenset(shared)


def _end_edges_of(iv: Interval) -> tuple[frozenset, ...]:
    if iv.width == 1 and iv.height == 1:
        return Cell(iv[0][0], iv[0][1]).edges()
    try:
        return iv.end_edges()
    except ValueError:
        return ()


def _extend_claims(
    claims: list[tuple[InnerBinomial, Monomial]],
    present: set,
    D: Cell,
) -> Optional[list[tuple[InnerBinomial, Monomial]]]:
    """Grow a claim set by one cell attached along a single edge, either
    by claiming the new cell at an untouched shared vertex or by sliding
    an existing claim across the new cell."""
    edge = _attach_edge(D, present)
    if edge is None:
        return None
    a, b = sorted(edge)
    corners = set(D.vertices())
    far = corners - edge
    # the far vertex adjacent to a shares a coordinate with it
    u = next(w for w in far if w[0] == a[0] or w[1] == a[1])
    v = next(w for w in far if w != u)
    bD = binomial_of_interval(D.interval())
    term_with: dict[Variable, Monomial] = {}
    for m in (bD.diagonal_monomial, bD.antidiagonal_monomial):
        for vertex in m.variables():
            term_with[vertex] = m
    claimed_vars = {w for _, m in claims for w in m.variables()}

    def conflict(m: Monomial) -> bool:
        return bool(claimed_vars & set(m.variables()))

    # fresh branch: claim the term at an untouched shared vertex
    for shared in (a, b):
        m = term_with[shared]
        if shared not in claimed_vars and not conflict(m):
            return claims + [(bD, m)]

    # sliding branch: find a claim whose interval ends at the edge
    for idx, (g, m) in enumerate(claims):
        if edge not in _end_edges_of(g.interval):
            continue
        inter = set(m.variables()) & edge
        if len(inter) != 1:
            continue
        a_v = next(iter(inter))
        b_v = next(w for w in edge if w != a_v)
        d_v = next(w for w in m.variables() if w != a_v)
        g_corners = set(g.interval.corner_vertices())
        c_v = next(w for w in g_corners if w not in {a_v, b_v, d_v})
        u_v = u if (u[0] == a_v[0] or u[1] == a_v[1]) else v
        v_v = v if u_v is u else u
        lows = [c_v, d_v, u_v, v_v]
        newiv = Interval(
            (min(w[0] for w in lows), min(w[1] for w in lows)),
            (max(w[0] for w in lows), max(w[1] for w in lows)),
        )
        if set(newiv.corner_vertices()) != {c_v, d_v, u_v, v_v}:
            continue
        if not all(cc in present or cc == D for cc in newiv.cells()):
            continue
        g_new = binomial_of_interval(newiv)
        m_new = Monomial.of_variables([u_v, d_v])
        if g_new.term_for(m_new) is None:
            continue
        m_tail = Monomial.of_variables([a_v, v_v])
        if bD.term_for(m_tail) is None:
            continue
        others = claimed_vars - set(m.variables())
        if others & {u_v, d_v} or others & {a_v, v_v} or {u_v, d_v} & {a_v, v_v}:
            continue
        out = claims[:idx] + [(g_new, m_new)] + claims[idx + 1 :]
        out.append((bD, m_tail))
        return out
    return None


def _rebuild_sequence(datum, sub_cells: set, P: CellCollection) -> Optional[list[Cell]]:
    """Cells to re-add after the recursive call: the removed arm cells
    of the crossing interval, outward from the crossing cell, then the
    removed run inside the other interval, from its exposed end."""
    order: list[Cell] = []
    present = set(sub_cells)
    removed_i = [c for c in datum.interval_i.cells() if c != datum.crossing_cell]
    removed = set(removed_i) | set(datum.pi_cells)
    while removed:
        nxt = sorted(
            (
                c
                for c in removed
                if any(n in present for n in c.neighbors())
            ),
            key=vertex_sort_key,
        )
        if not nxt:
            return None
        order.append(nxt[0])
        present.add(nxt[0])
        removed.remove(nxt[0])
    return order


def _thin_claims(P: CellCollection) -> Optional[list[tuple[InnerBinomial, Monomial]]]:
    bar = _bar_claims(P)
    if bar is not None:
        return bar
    record = classify(P)
    if not (record.is_polyomino and record.is_simple and record.is_thin):
        return None
    try:
        datum = find_collapse_datum(P)
    except (ValueError, SoundnessAlarm):
        return None
    drop = set(datum.interval_i.cells()) | set(datum.pi_cells)
    sub_cells = {c for c in P.cells if c not in drop} | {datum.crossing_cell}
    try:
        sub = CellCollection(sub_cells)
    except Exception:
        return None
    sub_record = classify(sub)
    if not (sub_record.is_polyomino and sub_record.is_simple and sub_record.is_thin):
        return None
    claims = _thin_claims(sub)
    if claims is None:
        return None
    sequence = _rebuild_sequence(datum, sub_cells, P)
    if sequence is None:
        return None
    present = set(sub_cells)
    for D in sequence:
        claims = _extend_claims(claims, present, D)
        if claims is None:
            return None
        present.add(D)
    if len(claims) != len(P.cells):
        return None
    return claims


def _simple_thin_strategy(
    P: CellCollection, budget: Optional[Budget] = None
) -> Optional[KonigCertificate]:
    claims = _thin_claims(P)
    if claims is not None:
        cert = _certificate_from_claims(P, claims, "simple-thin-recursive")
        if cert is not None and verify_konig(P, cert, budget).passed:
            return cert
    return _generic_strategy(P, budget)


def _weakly_closed_strategy(
    P: CellCollection, budget: Optional[Budget] = None
) -> Optional[KonigCertificate]:
    record = classify(P)
    path = record.weakly_closed_path
    if path is None:
        return _generic_strategy(P, budget)
    # per-cell binomials along the path with a backtracked orientation
    bins = [binomial_of_interval(c.interval()) for c in path]
    slots: list[tuple[InnerBinomial, Monomial]] = []
    used: set[Variable] = set()

    def dfs(k: int) -> Optional[list[tuple[InnerBinomial, Monomial]]]:
        if k == len(bins):
            return list(slots)
        b = bins[k]
        for m in (b.diagonal_monomial, b.antidiagonal_monomial):
            vs = set(m.variables())
            if used & vs:
                continue
            slots.append((b, m))
            used.update(vs)
            got = dfs(k + 1)
            if got is not None:
                return got
            slots.pop()
            used.difference_update(vs)
        return None

    claims = dfs(0)
    if claims is not None:
        cert = _certificate_from_claims(P, claims, "weakly-closed-table")
        if cert is not None:
            return cert
    return _generic_strategy(P, budget)


STRATEGIES = ("auto", "generic", "interval", "weakly-closed-table", "simple-thin-recursive")


def konig_search(
    P: CellCollection,
    strategy: str = "auto",
    budget: Optional[Budget] = None,
) -> Optional[KonigCertificate]:
    """A certificate or None; None means the search gave up, never that
    no certificate exists."""
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    if strategy == "interval":
        return _interval_strategy(P)
    if strategy == "generic":
        return _generic_strategy(P, budget)
    if strategy == "simple-thin-recursive":
        return _simple_thin_strategy(P, budget)
    if strategy == "weakly-closed-table":
        return _weakly_closed_strategy(P, budget)
    # auto: most specific first
    record = classify(P)
    maxes = maximal_inner_intervals(P)
    if len(maxes) == 1 and set(maxes[0].cells()) == P.cellset:
        got = _interval_strategy(P)
        if got is not None:
            return got
    if record.is_polyomino and record.is_simple and record.is_thin:
        return _simple_thin_strategy(P, budget)
    if record.weakly_closed_path is not None:
        return _weakly_closed_strategy(P, budget)
    return _generic_strategy(P, budget)
