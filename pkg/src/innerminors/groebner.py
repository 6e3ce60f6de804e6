"""Buchberger engine over the rationals with exact arithmetic.

Work is metered: every pair popped from the queue and every term
touched during division counts against a budget, and exceeding it
raises BudgetExceeded instead of stalling.  Reduced bases are unique
for a given (ideal, order), so results are memoised.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import BudgetExceeded, SizeGuardError
from .polyring import (
    AUX_T,
    EliminationOrder,
    Monomial,
    MonomialOrder,
    Polynomial,
    Variable,
)

DEFAULT_PAIR_BUDGET = 20_000
DEFAULT_TERM_BUDGET = 1_000_000
MAX_VARIABLES = 60


class Budget:
    """Mutable meter shared across one computation."""

    __slots__ = ("max_pairs", "max_terms", "pairs", "terms")

    def __init__(
        self,
        max_pairs: int = DEFAULT_PAIR_BUDGET,
        max_terms: int = DEFAULT_TERM_BUDGET,
    ):
        self.max_pairs = max_pairs
        self.max_terms = max_terms
        self.pairs = 0
        self.terms = 0

    def charge_pair(self) -> None:
        self.pairs += 1
        if self.pairs > self.max_pairs:
            raise BudgetExceeded("pairs", f"S-pair budget of {self.max_pairs} exhausted")

    def charge_terms(self, n: int) -> None:
        self.terms += n
        if self.terms > self.max_terms:
            raise BudgetExceeded("terms", f"term budget of {self.max_terms} exhausted")


def _guard_variable_count(polys: Iterable[Polynomial]) -> None:
    seen: set[Variable] = set()
    for f in polys:
        seen.update(f.variables())
    if len(seen) > MAX_VARIABLES:
        raise BudgetExceeded(
            "vars", f"{len(seen)} variables exceed the limit of {MAX_VARIABLES}"
        )


def s_polynomial(f: Polynomial, g: Polynomial, order, budget: Optional[Budget] = None) -> Polynomial:
    mf, cf = f.initial_term(order)
    mg, cg = g.initial_term(order)
    lcm = mf.lcm(mg)
    if budget is not None:
        budget.charge_terms(len(f.terms) + len(g.terms))
    left = f.mul_term(lcm / mf, Fraction(1) / cf)
    right = g.mul_term(lcm / mg, Fraction(1) / cg)
    return left - right


def normal_form(
    f: Polynomial,
    basis: Sequence[Polynomial],
    order,
    budget: Optional[Budget] = None,
) -> Polynomial:
    """Remainder of f under division by the basis, in list order.

    Every monomial of the result is divisible by no initial monomial of
    the basis.  The divisor chosen at each step is the first one in the
    list whose initial divides the current leading monomial, so the
    result is deterministic for a fixed list.
    """
    if f.is_zero():
        return f
    initials = [g.initial_term(order) for g in basis]
    remainder: dict[Monomial, Fraction] = {}
    work = dict(f.terms)
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        hit = None
        for idx, (mi, ci) in enumerate(initials):
            if mi.divides(m):
                hit = (idx, mi, ci)
                break
        if hit is None:
            remainder[m] = c
            continue
        idx, mi, ci = hit
        g = basis[idx]
        factor = m / mi
        scale = c / ci
        if budget is not None:
            budget.charge_terms(len(g.terms))
        for mg, cg in g.terms.items():
            if mg == mi:
                continue
            key = mg * factor
            new = work.get(key, Fraction(0)) - cg * scale
            if new:
                work[key] = new
            else:
                work.pop(key, None)
    return Polynomial(remainder)


def _pair_key(f: Polynomial, g: Polynomial, order):
    lcm = f.initial_monomial(order).lcm(g.initial_monomial(order))
    return (lcm.degree, order.key(lcm)), lcm


def buchberger(
    generators: Iterable[Polynomial],
    order,
    budget: Optional[Budget] = None,
) -> list[Polynomial]:
    """Reduced Groebner basis, monic, sorted by initial monomial."""
    gens = [f for f in generators if not f.is_zero()]
    for f in gens:
        if not order.covers(f):
            raise ValueError(f"order does not cover the variables of {f}")
    cached = _cache_get(gens, order)
    if cached is not None:
        return list(cached)
    _guard_variable_count(gens)
    if budget is None:
        budget = Budget()
    basis = [f.monic(order) for f in gens]
    # deduplicate while keeping first occurrence
    seen: set[Polynomial] = set()
    basis = [f for f in basis if not (f in seen or seen.add(f))]

    heap: list = []
    counter = 0

    def push_pair(i: int, j: int) -> None:
        nonlocal counter
        key, lcm = _pair_key(basis[i], basis[j], order)
        heapq.heappush(heap, (key, counter, i, j, lcm))
        counter += 1

    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            push_pair(i, j)
    done_pairs: set[frozenset[int]] = set()

    while heap:
        (_, _, i, j, lcm) = heapq.heappop(heap)
        done_pairs.add(frozenset((i, j)))
        fi, fj = basis[i], basis[j]
        mi = fi.initial_monomial(order)
        mj = fj.initial_monomial(order)
        if mi.is_coprime(mj):
            continue
        if _chain_criterion(basis, i, j, lcm, done_pairs, order):
            continue
        budget.charge_pair()
        s = s_polynomial(fi, fj, order, budget)
        r = normal_form(s, basis, order, budget)
        if r.is_zero():
            continue
        basis.append(r.monic(order))
        new = len(basis) - 1
        for k in range(new):
            push_pair(k, new)

    reduced = reduce_basis(basis, order, budget)
    _cache_put(gens, order, reduced)
    return reduced


def _chain_criterion(basis, i, j, lcm, done_pairs, order) -> bool:
    """Skip the pair when some third initial divides the pair's lcm and
    both side pairs were already treated."""
    for k in range(len(basis)):
        if k == i or k == j:
            continue
        if not basis[k].initial_monomial(order).divides(lcm):
            continue
        if frozenset((i, k)) in done_pairs and frozenset((j, k)) in done_pairs:
            return True
    return False


def reduce_basis(basis: Sequence[Polynomial], order, budget: Optional[Budget] = None) -> list[Polynomial]:
    """Inter-reduce to the unique reduced basis: monic, no term of any
    element divisible by the initial of another."""
    work = [f.monic(order) for f in basis if not f.is_zero()]
    # drop elements whose initial is divisible by another initial
    work.sort(key=lambda f: order.key(f.initial_monomial(order)))
    kept: list[Polynomial] = []
    for f in work:
        mf = f.initial_monomial(order)
        if any(g.initial_monomial(order).divides(mf) for g in kept):
            continue
        kept.append(f)
    # tail-reduce every element against the others
    changed = True
    while changed:
        changed = False
        for idx in range(len(kept)):
            others = kept[:idx] + kept[idx + 1 :]
            r = normal_form(kept[idx], others, order, budget)
            if r.is_zero():
                kept.pop(idx)
                changed = True
                break
            r = r.monic(order)
            if r != kept[idx]:
                kept[idx] = r
                changed = True
    kept.sort(key=lambda f: (f.initial_monomial(order).degree, order.key(f.initial_monomial(order))))
    return kept


# -- memo cache ------------------------------------------------------------

_CACHE: dict = {}
_CACHE_LIMIT = 512


def _cache_key(gens, order):
    try:
        return (frozenset(gens), order)
    except TypeError:
        return None


def _cache_get(gens, order):
    key = _cache_key(gens, order)
    if key is None:
        return None
    return _CACHE.get(key)


def _cache_put(gens, order, result) -> None:
    key = _cache_key(gens, order)
    if key is None:
        return
    if len(_CACHE) >= _CACHE_LIMIT:
        _CACHE.pop(next(iter(_CACHE)))
    _CACHE[key] = tuple(result)


def clear_cache() -> None:
    """Drop memoized bases; budgets only meter uncached work."""
    _CACHE.clear()


def clear_cache() -> None:
    _CACHE.clear()


# -- derived operations -----------------------------------------------------


def ambient_order(polys: Iterable[Polynomial], scheme: str = "grevlex") -> MonomialOrder:
    """Canonical order on the union of all variables present, ascending."""
    seen: set[Variable] = set()
    for f in polys:
        seen.update(f.variables())
    return MonomialOrder(sorted(seen), scheme)


def ideal_membership(
    f: Polynomial,
    generators: Sequence[Polynomial],
    order=None,
    budget: Optional[Budget] = None,
) -> bool:
    gens = [g for g in generators if not g.is_zero()]
    if f.is_zero():
        return True
    if not gens:
        return False
    if order is None:
        order = ambient_order(list(gens) + [f])
    elif not order.covers(f):
        order = ambient_order(list(gens) + [f], getattr(order, "scheme", "grevlex"))
    gb = buchberger(gens, order, budget)
    return normal_form(f, gb, order, budget).is_zero()


def ideal_equal(
    gens_a: Sequence[Polynomial],
    gens_b: Sequence[Polynomial],
    budget: Optional[Budget] = None,
) -> bool:
    a = [f for f in gens_a if not f.is_zero()]
    b = [f for f in gens_b if not f.is_zero()]
    if not a or not b:
        return not a and not b
    order = ambient_order(a + b)
    gb_a = buchberger(a, order, budget)
    gb_b = buchberger(b, order, budget)
    return gb_a == gb_b


def saturate(
    generators: Sequence[Polynomial],
    m: Monomial,
    inner_order=None,
    budget: Optional[Budget] = None,
) -> list[Polynomial]:
    """Generators of the saturation of the ideal by the monomial m,
    computed with one auxiliary variable and a block elimination order."""
    gens = [f for f in generators if not f.is_zero()]
    if not gens:
        return []
    if inner_order is None:
        inner_order = ambient_order(gens + [Polynomial.from_monomial(m)])
    order = EliminationOrder(AUX_T, inner_order)
    relation = Polynomial.variable(AUX_T) * Polynomial.from_monomial(m) - Polynomial.constant(Fraction(1))
    gb = buchberger(gens + [relation], order, budget)
    t = AUX_T
    kept = [g for g in gb if all(v != t for v in g.variables())]
    return reduce_basis(kept, inner_order, budget)


def initial_ideal(
    generators: Sequence[Polynomial],
    order,
    budget: Optional[Budget] = None,
) -> list[Monomial]:
    gb = buchberger(list(generators), order, budget)
    return [g.initial_monomial(order) for g in gb]


def is_squarefree_monomial_ideal(monomials: Iterable[Monomial]) -> bool:
    return all(m.is_squarefree() for m in monomials)


# -- combinatorics of monomial ideals ---------------------------------------

MAX_COVER_VARIABLES = 25


def _radical_supports(monomials: Iterable[Monomial]) -> list[frozenset]:
    """Supports of the generators, with non-minimal ones dropped; the
    radical of a monomial ideal has the same minimal primes and height."""
    supports = {frozenset(m.variables()) for m in monomials if m.degree > 0}
    return [s for s in supports if not any(t < s for t in supports)]


def minimal_primes(monomials: Sequence[Monomial]) -> list[frozenset]:
    """Minimal primes of a monomial ideal, each given by its variable
    set, found as the inclusion-minimal transversals of the supports."""
    supports = _radical_supports(monomials)
    if not supports:
        return []
    universe = {v for s in supports for v in s}
    if len(universe) > MAX_COVER_VARIABLES:
        raise SizeGuardError(
            f"{len(universe)} variables exceed the transversal limit of {MAX_COVER_VARIABLES}"
        )
    covers: list[frozenset] = []

    def extend(chosen: frozenset, remaining: list[frozenset]) -> None:
        remaining = [s for s in remaining if not (s & chosen)]
        if not remaining:
            covers.append(chosen)
            return
        branch = min(remaining, key=len)
        for v in sorted(branch):
            extend(chosen | {v}, remaining)

    extend(frozenset(), supports)
    minimal = [c for c in covers if not any(d < c for d in covers if d is not c)]
    unique = sorted({c for c in minimal}, key=lambda c: (len(c), sorted(c)))
    return unique


def monomial_height(monomials: Sequence[Monomial]) -> int:
    primes = minimal_primes(monomials)
    if not primes:
        return 0
    return min(len(p) for p in primes)


def is_unmixed(monomials: Sequence[Monomial]) -> bool:
    primes = minimal_primes(monomials)
    if not primes:
        return True
    sizes = {len(p) for p in primes}
    return len(sizes) == 1
