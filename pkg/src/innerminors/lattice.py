"""Integer lattices attached to pure-difference binomial ideals.

A binomial x^u - x^v contributes the vector u - v.  The ideal is prime
over the rationals exactly when it coincides with the lattice ideal of
the saturation of the span of those vectors, which reduces primality to
a Smith normal form plus one saturation by the product of variables.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import InputError, SoundnessAlarm
from .groebner import Budget, ambient_order, buchberger, normal_form, saturate
from .polyring import Monomial, Polynomial, Variable


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form: pivots positive, zeros below each pivot,
    entries above a pivot reduced into [0, pivot).  Zero rows dropped."""
    if not rows:
        return []
    m = [list(map(int, r)) for r in rows]
    n_cols = len(m[0])
    if any(len(r) != n_cols for r in m):
        raise InputError("ragged matrix")
    pivot_row = 0
    for col in range(n_cols):
        # gcd-eliminate everything below pivot_row in this column
        while True:
            nonzero = [r for r in range(pivot_row, len(m)) if m[r][col]]
            if not nonzero:
                break
            best = min(nonzero, key=lambda r: abs(m[r][col]))
            m[pivot_row], m[best] = m[best], m[pivot_row]
            p = m[pivot_row][col]
            done = True
            for r in range(pivot_row + 1, len(m)):
                if m[r][col]:
                    q = m[r][col] // p
                    m[r] = [a - q * b for a, b in zip(m[r], m[pivot_row])]
                    if m[r][col]:
                        done = False
            if done:
                break
        if pivot_row < len(m) and m[pivot_row][col]:
            if m[pivot_row][col] < 0:
                m[pivot_row] = [-a for a in m[pivot_row]]
            p = m[pivot_row][col]
            for r in range(pivot_row):
                q = m[r][col] // p
                if q:
                    m[r] = [a - q * b for a, b in zip(m[r], m[pivot_row])]
            pivot_row += 1
            if pivot_row == len(m):
                break
    return [r for r in m[:pivot_row] if any(r)]


class SmithDecomposition(NamedTuple):
    diagonal: tuple[int, ...]      # nonzero elementary divisors d1 | d2 | ...
    left: list[list[int]]          # U with U * A * V = D
    right: list[list[int]]         # V
    right_inverse: list[list[int]]  # V^-1


def snf(rows: Sequence[Sequence[int]]) -> SmithDecomposition:
    if not rows:
        return SmithDecomposition((), [], [], [])
    a = [list(map(int, r)) for r in rows]
    m, n = len(a), len(a[0])
    if any(len(r) != n for r in a):
        raise InputError("ragged matrix")
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def row_add(i, j, k):  # row i += k * row j
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        U[i] = [x + k * y for x, y in zip(U[i], U[j])]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        U[i] = [-x for x in U[i]]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def col_add(i, j, k):  # col j += k * col i
        for r in a:
            r[j] += k * r[i]
        for r in V:
            r[j] += k * r[i]
        Vinv[i] = [x - k * y for x, y in zip(Vinv[i], Vinv[j])]

    def col_neg(i):
        for r in a:
            r[i] = -r[i]
        for r in V:
            r[i] = -r[i]
        Vinv[i] = [-x for x in Vinv[i]]

    t = 0
    while t < min(m, n):
        entries = [
            (abs(a[r][c]), r, c)
            for r in range(t, m)
            for c in range(t, n)
            if a[r][c]
        ]
        if not entries:
            break
        _, r, c = min(entries)
        row_swap(t, r)
        col_swap(t, c)
        restart = False
        for r in range(t + 1, m):
            if a[r][t]:
                row_add(r, t, -(a[r][t] // a[t][t]))
                if a[r][t]:
                    restart = True
        if restart:
            continue
        for c in range(t + 1, n):
            if a[t][c]:
                col_add(t, c, -(a[t][c] // a[t][t]))
                if a[t][c]:
                    restart = True
        if restart:
            continue
        # divisibility: the pivot must divide the rest of the submatrix
        offender = None
        for r in range(t + 1, m):
            for c in range(t + 1, n):
                if a[r][c] % a[t][t]:
                    offender = r
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)
            continue
        if a[t][t] < 0:
            row_neg(t)
        t += 1
    diagonal = tuple(a[i][i] for i in range(t) if a[i][i])
    return SmithDecomposition(diagonal, U, V, Vinv)


class ExponentLattice(NamedTuple):
    variables: tuple[Variable, ...]  # ascending; columns of the rows
    rows: tuple[tuple[int, ...], ...]


def _split_pure_difference(f: Polynomial) -> tuple[Monomial, Monomial]:
    terms = sorted(f.terms.items(), key=lambda t: t[0].items)
    if len(terms) != 2:
        raise InputError(f"not a binomial: {f}")
    (m1, c1), (m2, c2) = terms
    if c1 + c2 != 0:
        raise InputError(f"not a pure difference of monomials: {f}")
    return m1, m2


def exponent_lattice(binomials: Sequence[Polynomial]) -> ExponentLattice:
    """Difference vectors of the generators over the ambient variables."""
    active = [f for f in binomials if not f.is_zero()]
    variables: set[Variable] = set()
    pairs = []
    for f in active:
        m1, m2 = _split_pure_difference(f)
        pairs.append((m1, m2))
        variables.update(f.variables())
    ordered = tuple(sorted(variables))
    rows = []
    for m1, m2 in pairs:
        row = tuple(m1.exponent(v) - m2.exponent(v) for v in ordered)
        if any(row):
            rows.append(row)
    return ExponentLattice(ordered, tuple(rows))


def saturate_lattice(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], int]:
    """Basis of the smallest saturated lattice containing the span,
    plus the index of the span inside it."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return [], 1
    dec = snf(rows)
    r = len(dec.diagonal)
    basis = [list(dec.right_inverse[i]) for i in range(r)]
    index = 1
    for d in dec.diagonal:
        index *= abs(d)
    return hnf(basis), index


def lattice_basis_binomials(
    variables: Sequence[Variable], rows: Sequence[Sequence[int]]
) -> list[Polynomial]:
    out = []
    for row in rows:
        plus = Monomial((v, e) for v, e in zip(variables, row) if e > 0)
        minus = Monomial((v, -e) for v, e in zip(variables, row) if e < 0)
        f = Polynomial.from_monomial(plus) - Polynomial.from_monomial(minus)
        if not f.is_zero():
            out.append(f)
    return out


def lattice_ideal(
    variables: Sequence[Variable],
    rows: Sequence[Sequence[int]],
    budget: Optional[Budget] = None,
) -> list[Polynomial]:
    """Generators of the full lattice ideal: the basis binomials
    saturated by the product of all the variables."""
    gens = lattice_basis_binomials(variables, rows)
    if not gens:
        return []
    product = Monomial.of_variables(variables)
    return saturate(gens, product, budget=budget)


class PrimalityRecord(NamedTuple):
    is_prime: bool
    saturation_index: int
    witness: Optional[Polynomial]   # lies in the closure but not the ideal
    variables: tuple[Variable, ...]
    lattice_hnf: tuple[tuple[int, ...], ...]
    saturation_hnf: tuple[tuple[int, ...], ...]


def is_prime_binomial(
    generators: Sequence[Polynomial],
    budget: Optional[Budget] = None,
) -> PrimalityRecord:
    """Primality of a pure-difference binomial ideal over the rationals.

    The ideal is compared against the lattice ideal of the saturated
    exponent lattice; the two coincide exactly for primes.  When they
    differ, the witness is a smallest-degree basis element of the
    closure that does not reduce to zero.
    """
    lat = exponent_lattice(generators)
    gens = [f for f in generators if not f.is_zero()]
    if not gens:
        return PrimalityRecord(True, 1, None, lat.variables, (), ())
    sat_rows, index = saturate_lattice([list(r) for r in lat.rows])
    closure = lattice_ideal(lat.variables, sat_rows, budget)
    order = ambient_order(gens + closure)
    gb_ideal = buchberger(gens, order, budget)
    gb_closure = buchberger(closure, order, budget) if closure else []
    for f in gens:
        if not normal_form(f, gb_closure, order).is_zero():
            raise SoundnessAlarm(
                "generator escapes the lattice closure; exponent "
                "bookkeeping must be wrong"
            )
    witness = None
    for g in gb_closure:
        if not normal_form(g, gb_ideal, order).is_zero():
            witness = g
            break
    lattice_rows = tuple(tuple(r) for r in hnf([list(r) for r in lat.rows]))
    return PrimalityRecord(
        is_prime=witness is None,
        saturation_index=index,
        witness=witness,
        variables=lat.variables,
        lattice_hnf=lattice_rows,
        saturation_hnf=tuple(tuple(r) for r in sat_rows),
    )
