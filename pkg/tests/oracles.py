"""Independent reference implementations used only by the test suite.

Everything here is written from first principles with the dumbest
possible algorithm so it can serve as a cross-check for the package
code.  Nothing imports from innerminors except basic data containers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from innerminors.grid import Cell, CellCollection, Interval
from innerminors.polyring import Monomial, Polynomial


def determinant_by_permutations(rows: Sequence[Sequence[Optional[Polynomial]]]) -> Polynomial:
    """Leibniz expansion; None entries are structural zeros."""
    n = len(rows)
    total = Polynomial.zero()
    for perm in itertools.permutations(range(n)):
        entries = [rows[r][perm[r]] for r in range(n)]
        if any(e is None for e in entries):
            continue
        sign = _perm_sign(perm)
        prod = Polynomial.constant(Fraction(sign))
        for e in entries:
            prod = prod * e
        total = total + prod
    return total


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def inner_intervals_by_definition(P: CellCollection) -> list[Interval]:
    """Every axis-aligned rectangle whose four corners are vertices of P
    and whose unit cells all lie in P, found by scanning corner pairs."""
    vset = set(P.vertex_set())
    found = []
    for a in sorted(vset):
        for b in sorted(vset):
            if not (a[0] < b[0] and a[1] < b[1]):
                continue
            if (a[0], b[1]) not in vset or (b[0], a[1]) not in vset:
                continue
            cells_ok = all(
                Cell(i, j) in P
                for i in range(a[0], b[0])
                for j in range(a[1], b[1])
            )
            if cells_ok:
                found.append(Interval(a, b))
    return found


def minimal_vertex_covers_bruteforce(
    edges: Sequence[frozenset],
) -> list[frozenset]:
    """All inclusion-minimal sets hitting every edge, by subset scan."""
    universe = sorted({v for e in edges for v in e})
    covers: list[frozenset] = []
    for r in range(len(universe) + 1):
        for combo in itertools.combinations(universe, r):
            s = frozenset(combo)
            if all(e & s for e in edges):
                if not any(c <= s for c in covers):
                    covers.append(s)
    return covers


def monomials_up_to_degree(variables: Sequence, degree: int) -> list[Monomial]:
    """All monomials in the given variables with total degree <= degree."""
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(variables, d):
            out.append(Monomial.of_variables(combo))
    seen = set()
    unique = []
    for m in out:
        if m not in seen:
            seen.add(m)
            unique.append(m)
    return unique
