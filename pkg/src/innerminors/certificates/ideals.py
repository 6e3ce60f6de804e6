"""Binomial ideals of cell collections and the two standard orders."""

from __future__ import annotations

from typing import Iterable, NamedTuple, Sequence

from ..grid import Cell, CellCollection, Interval, interval_sort_key
from ..grid.base import inner_intervals_of_cellset
from ..polyring import Monomial, MonomialOrder, Polynomial, Variable


class InnerBinomial(NamedTuple):
    interval: Interval
    diagonal_pair: tuple[Variable, Variable]
    antidiagonal_pair: tuple[Variable, Variable]
    polynomial: Polynomial

    @property
    def diagonal_monomial(self) -> Monomial:
        return Monomial.of_variables(self.diagonal_pair)

    @property
    def antidiagonal_monomial(self) -> Monomial:
        return Monomial.of_variables(self.antidiagonal_pair)

    def term_for(self, m: Monomial):
        """The (monomial, partner) split if m is one of the two terms."""
        if m == self.diagonal_monomial:
            return m, self.antidiagonal_monomial
        if m == self.antidiagonal_monomial:
            return m, self.diagonal_monomial
        return None


def binomial_of_interval(iv: Interval) -> InnerBinomial:
    a, b = iv.diagonal_pair
    c, d = iv.antidiagonal_pair
    poly = (
        Polynomial.variable(a) * Polynomial.variable(b)
        - Polynomial.variable(c) * Polynomial.variable(d)
    )
    return InnerBinomial(iv, (a, b), (c, d), poly)


def inner_binomials_of_cells(cells: Iterable) -> list[InnerBinomial]:
    """One binomial per inner interval of a plain cell set; the set may
    be empty or disconnected, giving the zero ideal or a product shape."""
    cellset = {Cell(c[0], c[1]) for c in cells}
    if not cellset:
        return []
    intervals = inner_intervals_of_cellset(cellset)
    return [binomial_of_interval(iv) for iv in sorted(intervals, key=interval_sort_key)]


def inner_binomials(P: CellCollection) -> list[InnerBinomial]:
    return inner_binomials_of_cells(P.cells)


def polyomino_ideal(P: CellCollection) -> list[Polynomial]:
    """Generators, one per inner interval, diagonal term minus
    anti-diagonal term, in interval order."""
    return [b.polynomial for b in inner_binomials(P)]


def ideal_of_cells(cells: Iterable) -> list[Polynomial]:
    return [b.polynomial for b in inner_binomials_of_cells(cells)]


def discussion_order(vertices: Iterable[Variable]) -> MonomialOrder:
    """Graded reverse lexicographic with variables ascending by
    (column, row): x[i,j] < x[k,l] iff i < k, or i = k and j < l."""
    return MonomialOrder(sorted(set(vertices)), "grevlex")


def order6(vertices: Iterable[Variable]) -> MonomialOrder:
    """Graded reverse lexicographic with variables ascending by
    (row, column): x[i,j] < x[k,l] iff j < l, or j = l and i < k."""
    return MonomialOrder(
        sorted(set(vertices), key=lambda v: (v[1], v[0])), "grevlex"
    )


def order_for(P: CellCollection, selector: str = "discussion") -> MonomialOrder:
    if selector == "discussion":
        return discussion_order(P.vertex_set())
    if selector == "order6":
        return order6(P.vertex_set())
    raise ValueError(f"unknown order selector {selector!r}")
