"""Monomials, orders, polynomials, parsing, determinants."""

from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from innerminors.errors import InputError, SizeGuardError
from innerminors.polyring import (
    AUX_T,
    Monomial,
    MonomialOrder,
    Polynomial,
    determinant,
    parse_polynomial,
    polynomial_product,
)
from oracles import determinant_by_permutations, monomials_up_to_degree

A, B, C = (1, 1), (1, 2), (2, 1)


def var(v) -> Polynomial:
    return Polynomial.variable(v)


def mono(*vs) -> Monomial:
    return Monomial.of_variables(vs)


class TestMonomial:
    def test_mul_and_divide(self):
        m = mono(A, A, B)
        n = mono(A, B)
        assert (m * n).exponent(A) == 3
        assert n.divides(m)
        assert m / n == mono(A)
        assert not m.divides(n)

    def test_lcm_gcd_coprime(self):
        m, n = mono(A, A, B), mono(B, C)
        assert m.lcm(n) == mono(A, A, B, C)
        assert m.gcd(n) == mono(B)
        assert not m.is_coprime(n)
        assert mono(A).is_coprime(mono(B, C))

    def test_squarefree(self):
        assert mono(A, B).is_squarefree()
        assert not mono(A, A).is_squarefree()
        assert Monomial.one().is_squarefree()

    def test_str(self):
        assert str(mono(A, A, B)) == "x[1,1]^2*x[1,2]"
        assert str(Monomial.one()) == "1"


class TestOrders:
    def test_grevlex_degree_two_listing(self):
        # variables ascending a < b < c; expected descending order of the
        # six degree-two monomials
        order = MonomialOrder([A, B, C], "grevlex")
        monos = [mono(x, y) for x, y in itertools.combinations_with_replacement([A, B, C], 2)]
        monos.sort(key=order.key, reverse=True)
        expected = [
            mono(C, C), mono(B, C), mono(B, B), mono(A, C), mono(A, B), mono(A, A),
        ]
        assert monos == expected

    def test_lex_degree_two_listing(self):
        order = MonomialOrder([A, B, C], "lex")
        monos = [mono(x, y) for x, y in itertools.combinations_with_replacement([A, B, C], 2)]
        monos.sort(key=order.key, reverse=True)
        expected = [
            mono(C, C), mono(B, C), mono(A, C), mono(B, B), mono(A, B), mono(A, A),
        ]
        assert monos == expected

    def test_lex_ignores_degree(self):
        order = MonomialOrder([A, B], "lex")
        assert order.compare(mono(B), mono(A, A, A)) > 0

    def test_grlex_degree_first(self):
        order = MonomialOrder([A, B], "grlex")
        assert order.compare(mono(A, A, A), mono(B)) > 0
        assert order.compare(mono(B, B), mono(A, B)) > 0

    @pytest.mark.parametrize("scheme", ["lex", "grlex", "grevlex"])
    def test_total_order_axioms(self, scheme):
        order = MonomialOrder([A, B, C], scheme)
        monos = monomials_up_to_degree([A, B, C], 3)
        keys = [order.key(m) for m in monos]
        assert len(set(keys)) == len(keys)
        one = Monomial.one()
        for m in monos:
            if m != one:
                assert order.compare(m, one) > 0, f"{m} must exceed 1 under {scheme}"
        # multiplicative: m > n implies m*p > n*p
        ms = monos[:12]
        for m, n in itertools.permutations(ms, 2):
            if order.compare(m, n) > 0:
                for p in (mono(A), mono(B, C)):
                    assert order.compare(m * p, n * p) > 0

    def test_covers_rejects_foreign_variable(self):
        order = MonomialOrder([A, B], "grevlex")
        assert order.covers(mono(A, B))
        assert not order.covers(mono(C))


class TestPolynomial:
    def test_arith(self):
        f = var(A) * var(B) - var(C)
        g = var(C)
        assert (f + g) == var(A) * var(B)
        assert (f - f).is_zero()
        h = f * f
        assert h.coefficient(mono(A, A, B, B)) == 1
        assert h.coefficient(mono(C, C)) == 1
        assert h.coefficient(mono(A, B, C)) == -2

    def test_initial_term(self):
        order = MonomialOrder([A, B, C], "grevlex")
        f = var(A) * var(C) - var(B) * var(B)
        # b^2 beats a*c under grevlex with a < b < c
        assert f.initial_monomial(order) == mono(B, B)
        assert f.initial_term(order)[1] == Fraction(-1)

    def test_monic(self):
        order = MonomialOrder([A, B], "grevlex")
        f = (var(A) + var(B)).scale(Fraction(3, 2))
        assert f.monic(order).coefficient(mono(B)) == 1

    def test_canonical_str_uses_minus_sign(self):
        order = MonomialOrder([A, B, C], "grevlex")
        f = var(A) * var(B) - var(C) * var(C)
        s = f.canonical_str(order)
        assert s == "−x[2,1]^2 + x[1,1]*x[1,2]"

    def test_zero_and_degree(self):
        assert Polynomial.zero().total_degree() == -1
        assert Polynomial.constant(Fraction(5)).total_degree() == 0
        assert (var(A) * var(B)).total_degree() == 2

    def test_homogeneous(self):
        assert (var(A) * var(B) - var(C) * var(C)).is_homogeneous()
        assert not (var(A) - var(B) * var(C)).is_homogeneous()


class TestParser:
    def test_round_trip(self):
        order = MonomialOrder([A, B, C], "grevlex")
        cases = [
            var(A) * var(B) - var(C) * var(C),
            Polynomial.zero() - var(A),
            (var(A) + var(B)).scale(Fraction(7, 3)),
            Polynomial.constant(Fraction(1)),
            var(A) * var(A) * var(B) + Polynomial.constant(Fraction(-2)),
        ]
        for f in cases:
            assert parse_polynomial(f.canonical_str(order)) == f

    def test_parse_ascii_minus(self):
        f = parse_polynomial("x[1,1]*x[2,2] - x[1,2]*x[2,1]")
        assert f == var((1, 1)) * var((2, 2)) - var((1, 2)) * var((2, 1))

    def test_parse_aux_variable(self):
        f = parse_polynomial("t*x[1,1] − 1")
        assert f == var(AUX_T) * var(A) - Polynomial.constant(Fraction(1))

    def test_parse_rejects_garbage(self):
        for bad in ["x[1,1] +", "y[1,2]", "x[1]", "x[1,1]^", "1//2"]:
            with pytest.raises(InputError):
                parse_polynomial(bad)

    def test_parse_merges_duplicate_terms(self):
        f = parse_polynomial("x[1,1] + x[1,1]")
        assert f == var(A).scale(Fraction(2))


class TestDeterminant:
    def test_against_permutation_expansion(self):
        import random

        rng = random.Random(7)
        vars_pool = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
        for n in range(1, 5):
            for _ in range(6):
                rows = []
                for _r in range(n):
                    row = []
                    for _c in range(n):
                        if rng.random() < 0.25:
                            row.append(None)
                        else:
                            v = rng.choice(vars_pool)
                            row.append(var(v))
                    rows.append(row)
                assert determinant(rows) == determinant_by_permutations(rows)

    def test_structural_zero_row(self):
        rows = [[None, None], [var(A), var(B)]]
        assert determinant(rows).is_zero()

    def test_size_guard(self):
        n = 11
        rows = [[var(A)] * n for _ in range(n)]
        with pytest.raises(SizeGuardError):
            determinant(rows)

    def test_antidiagonal_sign(self):
        # det of [[0, b], [c, 0]] is -b*c
        rows = [[None, var(B)], [var(C), None]]
        assert determinant(rows) == Polynomial.zero() - var(B) * var(C)


def test_polynomial_product_empty():
    assert polynomial_product([]) == Polynomial.constant(Fraction(1))
