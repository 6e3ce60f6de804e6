"""Randomized invariant checks over enumerated and drawn inputs.

Each property mirrors a structural fact the deterministic tests pin on
single examples: initial terms sit on the anti-diagonal, bases are
canonical, saturation and normal forms are idempotent, certificates
never pass verification without every check holding.
"""

from __future__ import annotations

import itertools

from hypothesis import assume, given, settings, strategies as st

from innerminors.certificates import (
    discussion_order,
    inner_binomials,
    knutson_certify,
    knutson_polynomial,
    konig_search,
    min_pair,
    pair_set,
    polyomino_ideal,
    swap_at,
    verify_konig,
)
from innerminors.certificates.konig import KonigCertificate
from innerminors.grid import (
    CellCollection,
    antidiagonal_partition,
    inner_intervals,
)
from innerminors.grid.classify import classify
from innerminors.groebner import Budget, buchberger, normal_form
from innerminors.harness import enumerate_fixed
from innerminors.lattice import hnf, saturate_lattice, is_prime_binomial
from innerminors.polyring import Monomial, Polynomial

from oracles import inner_intervals_by_definition

_SHAPES: dict[int, tuple] = {}


def _shapes(n: int) -> tuple:
    if n not in _SHAPES:
        _SHAPES[n] = tuple(enumerate_fixed(n))
    return _SHAPES[n]


@st.composite
def polyominoes(draw, max_cells: int = 6):
    n = draw(st.integers(min_value=1, max_value=max_cells))
    return draw(st.sampled_from(_shapes(n)))


@st.composite
def cell_subsets(draw):
    """Arbitrary nonempty cell sets in a 4-by-3 window, connected or not."""
    box = [(i, j) for i in range(1, 5) for j in range(1, 4)]
    cells = draw(st.lists(st.sampled_from(box), min_size=1, max_size=8))
    return CellCollection(cells)


@st.composite
def integer_matrices(draw):
    width = draw(st.integers(min_value=1, max_value=4))
    row = st.lists(
        st.integers(min_value=-9, max_value=9), min_size=width, max_size=width
    )
    return draw(st.lists(row, min_size=1, max_size=4))


@st.composite
def indexed_permutations(draw, max_n: int):
    n = draw(st.integers(min_value=2, max_value=max_n))
    l = draw(st.integers(min_value=2, max_value=n))
    sigma = draw(st.permutations(tuple(range(1, n + 1))))
    return n, l, tuple(sigma)


class TestBinomialShape:
    @given(cell_subsets())
    def test_initial_term_is_antidiagonal(self, P):
        order = discussion_order(P.vertex_set())
        for binom in inner_binomials(P):
            assert (
                binom.polynomial.initial_monomial(order)
                == binom.antidiagonal_monomial
            )
            assert binom.polynomial.coefficient(binom.diagonal_monomial) == 1
            assert (
                binom.polynomial.coefficient(binom.antidiagonal_monomial) == -1
            )

    @given(polyominoes())
    def test_inner_intervals_match_bruteforce(self, P):
        found = inner_intervals(P)
        expected = inner_intervals_by_definition(P)
        assert len(found) == len(expected)
        assert set(found) == set(expected)

    @given(cell_subsets())
    def test_generators_biject_with_inner_intervals(self, P):
        binomials = inner_binomials(P)
        intervals = inner_intervals(P)
        assert len(binomials) == len(intervals)
        assert {b.interval for b in binomials} == set(intervals)


class TestPartition:
    @given(polyominoes())
    def test_classes_partition_the_cells(self, P):
        parts = antidiagonal_partition(P)
        seen: list = []
        for part in parts:
            seen.extend(part.cells)
        assert len(seen) == len(set(seen))
        assert set(seen) == set(P.cells)

    @given(polyominoes())
    def test_cumulative_cells_accumulate(self, P):
        parts = antidiagonal_partition(P)
        rolling: set = set()
        for part in parts:
            rolling |= set(part.cells)
            assert set(part.cumulative) == rolling

    @given(polyominoes())
    def test_classes_partition_the_vertices(self, P):
        parts = antidiagonal_partition(P)
        vertices = [v for part in parts for v in part.vertices]
        assert len(vertices) == len(set(vertices))
        assert set(vertices) == set(P.vertex_set())


class TestBasisCanonicity:
    @settings(max_examples=40, deadline=None)
    @given(polyominoes(max_cells=5))
    def test_reduced_basis_is_a_fixed_point(self, P):
        order = discussion_order(P.vertex_set())
        budget = Budget()
        basis = buchberger(polyomino_ideal(P), order, budget)
        again = buchberger(basis, order, budget)
        assert set(again) == set(basis)

    @settings(max_examples=25, deadline=None)
    @given(polyominoes(max_cells=5))
    def test_redundant_generators_change_nothing(self, P):
        gens = polyomino_ideal(P)
        assume(len(gens) >= 2)
        order = discussion_order(P.vertex_set())
        budget = Budget()
        basis = buchberger(gens, order, budget)
        padded = list(gens) + [gens[0] * gens[1], gens[-1] * 3]
        assert set(buchberger(padded, order, budget)) == set(basis)

    @settings(max_examples=25, deadline=None)
    @given(polyominoes(max_cells=5), st.data())
    def test_normal_form_is_idempotent_and_member_detecting(self, P, data):
        gens = polyomino_ideal(P)
        assume(gens)
        order = discussion_order(P.vertex_set())
        budget = Budget()
        basis = buchberger(gens, order, budget)
        pick = data.draw(st.sampled_from(gens))
        other = data.draw(st.sampled_from(gens))
        inside = pick * other + pick
        assert normal_form(inside, basis, order, budget).is_zero()
        shifted = pick + Polynomial.one()
        reduced = normal_form(shifted, basis, order, budget)
        assert normal_form(reduced, basis, order, budget) == reduced


class TestLattice:
    @given(integer_matrices())
    def test_saturation_is_idempotent(self, m):
        first, _ = saturate_lattice(m)
        second, index = saturate_lattice(first)
        assert second == first
        assert index == 1

    @given(integer_matrices())
    def test_hnf_is_idempotent(self, m):
        h = hnf(m)
        assert hnf(h) == h

    @given(integer_matrices(), st.randoms(use_true_random=False))
    def test_hnf_invariant_under_unimodular_row_moves(self, m, rng):
        h = hnf(m)
        rows = [list(r) for r in m]
        for _ in range(6):
            move = rng.randrange(3)
            a = rng.randrange(len(rows))
            b = rng.randrange(len(rows))
            if move == 0:
                rows[a], rows[b] = rows[b], rows[a]
            elif move == 1:
                rows[a] = [-x for x in rows[a]]
            elif a != b:
                k = rng.randrange(-3, 4)
                rows[a] = [x + k * y for x, y in zip(rows[a], rows[b])]
        assert hnf(rows) == h

    @given(integer_matrices())
    def test_saturated_lattice_contains_the_span(self, m):
        basis, _ = saturate_lattice(m)
        stacked = hnf(list(basis) + [list(r) for r in m])
        assert stacked == basis


class TestIndexPairs:
    @given(indexed_permutations(max_n=7))
    def test_witness_pair_exists(self, case):
        n, l, sigma = case
        assert pair_set(n, l, sigma)

    @given(indexed_permutations(max_n=6))
    def test_min_pair_is_stable_under_its_own_swap(self, case):
        n, l, sigma = case
        pair = min_pair(n, l, sigma)
        assert min_pair(n, l, swap_at(sigma, pair)) == pair

    @given(indexed_permutations(max_n=6))
    def test_swap_is_an_involution(self, case):
        n, l, sigma = case
        pair = min_pair(n, l, sigma)
        swapped = swap_at(sigma, pair)
        assert swapped != sigma
        assert swap_at(swapped, pair) == sigma


class TestCoverCertificates:
    @settings(max_examples=30, deadline=None)
    @given(polyominoes(max_cells=5))
    def test_verification_never_accepts_silently(self, P):
        budget = Budget()
        cert = konig_search(P, "auto", budget)
        assume(cert is not None)
        verification = verify_konig(P, cert, budget)
        assert verification.passed
        assert all(ok for _, ok in verification.checks)
        # independent re-check of what "passed" is supposed to mean
        initials = [claimed for _, claimed in cert.chosen]
        assert len(initials) == len(P.cells)
        for mono in initials:
            assert mono.is_squarefree()
        for a, b in itertools.combinations(initials, 2):
            assert not (set(a.variables()) & set(b.variables()))

    @settings(max_examples=20, deadline=None)
    @given(polyominoes(max_cells=5), st.data())
    def test_slot_swap_is_rejected_or_visibly_different(self, P, data):
        budget = Budget()
        cert = konig_search(P, "auto", budget)
        assume(cert is not None and len(cert.chosen) >= 2)
        slot = data.draw(st.integers(0, len(cert.chosen) - 1))
        binom, claimed = cert.chosen[slot]
        flipped = (
            binom.diagonal_monomial
            if claimed == binom.antidiagonal_monomial
            else binom.antidiagonal_monomial
        )
        chosen = list(cert.chosen)
        chosen[slot] = (binom, flipped)
        mutated = KonigCertificate(
            tuple(chosen), cert.weight, cert.height_claim, cert.strategy
        )
        verification = verify_konig(P, mutated, budget)
        assert verification.passed == all(ok for _, ok in verification.checks)
        if verification.passed:
            # accepting the flipped slot is only legitimate when the
            # mutated choice is itself a fully coprime squarefree system
            # with strictly compatible weights
            initials = [m for _, m in mutated.chosen]
            for mono in initials:
                assert mono.is_squarefree()
            for a, b in itertools.combinations(initials, 2):
                assert not (set(a.variables()) & set(b.variables()))


class TestCertifiedRoutes:
    @settings(max_examples=15, deadline=None)
    @given(polyominoes(max_cells=6))
    def test_thin_route_matches_lattice_oracle(self, P):
        record = classify(P)
        assume(record.is_thin and record.thin_thm51)
        report = knutson_certify(P, Budget())
        assert report.route == "thin-route"
        assert report.verdict == "certified"
        assert is_prime_binomial(polyomino_ideal(P), Budget()).is_prime


def _ladders(max_cells: int):
    for n in range(1, max_cells + 1):
        for P in enumerate_fixed(n):
            if classify(P).is_ladder:
                yield P


def test_factored_and_split_products_share_initials():
    # the full product against the product that skips singleton classes,
    # on every ladder with at most eight cells
    count = 0
    for P in _ladders(8):
        order = discussion_order(P.vertex_set())
        kn = knutson_polynomial(P)
        singletons = [
            part.vertices[0]
            for part in kn.parts
            if len(part.vertices) == 1
        ]
        rebuilt = kn.g_product_initial(order) * Monomial.of_variables(
            singletons
        )
        assert kn.initial(order) == rebuilt
        assert kn.initial(order) == Monomial.of_variables(P.vertex_set())
        count += 1
    assert count > 500
