"""Class-determinant products, certification routes, and extraction."""

from __future__ import annotations

import pytest

from innerminors.certificates.ideals import (
    discussion_order,
    ideal_of_cells,
    polyomino_ideal,
)
from innerminors.certificates.knutson import (
    EXPANSION_TERM_LIMIT,
    KnutsonReport,
    check_initial_product,
    check_lemma_detfk,
    extraction_pipeline,
    knutson_certify,
    knutson_polynomial,
)
from innerminors.errors import InputError, SizeGuardError
from innerminors.grid import Cell, CellCollection, antidiagonal_partition
from innerminors.groebner import Budget, ideal_membership
from innerminors.polyring import Monomial, MonomialOrder, Polynomial
from oracles import determinant_by_permutations


def collection(*pairs) -> CellCollection:
    return CellCollection([Cell(i, j) for i, j in pairs])


def mono(*vertices) -> Monomial:
    return Monomial.of_variables(vertices)


def binomial(diag, anti) -> Polynomial:
    return Polynomial({mono(*diag): 1, mono(*anti): -1})


SQUARE = collection((1, 1), (1, 2), (2, 1), (2, 2))

STAIRCASE = collection((1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1))

THIN_PATH = collection((1, 1), (1, 2), (2, 2), (2, 3), (3, 3))

# rows of the 45-cell one-sided ladder, level -> occupied columns
LADDER_ROWS = {
    1: range(1, 13),
    2: range(3, 14),
    3: range(4, 10),
    4: range(4, 8),
    5: range(6, 11),
    6: range(6, 9),
    7: range(6, 10),
}

LADDER = CellCollection((i, j) for j, rng in LADDER_ROWS.items() for i in rng)


class TestKnutsonPolynomial:
    def test_single_cell_factors(self):
        kp = knutson_polynomial(collection((1, 1)))
        assert [p.vertices for p in kp.parts] == [
            ((1, 1),),
            ((1, 2), (2, 1)),
            ((2, 2),),
        ]
        assert kp.factors[0] == Polynomial.variable((1, 1))
        assert kp.factors[1] == binomial(((1, 2), (2, 1)), ((1, 1), (2, 2)))
        assert kp.factors[2] == Polynomial.variable((2, 2))
        assert kp.degree == 4

    def test_horizontal_domino_factors(self):
        kp = knutson_polynomial(collection((1, 1), (2, 1)))
        assert kp.factors[1] == binomial(((1, 2), (2, 1)), ((1, 1), (2, 2)))
        assert kp.factors[2] == binomial(((2, 2), (3, 1)), ((2, 1), (3, 2)))
        assert kp.factors[3] == Polynomial.variable((3, 2))
        assert kp.degree == 6

    def test_sign_normalization(self):
        # every factor carries its class monomial with coefficient +1
        for P in (SQUARE, STAIRCASE, LADDER):
            kp = knutson_polynomial(P)
            for part, f in zip(kp.parts, kp.factors):
                assert f.coefficient(mono(*part.vertices)) == 1

    def test_expanded_product_matches_factors(self):
        kp = knutson_polynomial(SQUARE)
        order = discussion_order(SQUARE.vertex_set())
        assert kp.term_count_bound() <= EXPANSION_TERM_LIMIT
        assert kp.f_product().initial_monomial(order) == kp.initial(order)

    def test_oversized_class_is_guarded(self):
        # eleven diagonal cells chain up a twelve-vertex class
        steps = collection(*((i, 12 - i) for i in range(1, 12)))
        with pytest.raises(SizeGuardError):
            knutson_polynomial(steps)


class TestLadderFixture:
    def test_partition_shape(self):
        assert len(LADDER.cells) == 45
        assert len(LADDER.vertex_set()) == 70
        parts = antidiagonal_partition(LADDER)
        assert len(parts) == 25
        assert [len(p.vertices) for p in parts] == [
            1, 2, 2, 2, 3, 3, 4, 5, 5, 5, 6, 3, 4,
            4, 1, 3, 4, 2, 2, 2, 2, 2, 1, 1, 1,
        ]

    def test_partition_class_anchors(self):
        parts = antidiagonal_partition(LADDER)
        anchors = {
            1: (1, 1), 2: (1, 2), 3: (2, 2), 4: (3, 2), 11: (6, 6),
            12: (6, 7), 13: (9, 4), 14: (6, 8), 15: (10, 4), 16: (11, 3),
            17: (7, 8), 18: (12, 3), 19: (8, 8), 20: (10, 6), 21: (13, 3),
            22: (9, 8), 23: (11, 6), 24: (14, 3), 25: (10, 8),
        }
        for k, v in anchors.items():
            assert parts[k - 1].vertices[0] == v
        assert parts[10].vertices == (
            (6, 6), (7, 5), (8, 4), (9, 3), (10, 2), (11, 1),
        )

    def test_thirteenth_factor_matches_written_matrix(self):
        # the 13th class determinant, written with rows by descending
        # level and columns by ascending column index
        vset = set(LADDER.vertex_set())
        rows = []
        for j in (4, 3, 2, 1):
            rows.append(
                [
                    Polynomial.variable((i, j)) if (i, j) in vset else None
                    for i in (9, 10, 11, 12)
                ]
            )
        assert rows[0][2] is None and rows[0][3] is None
        written = determinant_by_permutations(rows)
        f13 = knutson_polynomial(LADDER).factors[12]
        assert f13 == written or f13 == -written


class TestInitialProduct:
    def test_single_cell_cross_checked(self):
        report = check_initial_product(collection((1, 1)))
        assert report.passed and report.cross_checked
        assert report.initial == report.target

    def test_ladder_factored_only(self):
        report = check_initial_product(LADDER)
        assert report.passed
        assert not report.cross_checked
        assert report.initial == mono(*LADDER.vertex_set())

    def test_wrong_order_fails_without_alarm(self):
        P = collection((1, 1))
        order = MonomialOrder(sorted(P.vertex_set()), "lex")
        report = check_initial_product(P, order)
        assert not report.passed
        assert report.cross_checked
        assert report.initial == mono((1, 1), (1, 1), (2, 2), (2, 2))

    def test_non_singleton_product_carries_the_rest(self):
        # dropping the singleton classes only removes their variables
        for P in (SQUARE, STAIRCASE, collection(*((i, j) for i in (1, 2, 3) for j in (1, 2)))):
            kp = knutson_polynomial(P)
            order = discussion_order(P.vertex_set())
            singles = [
                p.vertices[0] for p in kp.parts if len(p.vertices) == 1
            ]
            assert kp.g_product_initial(order) * mono(*singles) == kp.initial(order)
            assert kp.g_product().initial_monomial(order) == kp.g_product_initial(order)


class TestDetFactorMembership:
    def test_domino_third_class(self):
        P = collection((1, 1), (2, 1))
        report = check_lemma_detfk(P, 3)
        assert report.passed and report.outside_previous
        assert [c for c, _ in report.inside_extended] == [Cell(2, 1)]
        f3 = binomial(((2, 2), (3, 1)), ((2, 1), (3, 2)))
        assert not ideal_membership(f3, ideal_of_cells([Cell(1, 1)]))
        assert ideal_membership(f3, ideal_of_cells([Cell(1, 1), Cell(2, 1)]))

    def test_staircase_fourth_class(self):
        parts = antidiagonal_partition(STAIRCASE)
        assert parts[3].vertices == ((1, 4), (2, 3), (3, 2), (4, 1))
        assert set(parts[3].cells) == {Cell(1, 3), Cell(2, 2), Cell(3, 1)}
        assert set(parts[2].cumulative) == {Cell(1, 1), Cell(1, 2), Cell(2, 1)}
        report = check_lemma_detfk(STAIRCASE, 4)
        assert report.passed
        assert len(report.inside_extended) == 3

    def test_every_applicable_class_of_the_staircase(self):
        for k, part in enumerate(antidiagonal_partition(STAIRCASE), start=1):
            if not part.cells:
                continue
            assert check_lemma_detfk(STAIRCASE, k).passed

    def test_cell_free_class_is_rejected(self):
        with pytest.raises(InputError):
            check_lemma_detfk(STAIRCASE, 1)

    def test_out_of_range_class_is_rejected(self):
        with pytest.raises(InputError):
            check_lemma_detfk(STAIRCASE, 0)
        with pytest.raises(InputError):
            check_lemma_detfk(STAIRCASE, 8)


class TestCertify:
    def test_thin_path(self):
        report = knutson_certify(THIN_PATH)
        assert report.verdict == "certified"
        assert report.route == "thin-route"
        assert dict(report.subchecks)["thin-route:squarefree-initials"]
        assert report.f_polynomial_summary[0] == len(THIN_PATH.vertex_set())

    def test_square_uses_ladder_route(self):
        report = knutson_certify(SQUARE)
        assert report.verdict == "certified"
        assert report.route == "ladder-route"
        assert ("thin-route", "failed") in report.attempts

    def test_two_by_three_block(self):
        block = collection(*((i, j) for i in (1, 2, 3) for j in (1, 2)))
        report = knutson_certify(block)
        assert report.verdict == "certified"
        assert report.route == "ladder-route"

    def test_branching_thin_shape_via_coprime_certificate(self):
        six = collection((1, 4), (1, 3), (2, 3), (3, 3), (4, 3), (3, 2))
        report = knutson_certify(six)
        assert report.verdict == "certified-with-proxy"
        assert report.route == "konig-route"
        assert "proxy-unmixed" in report.proxy_flags
        assert "thin-reflected" in report.proxy_flags

    def test_ring_is_thin_certified(self):
        ring = collection(*(
            (i, j) for i in (1, 2, 3) for j in (1, 2, 3) if (i, j) != (2, 2)
        ))
        report = knutson_certify(ring)
        assert report.verdict == "certified"
        assert report.route == "thin-route"

    def test_weakly_closed_shape(self):
        shape = collection(
            (2, 1), (3, 1), (4, 1), (1, 2), (4, 2), (1, 3), (2, 3), (3, 3), (4, 3)
        )
        report = knutson_certify(shape)
        assert report.verdict in ("certified", "certified-with-proxy")
        assert report.route != "none"

    def test_exhausted_budget_skips_routes(self):
        from innerminors.groebner import clear_cache

        clear_cache()
        report = knutson_certify(THIN_PATH, Budget(max_pairs=0, max_terms=0))
        assert report.verdict == "not certified"
        assert report.route == "none"
        assert ("thin-route", "skipped-budget") in report.attempts
        assert "route-skipped:thin-route" in report.proxy_flags
        # the summary never needs the shared meter
        assert report.f_polynomial_summary[0] == 12

    def test_report_as_dict(self):
        d = knutson_certify(SQUARE).as_dict()
        assert set(d) == {
            "verdict", "route", "f_polynomial_summary",
            "subchecks", "proxy_flags", "attempts",
        }
        assert isinstance(d["f_polynomial_summary"]["initial"], str)

    def test_unfired_report_is_not_a_disproof(self):
        report = KnutsonReport("not certified", "none", None, (), (), ())
        assert report.as_dict()["f_polynomial_summary"] is None


class TestExtraction:
    def test_center_cell_from_three_by_three(self):
        host = collection(*((i, j) for i in (1, 2, 3) for j in (1, 2, 3)))
        report = extraction_pipeline(host, collection((2, 2)))
        assert report.passed
        assert (report.a, report.b) == (3, 6)
        assert report.proof_branch == "non-simple"
        assert set(report.q1_cells) == {
            Cell(1, 1), Cell(2, 1), Cell(3, 1), Cell(1, 2), Cell(1, 3)
        }
        assert set(report.q2_cells) == {
            Cell(3, 1), Cell(3, 2), Cell(1, 3), Cell(2, 3), Cell(3, 3)
        }
        assert dict(report.subchecks)["difference-groebner-is-generators"]

    def test_corner_domino_from_four_by_three(self):
        host = collection(*((i, j) for i in range(1, 5) for j in (1, 2, 3)))
        report = extraction_pipeline(host, collection((1, 1), (2, 1)))
        assert report.passed
        assert report.proof_branch == "simple"
        assert (report.a, report.b) == (1, 4)
        checks = dict(report.subchecks)
        assert checks["interval-separation"]
        assert checks["ideal-sum"]
        assert checks["q2:glue-variables-avoid-initials"]

    def test_interval_joining_both_split_classes(self):
        # removing the top-left domino leaves an interval meeting both
        # end classes, so the sum equality must be reported false
        host = collection(*((i, j) for i in range(1, 5) for j in (1, 2, 3)))
        report = extraction_pipeline(host, collection((1, 3), (2, 3)))
        assert not report.passed
        assert report.proof_branch == "simple"
        assert report.subchecks == (("interval-separation", False),)

    def test_removed_collection_must_be_inside(self):
        host = collection(*((i, j) for i in (1, 2) for j in (1, 2)))
        with pytest.raises(InputError):
            extraction_pipeline(host, collection((5, 5)))

    def test_removing_everything_is_rejected(self):
        host = collection((1, 1), (2, 1))
        with pytest.raises(InputError):
            extraction_pipeline(host, host)

    def test_host_must_be_parallelogram(self):
        tee = collection((1, 1), (2, 1), (3, 1), (2, 2))
        with pytest.raises(InputError):
            extraction_pipeline(tee, collection((1, 1)))

    def test_report_as_dict(self):
        host = collection(*((i, j) for i in (1, 2, 3) for j in (1, 2, 3)))
        d = extraction_pipeline(host, collection((2, 2))).as_dict()
        assert set(d) == {
            "difference", "a", "b", "q1", "q2",
            "proof_branch", "subchecks", "passed",
        }
        assert d["subchecks"]["interval-separation"] is True


class TestRouteAgainstLattice:
    def test_thin_certificates_are_prime(self):
        from innerminors.lattice import is_prime_binomial

        for P in (THIN_PATH, collection((1, 1), (1, 2), (1, 3))):
            report = knutson_certify(P)
            assert report.route == "thin-route"
            assert is_prime_binomial(polyomino_ideal(P)).is_prime
