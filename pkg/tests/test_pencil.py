import pytest

from ramcount.algebra import BudgetExceeded, Poly, finite_field
from ramcount.pencil import (
    Pencil,
    count_maps_bruteforce,
    enumerate_pencils,
    gaussian_binomial_pencils,
    sample_general_points,
    schubert_condition,
    solve_three_point,
)
from ramcount.ratmap import ProjPoint, RatMap

F3 = finite_field(3)
F5 = finite_field(5)
F9 = finite_field(3, 2)
F25 = finite_field(5, 2)


def P(field, *coeffs):
    return Poly.from_ints(field, coeffs)


class TestEnumeration:
    def test_single_pencil_when_d1(self):
        assert len(list(enumerate_pencils(1, F3))) == 1

    def test_count_d3_q3(self):
        pencils = list(enumerate_pencils(3, F3))
        assert len(pencils) == 130
        assert gaussian_binomial_pencils(3, 3) == 130
        assert len(set(pencils)) == 130

    def test_count_matches_formula_q9(self):
        pencils = list(enumerate_pencils(3, F9))
        assert len(pencils) == gaussian_binomial_pencils(3, 9)
        assert len(set(pencils)) == len(pencils)

    def test_canonical_forms_are_rref(self):
        for pencil in enumerate_pencils(2, F3):
            again = Pencil(pencil.field, pencil.d, pencil.rows)
            assert again.rows == pencil.rows

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(enumerate_pencils(6, F25, budget=1000))


class TestSchubertCondition:
    def test_contains_member(self):
        V = Pencil.from_polys(P(F5, 0, 0, 1), P(F5, 1), 2)
        assert schubert_condition(V, ProjPoint(F5, 0), 2)

    def test_no_double_root_at_one(self):
        V = Pencil.from_polys(P(F5, 0, 0, 1), P(F5, 1), 2)
        assert not schubert_condition(V, ProjPoint(F5, 1), 2)

    def test_vacuous(self):
        V = Pencil.from_polys(P(F5, 0, 0, 1), P(F5, 1), 2)
        for x in list(range(5)) + [None]:
            pt = ProjPoint.infinity(F5) if x is None else ProjPoint(F5, x)
            assert schubert_condition(V, pt, 1)

    def test_infinity_condition(self):
        V = Pencil.from_polys(P(F5, 0, 0, 1), P(F5, 1), 2)
        assert schubert_condition(V, ProjPoint.infinity(F5), 2)  # member 1


class TestThreePointSolver:
    def test_high_char_witness(self):
        sol = solve_three_point(3, 2, 2, 3, F5)
        assert sol.m == 0 and sol.count == 1 and sol.separable
        A, B = sol.pencil.polys()
        expected = RatMap(P(F5, 0, 0, 2, 1), P(F5, 1, 2))
        assert expected.aut_equivalent(RatMap(A, B))

    def test_frobenius_in_char3(self):
        sol = solve_three_point(3, 2, 2, 3, F3)
        assert sol.m == 0 and sol.count == 0 and not sol.separable
        A, B = sol.pencil.polys()
        assert {A.coeffs, B.coeffs} == {(0, 0, 0, 1), (1,)}

    def test_mid_range_inseparable(self):
        # (4, 4, 3), d = 5, p = 5: the unique pencil is span{x^5, 1}
        sol = solve_three_point(5, 4, 4, 3, F25)
        assert sol.m == 0 and sol.count == 0 and not sol.separable

    def test_degenerate_order_one(self):
        sol = solve_three_point(2, 1, 2, 2, F5)
        assert sol.m == 0 and sol.count == 1 and sol.separable

    def test_parity_error(self):
        with pytest.raises(ValueError):
            solve_three_point(3, 2, 2, 2, F5)

    def test_oversized_error(self):
        with pytest.raises(ValueError):
            solve_three_point(3, 5, 1, 2, F5)


def _four_simple_points(field, lam):
    return [
        (ProjPoint(field, 0), 2),
        (ProjPoint.infinity(field), 2),
        (ProjPoint(field, 1), 2),
        (ProjPoint(field, lam), 2),
    ]


class TestCensus:
    def test_engines_agree_small(self):
        cases = [
            (2, F3, [(ProjPoint(F3, 0), 2), (ProjPoint(F3, 1), 2)]),
            (2, F5, [(ProjPoint(F5, 0), 2), (ProjPoint.infinity(F5), 2)]),
            (3, F3, _four_simple_points(F3, 2)),
            (3, F5, _four_simple_points(F5, 3)),
            (3, F9, [(ProjPoint(F9, 0), 2), (ProjPoint.infinity(F9), 2),
                     (ProjPoint(F9, 3), 3)]),
        ]
        for d, field, assigns in cases:
            vec = count_maps_bruteforce(d, assigns, field, engine="vector")
            scan = count_maps_bruteforce(d, assigns, field, engine="scan")
            assert (vec.total, vec.separable, vec.inseparable, vec.with_base_points) == \
                   (scan.total, scan.separable, scan.inseparable, scan.with_base_points)
            assert [p.rows for p, _ in vec.witnesses] == [p.rows for p, _ in scan.witnesses]

    def test_engines_agree_fuzzed(self):
        import random as _random
        rng = _random.Random(7)
        shapes = {2: [(2, 2), (2, 2, 1)], 3: [(3, 3), (3, 2, 2, 1), (2, 2, 2, 2)]}
        for field in (F3, F5, F9):
            for d, order_lists in shapes.items():
                for orders in order_lists:
                    pool = list(range(field.q)) + [None]
                    picks = rng.sample(pool, len(orders))
                    points = [ProjPoint.infinity(field) if x is None
                              else ProjPoint(field, x) for x in picks]
                    assigns = list(zip(points, orders))
                    vec = count_maps_bruteforce(d, assigns, field, engine="vector")
                    scan = count_maps_bruteforce(d, assigns, field, engine="scan")
                    assert (vec.total, vec.separable, vec.inseparable,
                            vec.with_base_points) == \
                           (scan.total, scan.separable, scan.inseparable,
                            scan.with_base_points), (field.q, d, orders)

    def test_four_simple_points_char3(self):
        lam = 3  # y, outside the prime field
        report = count_maps_bruteforce(3, _four_simple_points(F9, lam), F9)
        assert report.separable == 1
        assert report.inseparable == 1  # the Frobenius pencil span{x^3, 1}
        assert report.total == 2
        # witness is (x^3 + (1+lam) x^2) / ((1+lam) x + lam) as a pencil
        one_plus = F9.add_i(1, lam)
        F = Poly(F9, (0, 0, one_plus, 1))
        G = Poly(F9, (lam, one_plus))
        expected = Pencil.from_polys(F, G, 3)
        assert report.witnesses[0][0] == expected
        assert report.distinct_images is True

    def test_no_drop_at_general_specializations(self):
        # over F9 in characteristic 3 the separable count stays 1 at every
        # general lambda; it drops to 0 exactly at the forced special
        # configuration lambda = -1 where the limit map is inseparable
        for lam in range(3, 9):
            report = count_maps_bruteforce(3, _four_simple_points(F9, lam), F9)
            assert report.separable == 1, lam
        special = count_maps_bruteforce(3, _four_simple_points(F9, 2), F9)
        assert special.separable == 0
        assert special.inseparable >= 1

    def test_four_simple_points_char5_rationality(self):
        # the two solutions at lambda in F_5 are conjugate over F_25:
        # invisible to the prime-field census, visible over the quadratic one
        prime = count_maps_bruteforce(3, _four_simple_points(F5, 2), F5)
        assert prime.separable == 0
        quad = count_maps_bruteforce(3, _four_simple_points(F25, 2), F25)
        assert quad.separable == 2

    def test_repeated_points_rejected(self):
        with pytest.raises(ValueError):
            count_maps_bruteforce(3, [(ProjPoint(F5, 0), 2), (ProjPoint(F5, 0), 2)], F5)

    def test_budget_exceeded(self):
        with pytest.raises(BudgetExceeded):
            count_maps_bruteforce(3, _four_simple_points(F9, 3), F9, budget=10)

    def test_report_json(self):
        report = count_maps_bruteforce(3, _four_simple_points(F9, 3), F9)
        payload = report.to_json()
        assert payload["separable"] == 1
        assert payload["points"] == ["00", "inf", "01", "10"]
        assert len(payload["witnesses"]) == 1

    def test_low_char_pathology_dichotomy(self):
        # orders (4, 2, 2, 2) at p = 3: a tame order above p.  A witness
        # would be a degree-4 polynomial with derivative c x(x-1)(x-lam),
        # which only integrates when 1 + lam = 0; so the census finds no
        # maps except at lam = -1, where a whole translate family appears
        # (one member per element of the field)
        for lam in (3, 4, 5, 6, 7, 8):
            report = count_maps_bruteforce(
                4,
                [(ProjPoint.infinity(F9), 4), (ProjPoint(F9, 0), 2),
                 (ProjPoint(F9, 1), 2), (ProjPoint(F9, lam), 2)],
                F9)
            assert report.separable == 0, lam
        special = count_maps_bruteforce(
            4,
            [(ProjPoint.infinity(F9), 4), (ProjPoint(F9, 0), 2),
             (ProjPoint(F9, 1), 2), (ProjPoint(F9, 2), 2)],
            F9)
        assert special.separable == 9

    def test_wild_order_census_is_empty(self):
        # an order divisible by p admits no separable map at all: the
        # census over F9 confirms the Riemann-Hurwitz exclusion empirically
        report = count_maps_bruteforce(
            4,
            [(ProjPoint(F9, 0), 2), (ProjPoint(F9, 1), 2),
             (ProjPoint(F9, 2), 2), (ProjPoint(F9, 3), 2),
             (ProjPoint.infinity(F9), 3)],
            F9)
        assert report.separable == 0
        assert report.inseparable == report.total >= 1

    def test_involution_of_census_witness(self):
        # trade a witness's orders (2, 2) at two finite points for (5, 5);
        # the other assigned orders and the Riemann-Hurwitz total must hold
        from ramcount.ratmap import different_divisor, involution_transform, ram_index
        F7 = finite_field(7)
        report = count_maps_bruteforce(3, _four_simple_points(F7, 3), F7)
        assert report.separable == 1
        witness = report.witnesses[0][1]
        hat = involution_transform(witness, 0, 1).map
        assert hat.degree == 3 + 7 - 2 - 2
        assert ram_index(hat, 0) == 5
        assert ram_index(hat, 1) == 5
        assert ram_index(hat, ProjPoint.infinity(F7)) == 2
        assert ram_index(hat, 3) == 2
        assert different_divisor(hat).total == 2 * 6 - 2


class TestSamplePoints:
    def test_deterministic(self):
        a = sample_general_points(4, F25, seed=1)
        b = sample_general_points(4, F25, seed=1)
        assert a == b
        assert len(set(a)) == 4

    def test_distinct(self):
        pts = sample_general_points(5, finite_field(3, 3), seed=7)
        assert len(set(pts)) == 5

    def test_too_small(self):
        with pytest.raises(ValueError):
            sample_general_points(4, F3, seed=1)

    def test_predicates(self):
        banned = ProjPoint(F25, 0)
        pts = sample_general_points(
            4, F25, seed=3,
            forbidden_predicates=[lambda ps: banned in ps])
        assert banned not in pts
