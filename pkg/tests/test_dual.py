import random
from fractions import Fraction

import pytest

from proximity_lab.algebra import MultivariatePolynomial, bivariate_gcd
from proximity_lab.dual import (
    DualCurve,
    IncidenceCurve,
    IncidencePoint,
    IncidenceSystem,
    build_incidence_system,
    check_resultant_necessity,
    classify_pairs,
    count_incidences,
    count_incidences_by_roots,
    dual_curve,
    forbid_from_certificates,
    h_minus_z_part,
    order_roles,
    verify_chain,
)
from proximity_lab.errors import CylinderError, EmptyGridError, InvariantViolation, PreconditionError, StageError
from proximity_lab.grid import IndexedSet, intersect_grid
from proximity_lab.quadruples import ForbidMap, extract_proximate_tuples

from .checkers import check_tuple

YY = ("y", "y'")


def line(text, poly):
    return poly(text, YY)


def test_dual_curve_of_additive_surface(poly):
    curve = dual_curve(poly("x + y - z"), 1, 0)
    assert curve.defining == line("y - y' + 1", poly)
    assert curve.squarefree_key == line("y - y' + 1", poly)
    assert not curve.degenerate and not curve.empty
    assert curve.contains((0, 1))


def test_dual_curve_of_quadratic_surface(poly):
    curve = dual_curve(poly("z^2 - x*y"), 1, 2)
    assert curve.defining == line("(y - 2*y')^2", poly)
    assert curve.squarefree_key == line("y - 2*y'", poly)


def test_dual_curve_of_equal_pair_is_the_diagonal(poly):
    curve = dual_curve(poly("x + y - z"), 2, 2)
    assert curve.defining.normalized() == line("y - y'", poly)
    assert not curve.degenerate


def test_dual_curve_along_y(poly):
    curve = dual_curve(poly("x + y - z"), 1, 0, axis="y")
    assert curve.defining.variables == ("x", "x'")
    assert curve.defining == poly("x - x' + 1", ("x", "x'"))


def test_dual_curve_rejects_unknown_axis(poly):
    with pytest.raises(PreconditionError):
        dual_curve(poly("x + y - z"), 1, 0, axis="z")


def test_classify_additive_surface(poly):
    classification = classify_pairs(poly("x + y - z"), IndexedSet([1, 2, 3]))
    assert classification.threshold == 2
    assert sorted(classification.dangerous) == [(1, 2), (2, 1), (2, 3), (3, 2)]
    assert classification.certificate(1, 3).safe
    assert classification.certificate(3, 1).verdict == "safe"
    cert = classification.certificate(1, 2)
    assert cert.witness == line("y - y' - 1", poly)
    assert cert.popularity == 2
    assert len(classification.popular) == 2
    assert all(len(cluster) == 1 for cluster in classification.clusters)


def test_forbid_sets_of_additive_surface(poly):
    A = IndexedSet([1, 2, 3])
    forbid = forbid_from_certificates(classify_pairs(poly("x + y - z"), A), A)
    assert forbid.forbidden(1) == frozenset({2})
    assert forbid.forbidden(2) == frozenset({1, 3})
    assert forbid.forbidden(3) == frozenset({2})
    assert forbid.capacity == 3


def test_quadratic_surface_is_all_safe(poly):
    A = IndexedSet([1, 2, 4])
    classification = classify_pairs(poly("z^2 - x*y"), A)
    assert classification.threshold == 17
    assert classification.dangerous == []
    forbid = forbid_from_certificates(classification, A)
    assert forbid.max_size == 0
    assert forbid.capacity == 1


def test_classify_needs_two_elements(poly):
    with pytest.raises(PreconditionError):
        classify_pairs(poly("x + y - z"), IndexedSet([1]))


def test_incidence_examples(poly):
    diagonal = DualCurve((0, 0), line("y - y'", poly), None, False)
    shifted = DualCurve((0, 1), line("y - y' + 1", poly), None, False)
    origin = IncidencePoint((Fraction(0), Fraction(0)), 0)
    one = IncidencePoint((Fraction(1), Fraction(1)), 0)

    def system(points, curves):
        return IncidenceSystem(tuple(points), tuple(IncidenceCurve(c, 1) for c in curves), Fraction(1),
                               Fraction(1), Fraction(1), 0)

    assert count_incidences(system([origin], [diagonal])).count == 1
    both = system([origin, one], [diagonal, shifted])
    assert count_incidences(both).count == 2
    assert count_incidences_by_roots(both) == 2
    assert count_incidences(system([], [diagonal])).count == 0


def test_incidence_system_of_additive_surface(poly):
    f = poly("x + y - z")
    A = IndexedSet.interval(1, 8)
    grid = intersect_grid(f, A, A, A)
    assert len(grid) == 28
    system = build_incidence_system(f, A, A, A, grid, 4, ForbidMap.empty(), ForbidMap.empty())
    assert system.radius_a == Fraction(4 * 8 * 8, 28)
    assert len(system.curves) == len(system.points) == 56
    assert system.incidence_count == 280
    assert count_incidences_by_roots(system) == 280


def test_incidence_system_respects_forbids_and_radius(poly):
    f = poly("x + y - z")
    A = IndexedSet.interval(1, 8)
    grid = intersect_grid(f, A, A, A)
    forbid = ForbidMap({1: {2}}, capacity=2)
    system = build_incidence_system(f, A, A, A, grid, Fraction(7, 16), forbid, ForbidMap.empty(2))
    # radius 7/16 * 64 / 28 = 1: only neighbouring indices
    assert system.radius_a == 1
    assert (Fraction(1), Fraction(2)) not in system.curve_pairs
    assert all(c.gap == 1 for c in system.curves)
    assert len(system.points) == 14
    assert len(system.curves) == 13


def test_incidence_system_errors(poly):
    f = poly("x + y - z")
    A = IndexedSet.interval(1, 3)
    grid = intersect_grid(f, A, A, A)
    with pytest.raises(PreconditionError):
        build_incidence_system(f, A, A, A, grid, 0, ForbidMap.empty(), ForbidMap.empty())
    empty = intersect_grid(poly("x^2 + y^2 + z^2 + 1"), A, A, A)
    with pytest.raises(EmptyGridError):
        build_incidence_system(f, A, A, A, empty, 1, ForbidMap.empty(), ForbidMap.empty())


def test_resultant_necessity(poly):
    f = poly("z - x*y")
    A = IndexedSet([1, 2, 4])
    report = check_resultant_necessity(f, intersect_grid(f, A, A, A))
    assert report.checked == 1 + 4 + 9
    assert report.collapsed == 0


def test_order_roles_sorts_by_size(poly):
    f = poly("x + 2*y - 3*z")
    A, B, C = IndexedSet([1, 2, 3]), IndexedSet([5]), IndexedSet([7, 8])
    roles = order_roles(f, A, B, C)
    assert roles.permutation == ("y", "z", "x")
    assert roles.permuted
    assert (roles.A, roles.B, roles.C) == (B, C, A)
    assert roles.surface.evaluate((5, 7, 1)) == f.evaluate((1, 5, 7))
    assert not order_roles(f, B, C, A).permuted


def test_h_minus_z_part(poly):
    assert h_minus_z_part(poly("2*z - 2*x*y")) == poly("x*y", ("x", "y"))
    assert h_minus_z_part(poly("z^2 - x*y")) is None
    assert h_minus_z_part(poly("x*z - y")) is None


def test_chain_on_non_special_surface(poly):
    A = IndexedSet.interval(1, 16)
    report = verify_chain(poly("z - x^2 - x*y"), A, A, A)
    assert report.G == 23
    assert report.c_dec == 1
    assert report.S == 1
    assert report.K == 8
    assert report.warnings == []
    assert report.safe_tuples <= report.I
    assert report.I_by_roots == report.I
    assert report.checks["tuples_le_incidences"]
    assert report.checks["incidence_counters_agree"]
    assert report.necessity_checked > 0
    assert report.fitted_C > 0


def test_chain_on_special_surface_warns(poly):
    A = IndexedSet.interval(1, 6)
    report = verify_chain(poly("x + y - z"), A, A, A)
    assert any("special-candidate" in w for w in report.warnings)
    assert report.G == 15
    assert report.safe_tuples <= report.I


def test_chain_with_empty_grid(poly):
    A = IndexedSet.interval(1, 4)
    report = verify_chain(poly("x^2 + y^2 + z^2 + 1"), A, A, A)
    assert report.G == 0
    assert report.checks == {"trivial": True}
    assert report.tuples == report.P == report.Gamma == report.I == 0


def test_chain_injected_violation(poly):
    A = IndexedSet.interval(1, 5)
    with pytest.raises(StageError) as info:
        verify_chain(poly("z - x^2 - x*y"), A, A, A, inject_violation=True)
    assert info.value.stage == "assert"
    assert isinstance(info.value.cause, InvariantViolation)
    assert info.value.exit_code == 4


def test_chain_refuses_cylinder(poly):
    A = IndexedSet.interval(1, 3)
    with pytest.raises(StageError) as info:
        verify_chain(poly("x + y + 0*z"), A, A, A)
    assert info.value.stage == "roles"
    assert isinstance(info.value.cause, CylinderError)
    assert info.value.exit_code == 3


def test_chain_reports_permutation(poly):
    report = verify_chain(poly("z - x^2 - x*y"), IndexedSet.interval(1, 6), IndexedSet.interval(1, 3),
                          IndexedSet.interval(1, 9))
    assert report.permutation == ("y", "x", "z")
    assert report.sizes == (3, 6, 9)
    assert any("permuted" in w for w in report.warnings)


@pytest.mark.parametrize("text, values", [
    ("x + y - z", [1, 2, 3, 4, 5]),
    ("z - x*y", [1, 2, 3, 4, 6]),
    ("z - x^2 - x*y", [1, 2, 3, 5, 8]),
])
def test_classification_ignores_input_order(poly, text, values):
    f = poly(text)
    reference = classify_pairs(f, IndexedSet.from_values(values, strict=True))
    verdicts = {pair: cert.safe for pair, cert in reference.certificates.items()}
    rng = random.Random(len(values) * 7 + len(text))
    for _ in range(5):
        shuffled = list(values)
        rng.shuffle(shuffled)
        classification = classify_pairs(f, IndexedSet.from_values(shuffled, strict=True))
        assert {pair: cert.safe for pair, cert in classification.certificates.items()} == verdicts
        assert classification.popular == reference.popular


@pytest.mark.parametrize("text", ["z - x^2 - x*y", "z - x^3 - x*y^2"])
def test_distinct_safe_curves_share_no_component(poly, text):
    classification = classify_pairs(poly(text), IndexedSet.interval(1, 9))
    safe = [pair for pair, cert in classification.certificates.items()
            if cert.safe and cert.excluded is None and classification.curves[pair].squarefree_key is not None]
    rng = random.Random(2718)
    for _ in range(50):
        first, second = rng.sample(safe, 2)
        g = bivariate_gcd(classification.curves[first].defining, classification.curves[second].defining)
        assert g.is_constant, f"{first} and {second} share {g}"


def random_system(rng):
    points = {(Fraction(rng.randint(-6, 6)), Fraction(rng.randint(-6, 6))) for _ in range(rng.randint(1, 25))}
    points = sorted(points)
    Y, Yp = (MultivariatePolynomial.variable(v, YY) for v in YY)
    curves = []
    for index in range(rng.randint(1, 8)):
        shape = rng.choice([Y * Yp, Y * Y, Yp * Yp, Y, Yp, Y * Y - Yp])
        q = shape * rng.randint(-3, 3) + Y * rng.randint(-3, 3) + Yp * rng.randint(-3, 3)
        if q.is_constant:
            q = Y - Yp
        through = rng.choice(points)
        defining = q - q.evaluate(through)
        if rng.random() < 0.2:
            defining = Y - through[0]
        curves.append(IncidenceCurve(DualCurve((index, index + 1), defining, None, False), 1))
    incidence_points = tuple(IncidencePoint(p, 1) for p in points)
    return IncidenceSystem(incidence_points, tuple(curves), Fraction(1), Fraction(1), Fraction(1), 0)


def test_incidence_counters_agree_on_random_systems():
    rng = random.Random(1618)
    for _ in range(20):
        system = random_system(rng)
        counted = count_incidences(system).count
        assert counted >= 1
        assert count_incidences_by_roots(system) == counted


def test_tuple_ledger_on_seeded_surfaces(poly):
    rng = random.Random(5772)
    for _ in range(20):
        p, q, r, s, t = (rng.randint(-2, 2) for _ in range(5))
        if q == r == t == 0:
            t = 1
        if p == q == s == 0:
            s = 1
        f = poly(f"z - ({p})*x^2 - ({q})*x*y - ({r})*y^2 - ({s})*x - ({t})*y")
        A = IndexedSet(sorted(rng.sample(range(1, 31), rng.randint(4, 24))))
        B = IndexedSet(sorted(rng.sample(range(1, 31), rng.randint(4, 24))))
        image = sorted({p * a * a + q * a * b + r * b * b + s * a + t * b for a in A for b in B})
        C = IndexedSet(sorted(rng.sample(image, min(len(image), 24))))
        S = rng.randint(1, 3)
        extraction = extract_proximate_tuples(f, A, B, C, S=S)
        size = len(extraction.grid)
        floor = (Fraction(size, 4 * S * extraction.c_dec) - len(C) * extraction.c_dec
                 - Fraction(extraction.residual, S))
        assert len(extraction.tuples) >= floor
        for found in extraction.tuples:
            check_tuple(found, f, list(A), list(B), list(C), extraction.radius_a, extraction.radius_b)
