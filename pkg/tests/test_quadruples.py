import random
from fractions import Fraction

import pytest

from proximity_lab.algebra import MultivariatePolynomial
from proximity_lab.errors import (
    CylinderError,
    EmptyGridError,
    ForbidCapacityError,
    UnfillableWindowError,
    UnsortedInputError,
)
from proximity_lab.grid import GridIntersection, IndexedSet, curve_points, intersect_grid
from proximity_lab.quadruples import (
    ForbidMap,
    ProximateQuadruple,
    default_capacity,
    extract_curve_quadruples,
    extract_monotone_quadruples,
    extract_proximate_tuples,
    heavy_fibers,
)

from .checkers import check_quadruple, check_tuple, ledger_floor

XY = ("x", "y")


class PointSet:
    """Stands in for a curve whose zero set is exactly the given points."""

    def __init__(self, points):
        self.points = set(points)

    def evaluate(self, point):
        return 0 if tuple(point) in self.points else 1


def diagonal(n):
    return [(Fraction(i), Fraction(i)) for i in range(1, n + 1)]


def test_diagonal_scan():
    A = IndexedSet.interval(1, 8)
    result = extract_monotone_quadruples(diagonal(8), A, A, 1, ForbidMap.empty(), ForbidMap.empty())
    assert result.radius_a == result.radius_b == 4
    assert result.guarantee == 3
    assert len(result.quadruples) == 7
    assert result.quadruples[0] == ProximateQuadruple(1, 2, 1, 2, 1, 1)
    assert all(q.gap_a == q.gap_b == 1 for q in result.quadruples)
    assert result.truncated == 1


def test_single_point_scan_is_empty():
    A = IndexedSet.interval(1, 8)
    result = extract_monotone_quadruples([(1, 1)], A, A, 1, ForbidMap.empty(), ForbidMap.empty())
    assert result.quadruples == ()
    assert result.guarantee <= 0


def test_decreasing_scan_respects_forbids():
    A = IndexedSet.interval(1, 8)
    points = [(Fraction(i), Fraction(9 - i)) for i in range(1, 9)]
    forbid = ForbidMap({a: {a + 1} for a in range(1, 9)}, capacity=2)
    result = extract_monotone_quadruples(points, A, A, 2, forbid, ForbidMap.empty(2))
    assert len(result.quadruples) == 3
    for q in result.quadruples:
        assert q.a2 == q.a + 2
        assert q.a2 not in forbid.forbidden(q.a)
    assert len(result.quadruples) >= result.guarantee == 1


def test_scan_rejects_unsorted_input():
    A = IndexedSet.interval(1, 4)
    with pytest.raises(UnsortedInputError):
        extract_monotone_quadruples([(2, 2), (1, 1)], A, A, 1, ForbidMap.empty(), ForbidMap.empty())
    with pytest.raises(UnsortedInputError):
        extract_monotone_quadruples([(1, 1), (2, 3), (3, 2)], A, A, 1, ForbidMap.empty(), ForbidMap.empty())


def test_forbid_capacity():
    with pytest.raises(ForbidCapacityError):
        ForbidMap({1: {2, 3}}, capacity=2)
    A = IndexedSet.interval(1, 4)
    wide = ForbidMap({1: {2}}, capacity=2)
    with pytest.raises(ForbidCapacityError):
        extract_monotone_quadruples(diagonal(4), A, A, 1, wide, ForbidMap.empty())
    assert default_capacity(wide, ForbidMap({1: {2, 3}}, capacity=3)) == 4


def staircase(rng, size, run, decreasing=False):
    """Strictly increasing x-values; y-values weakly monotone, each repeated at most ``run`` times."""
    xs = sorted(rng.sample(range(1, 2 * size + 1), size))
    ys, y, repeats = [], 1, 0
    for _ in range(size):
        if ys and repeats < run and rng.random() < 0.4:
            repeats += 1
        else:
            y += rng.randint(1, 3) if ys else 0
            repeats = 1
        ys.append(y)
    if decreasing:
        ys.reverse()
    A = IndexedSet.interval(1, 2 * size)
    B = IndexedSet.interval(1, ys[0] if decreasing else ys[-1])
    return [(Fraction(x), Fraction(y)) for x, y in zip(xs, ys)], A, B


def random_forbids(rng, keys, universe, max_size):
    return {k: set(rng.sample(universe, rng.randint(0, min(max_size, len(universe))))) for k in keys}


def test_seeded_monotone_configurations():
    rng = random.Random(4242)
    for trial in range(200):
        size = rng.randint(1, 10 ** 4) if trial % 10 == 0 else rng.randint(1, 400)
        run = rng.randint(1, 3)
        max_b = rng.randint(0, 2)
        max_a = rng.randint(0, 7 - run * max_b)
        S = rng.randint(1 + max_a + run * max_b, 8)
        points, A, B = staircase(rng, size, run, decreasing=rng.random() < 0.5)
        xs, ys = [a for a, _ in points], sorted({b for _, b in points})
        forbid_a = random_forbids(rng, rng.sample(xs, min(len(xs), 50)), list(A)[:100], max_a)
        forbid_b = random_forbids(rng, ys[:50], list(B)[:100], max_b)
        result = extract_monotone_quadruples(points, A, B, S, ForbidMap(forbid_a, capacity=S),
                                             ForbidMap(forbid_b, capacity=S))
        assert len(result.quadruples) >= Fraction(size, 2 * S) - 1
        assert len(result.quadruples) >= size // S - 1 - result.x_skips - result.y_skips
        assert len(set(result.quadruples)) == len(result.quadruples)
        curve = PointSet(points)
        for q in result.quadruples:
            check_quadruple(q, curve, list(A), list(B), forbid_a, forbid_b, result.radius_a, result.radius_b)


def test_mirrored_staircase_emits_the_same_count():
    rng = random.Random(17)
    for _ in range(40):
        S = rng.randint(1, 6)
        points, A, B = staircase(rng, rng.randint(1, 300), run=2)
        forbid_a = random_forbids(rng, [a for a, _ in points], list(A), S - 1)
        mirrored = [(a, -b) for a, b in points]
        up = extract_monotone_quadruples(points, A, B, S, ForbidMap(forbid_a, capacity=S), ForbidMap.empty(S))
        down = extract_monotone_quadruples(mirrored, A, IndexedSet(sorted(-b for b in B)), S,
                                           ForbidMap(forbid_a, capacity=S), ForbidMap.empty(S))
        assert len(down.quadruples) == len(up.quadruples)
        assert [q.gap_b for q in down.quadruples] == [q.gap_b for q in up.quadruples]


def test_window_emptied_by_repeated_forbidden_b_is_refused():
    A, B = IndexedSet.interval(1, 20), IndexedSet.interval(1, 4)
    points = [(i + 1, i // 5 + 1) for i in range(20)]
    forbid_b = ForbidMap({b: {b} for b in range(1, 5)}, capacity=2)
    with pytest.raises(UnfillableWindowError) as info:
        extract_monotone_quadruples(points, A, B, 2, ForbidMap.empty(2), forbid_b)
    assert info.value.anchor == 0
    assert info.value.exit_code == 3
    assert [b for _, b in info.value.window] == [1, 1]


def test_curve_extraction_on_a_line(poly):
    g = poly("y - x", XY)
    A = IndexedSet.interval(1, 8)
    extraction = extract_curve_quadruples(g, A, A, curve_points(g, A, A), 1, ForbidMap.empty(), ForbidMap.empty())
    assert extraction.c_dec == 1
    assert len(extraction.quadruples) == 7
    assert extraction.radius_a == 4
    assert extraction.gap_constant == 4


def test_curve_extraction_on_circle_arcs(poly, circle_points):
    g = poly("x^2 + y^2 - 1", XY)
    points = circle_points(12)
    A = IndexedSet(sorted({x for x, _ in points}))
    B = IndexedSet(sorted({y for _, y in points}))
    extraction = extract_curve_quadruples(g, A, B, points, 1, ForbidMap.empty(), ForbidMap.empty())
    assert extraction.size == 12
    assert extraction.pieces == extraction.c_dec <= 8
    for q in extraction.quadruples:
        check_quadruple(q, g, list(A), list(B), {}, {}, extraction.radius_a, extraction.radius_b)
    assert len(extraction.quadruples) >= ledger_floor(12, 1, extraction.c_dec, extraction.residual)


def test_curve_extraction_on_empty_set(poly):
    A = IndexedSet.interval(1, 3)
    extraction = extract_curve_quadruples(poly("x^2 + y^2 + 1", XY), A, A, [], 1,
                                          ForbidMap.empty(), ForbidMap.empty())
    assert extraction.quadruples == ()
    assert extraction.guarantee <= 0


def synthetic_grid(fibers):
    C = IndexedSet.interval(1, len(fibers))
    triples = [(i, 0, k) for k, count in enumerate(fibers) for i in range(count)]
    A = IndexedSet.interval(1, max(fibers))
    surface = MultivariatePolynomial.variable("z", ("x", "y", "z"))
    return GridIntersection(tuple(triples), tuple(fibers), A, IndexedSet([1]), C, surface)


@pytest.mark.parametrize(
    "fibers,threshold,indices,retained",
    [
        ((10, 1, 1), Fraction(2), (0,), 10),
        ((5, 3, 0), Fraction(4, 3), (0, 1), 8),
        ((4, 4, 4), Fraction(2), (0, 1, 2), 12),
    ],
)
def test_heavy_fibers(fibers, threshold, indices, retained):
    heavy = heavy_fibers(synthetic_grid(fibers))
    assert heavy.threshold == threshold
    assert heavy.indices == indices
    assert heavy.retained == retained
    assert 2 * heavy.retained >= heavy.total


def test_tuples_on_hyperbola_surface(poly):
    f = poly("z - x*y")
    A = IndexedSet([1, 2, 4])
    extraction = extract_proximate_tuples(f, A, A, A)
    assert extraction.grid.fiber_counts == (1, 2, 3)
    assert extraction.heavy.threshold == 1
    assert extraction.heavy.indices == (0, 1, 2)
    assert len(extraction.tuples) == 3
    assert extraction.radius_a == extraction.radius_b == 12
    for t in extraction.tuples:
        check_tuple(t, f, list(A), list(A), list(A), extraction.radius_a, extraction.radius_b)
    assert len(extraction.tuples) >= extraction.guarantee


def test_tuples_on_additive_surface(poly):
    f = poly("x + y - z")
    A = IndexedSet.interval(1, 6)
    C = IndexedSet(range(2, 13, 2))
    extraction = extract_proximate_tuples(f, A, A, C, S=1)
    assert len(extraction.grid) == 18
    assert extraction.c_dec == 1
    assert extraction.gap_constant == 8
    for t in extraction.tuples:
        check_tuple(t, f, list(A), list(A), list(C), extraction.radius_a, extraction.radius_b)
    assert len(extraction.tuples) >= Fraction(18, 4) - len(C)


def test_tuples_refuse_empty_and_cylinder(poly):
    A = IndexedSet.interval(1, 3)
    with pytest.raises(EmptyGridError):
        extract_proximate_tuples(poly("x^2 + y^2 + z^2 + 1"), A, A, A)
    with pytest.raises(CylinderError):
        extract_proximate_tuples(poly("x + y"), A, A, A)


def test_tuples_accept_a_precomputed_grid(poly):
    f = poly("z - x*y")
    A = IndexedSet([1, 2, 4])
    grid = intersect_grid(f, A, A, A)
    assert extract_proximate_tuples(f, A, A, A, grid=grid).grid is grid
