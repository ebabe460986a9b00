import random
from fractions import Fraction

import pytest

from proximity_lab.algebra import MultivariatePolynomial
from proximity_lab.errors import (
    DuplicateElementError,
    ElementNotFoundError,
    EmptyGridError,
    ParseError,
    PreconditionError,
    ZeroPolynomialError,
)
from proximity_lab.formats import (
    parse_point_text,
    parse_set_text,
    quadruples_csv,
    read_set_file,
    write_set_file,
)
from proximity_lab.grid import (
    SURFACE_VARIABLES,
    IndexedSet,
    curve_points,
    extremal_pair_count,
    gen_extremal_additive,
    intersect_grid,
    intersect_grid_bruteforce,
    is_cylinder,
    require_nonempty,
    schwartz_zippel_audit,
)
from proximity_lab.quadruples import ProximateQuadruple


def test_index_of_examples():
    s = IndexedSet([1, 3, 7])
    assert s.index_of(1) == 0
    assert s.index_of(7) == 2
    assert s.index_of(3) == 1
    assert s.index_gap(7, 1) == 2
    with pytest.raises(ElementNotFoundError):
        s.index_of(2)


def test_indexed_set_requires_strict_order():
    with pytest.raises(PreconditionError):
        IndexedSet([1, 1, 2])
    with pytest.raises(PreconditionError):
        IndexedSet([3, 2])


def test_from_values_duplicates():
    with pytest.raises(DuplicateElementError):
        IndexedSet.from_values([3, 1, 3], strict=True)
    warnings = []
    s = IndexedSet.from_values(["1/2", 3, "6/2"], strict=False, warnings=warnings)
    assert list(s) == [Fraction(1, 2), Fraction(3)]
    assert warnings == ["set contains 1 duplicate element(s)"]


def test_intersect_grid_examples(poly):
    A = IndexedSet([0, 1, 2])
    grid = intersect_grid(poly("x + y - z"), A, A, IndexedSet.interval(0, 4))
    assert len(grid) == 9
    assert len(intersect_grid(poly("x^2 + y^2 + z^2 + 1"), A, A, A)) == 0


def test_intersect_grid_lists_sorted_triples(poly):
    A = IndexedSet([0, 1])
    grid = intersect_grid(poly("(x - y)^2 + x - z"), A, A, IndexedSet([0, 1, 2]))
    assert grid.triples == ((0, 0, 0), (0, 1, 1), (1, 0, 2), (1, 1, 1))
    assert grid.fiber_counts == (1, 2, 1)
    assert grid.fiber(1) == [(0, 1), (1, 1)]


def test_intersect_grid_vanishing_column(poly):
    A = IndexedSet([0, 1, 2])
    grid = intersect_grid(poly("x*z - x*y"), A, A, A)
    assert grid == intersect_grid_bruteforce(poly("x*z - x*y"), A, A, A)
    # the column a = 0 admits every c
    assert sum(1 for i, _, _ in grid.triples if i == 0) == 9


def test_intersect_grid_refuses_zero_surface():
    with pytest.raises(ZeroPolynomialError):
        intersect_grid(MultivariatePolynomial(SURFACE_VARIABLES), IndexedSet([1]), IndexedSet([1]), IndexedSet([1]))


def test_schwartz_zippel_examples(poly):
    N10 = IndexedSet.interval(1, 10)
    audit = schwartz_zippel_audit(intersect_grid(poly("x + y - z"), N10, N10, N10))
    assert audit.count == 45
    assert audit.ceiling == 100
    assert audit.asserted
    assert audit.ratio == pytest.approx(0.45)

    N2 = IndexedSet.interval(1, 2)
    grid = intersect_grid(poly("z - x*y"), N2, N2, N2)
    assert grid.triples == ((0, 0, 0), (0, 1, 1), (1, 0, 1))
    audit = schwartz_zippel_audit(grid)
    assert (audit.count, audit.degree, audit.ceiling) == (3, 2, 8)


def test_schwartz_zippel_empty_grid_ratio(poly):
    A = IndexedSet.interval(1, 3)
    assert schwartz_zippel_audit(intersect_grid(poly("x^2 + y^2 + z^2 + 1"), A, A, A)).ratio == 0


def test_schwartz_zippel_unequal_sizes_are_report_only(poly):
    grid = intersect_grid(poly("x + y - z"), IndexedSet.interval(1, 3), IndexedSet.interval(1, 4),
                          IndexedSet.interval(1, 8))
    audit = schwartz_zippel_audit(grid)
    assert not audit.asserted
    assert audit.ceiling == Fraction(1 * 3 * 4 * 8, 3)


def test_schwartz_zippel_holds_for_seeded_surfaces():
    rng = random.Random(99)
    A = IndexedSet([Fraction(n, 2) for n in range(-3, 4)])
    checked = 0
    while checked < 50:
        terms = {tuple(rng.randint(0, 2) for _ in range(3)): rng.randint(-3, 3) for _ in range(rng.randint(1, 4))}
        f = MultivariatePolynomial(SURFACE_VARIABLES, terms)
        if f.is_zero:
            continue
        grid = intersect_grid(f, A, A, A)
        assert grid == intersect_grid_bruteforce(f, A, A, A)
        audit = schwartz_zippel_audit(grid)
        assert audit.count <= f.total_degree() * len(A) ** 2
        checked += 1


@pytest.mark.parametrize("N", [2, 4, 17, 100, 512])
def test_extremal_witness(N):
    witness = gen_extremal_additive(N)
    assert witness.count == extremal_pair_count(N)
    assert witness.count >= witness.bound == Fraction((N - 2) ** 2, 8)
    grid = intersect_grid(witness.surface, witness.A, witness.B, witness.C)
    if N <= 17:
        assert len(grid) == witness.count


def test_extremal_witness_small_values():
    assert gen_extremal_additive(4).count == 10
    assert gen_extremal_additive(100).count >= 1200.5
    with pytest.raises(PreconditionError):
        gen_extremal_additive(1)


def test_is_cylinder(poly):
    assert is_cylinder(poly("x + y")) == "z"
    assert is_cylinder(poly("x + y - z")) is None


def test_require_nonempty(poly):
    A = IndexedSet([1, 2])
    with pytest.raises(EmptyGridError):
        require_nonempty(intersect_grid(poly("x^2 + 1 + 0*y*z"), A, A, A))


def test_curve_points(poly):
    A = IndexedSet.interval(1, 3)
    g = poly("y - x", ("x", "y"))
    assert curve_points(g, A, A) == [(1, 1), (2, 2), (3, 3)]


def test_set_file_parsing(tmp_path):
    text = "# header\n1\n-3/4  # trailing\n\n6/3\n"
    assert parse_set_text(text) == [1, Fraction(-3, 4), 2]
    with pytest.raises(ParseError):
        parse_set_text("0.5\n")
    with pytest.raises(ParseError):
        parse_set_text("1/0\n")
    path = tmp_path / "A.txt"
    write_set_file(path, [Fraction(1, 3), 2], comment="sample")
    assert path.read_text() == "# sample\n1/3\n2\n"
    assert read_set_file(path) == [Fraction(1, 3), 2]


def test_point_file_parsing():
    assert parse_point_text("0 1\n1/2 -3\n") == [(0, 1), (Fraction(1, 2), -3)]
    with pytest.raises(ParseError):
        parse_point_text("1 2 3\n")


def test_quadruples_csv():
    q = ProximateQuadruple(Fraction(1), Fraction(2), Fraction(1, 2), Fraction(3), 1, 2)
    assert quadruples_csv([q]) == "a,a',b,b',gapA,gapB\n1,2,1/2,3,1,2\n"
