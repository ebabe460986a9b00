"""Indexed sets and Cartesian grid intersections G = (A x B x C) ∩ Z(f).

Indices are 0-based. Every gap formula downstream is a difference of indices,
so the offset from a 1-based convention cancels.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Optional

from . import config
from .algebra import MultivariatePolynomial, as_rational
from .errors import (
    ArityError,
    DuplicateElementError,
    ElementNotFoundError,
    EmptyGridError,
    InvariantViolation,
    PreconditionError,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)

SURFACE_VARIABLES = ("x", "y", "z")


class IndexedSet:
    """Finite strictly increasing sequence of rationals with O(1) index lookup."""

    def __init__(self, elements: Iterable[Fraction]):
        elements = tuple(as_rational(e) for e in elements)
        if any(b <= a for a, b in zip(elements, elements[1:])):
            raise PreconditionError("IndexedSet elements must be strictly increasing")
        self.elements = elements
        self._lookup = {e: i for i, e in enumerate(elements)}

    @classmethod
    def from_values(cls, values: Iterable, strict: Optional[bool] = None,
                    warnings: Optional[list] = None, name: str = "set") -> "IndexedSet":
        """Sort and deduplicate; duplicates raise in strict mode and warn otherwise."""
        if strict is None:
            strict = config.STRICT_SETS
        values = [as_rational(v) for v in values]
        unique = sorted(set(values))
        duplicates = len(values) - len(unique)
        if duplicates:
            message = f"{name} contains {duplicates} duplicate element(s)"
            if strict:
                raise DuplicateElementError(message)
            logger.warning(message)
            if warnings is not None:
                warnings.append(message)
        return cls(unique)

    @classmethod
    def interval(cls, start: int, stop: int) -> "IndexedSet":
        """The integers start..stop inclusive."""
        return cls(range(start, stop + 1))

    def index_of(self, value) -> int:
        try:
            return self._lookup[as_rational(value)]
        except KeyError:
            raise ElementNotFoundError(f"{value} is not an element of the set") from None

    def index_gap(self, a, b) -> int:
        return abs(self.index_of(a) - self.index_of(b))

    def __getitem__(self, i: int) -> Fraction:
        return self.elements[i]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.elements)

    def __contains__(self, value) -> bool:
        try:
            return as_rational(value) in self._lookup
        except (TypeError, ValueError):
            return False

    def __eq__(self, other):
        return isinstance(other, IndexedSet) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        shown = ", ".join(str(e) for e in self.elements[:6])
        more = ", ..." if len(self.elements) > 6 else ""
        return f"IndexedSet([{shown}{more}])"


def index_of(s: IndexedSet, a) -> int:
    return s.index_of(a)


@dataclass(frozen=True)
class GridIntersection:
    """Index triples (i, j, k) with f(A[i], B[j], C[k]) = 0, sorted lexicographically."""

    triples: tuple
    fiber_counts: tuple
    A: IndexedSet
    B: IndexedSet
    C: IndexedSet
    surface: MultivariatePolynomial

    def __len__(self) -> int:
        return len(self.triples)

    def points(self) -> list:
        return [(self.A[i], self.B[j], self.C[k]) for i, j, k in self.triples]

    def fiber(self, k: int) -> list:
        """Points (a, b) of the slice z = C[k], sorted by a."""
        return [(self.A[i], self.B[j]) for i, j, kk in self.triples if kk == k]

    def fibers(self) -> list:
        return [{"c": self.C[k], "count": n} for k, n in enumerate(self.fiber_counts)]


def _check_surface(f: MultivariatePolynomial):
    if f.is_zero:
        raise ZeroPolynomialError("the surface polynomial is zero")
    if f.variables != SURFACE_VARIABLES:
        raise ArityError(f"surface must be declared over {SURFACE_VARIABLES}, got {f.variables}")


def _finish(f, A, B, C, triples) -> GridIntersection:
    triples = tuple(sorted(triples))
    fibers = [0] * len(C)
    for _, _, k in triples:
        fibers[k] += 1
    return GridIntersection(triples, tuple(fibers), A, B, C, f)


def intersect_grid(f: MultivariatePolynomial, A: IndexedSet, B: IndexedSet, C: IndexedSet) -> GridIntersection:
    """Exact G. Per (a, b) the z-polynomial f(a, b, z) is solved by lookup when linear,
    by evaluation over C otherwise, and admits all of C when it vanishes identically."""
    _check_surface(f)
    z_coeffs = [c for c in f.coefficients_in("z")]
    C_values = list(C)
    triples = []
    for (i, a), (j, b) in product(enumerate(A), enumerate(B)):
        q = [c.evaluate((a, b)) for c in z_coeffs]
        while q and q[-1] == 0:
            q.pop()
        if not q:
            triples.extend((i, j, k) for k in range(len(C)))
        elif len(q) == 1:
            continue
        elif len(q) == 2:
            root = -q[0] / q[1]
            if root in C:
                triples.append((i, j, C.index_of(root)))
        else:
            for k, c in enumerate(C_values):
                total = Fraction(0)
                for coef in reversed(q):
                    total = total * c + coef
                if total == 0:
                    triples.append((i, j, k))
    grid = _finish(f, A, B, C, triples)
    logger.debug("intersect_grid: |A|=%d |B|=%d |C|=%d |G|=%d", len(A), len(B), len(C), len(grid))
    return grid


def intersect_grid_bruteforce(f: MultivariatePolynomial, A: IndexedSet, B: IndexedSet, C: IndexedSet) -> GridIntersection:
    _check_surface(f)
    triples = [
        (i, j, k)
        for (i, a), (j, b), (k, c) in product(enumerate(A), enumerate(B), enumerate(C))
        if f.evaluate((a, b, c)) == 0
    ]
    return _finish(f, A, B, C, triples)


@dataclass(frozen=True)
class SchwartzZippelReport:
    count: int
    degree: int
    ceiling: Fraction
    ratio: float
    asserted: bool
    fibers: list = field(default_factory=list)


def schwartz_zippel_audit(g: GridIntersection) -> SchwartzZippelReport:
    """Check |G| <= deg f * N^2 on equal-size grids.

    Unequal sizes fall back to the report-only ceiling
    deg f * |A||B||C| / min(|A|, |B|, |C|).
    """
    degree = g.surface.total_degree()
    sizes = (len(g.A), len(g.B), len(g.C))
    equal = sizes[0] == sizes[1] == sizes[2]
    if equal:
        ceiling = Fraction(degree * sizes[0] ** 2)
    else:
        smallest = min(sizes)
        ceiling = Fraction(degree * sizes[0] * sizes[1] * sizes[2], smallest) if smallest else Fraction(0)
        logger.info("unequal set sizes %s; Schwartz-Zippel ceiling is report-only", sizes)
    count = len(g)
    if equal and count > ceiling:
        raise InvariantViolation(f"|G| = {count} exceeds the Schwartz-Zippel ceiling {ceiling}")
    ratio = float(count / ceiling) if ceiling else 0.0
    return SchwartzZippelReport(count, degree, ceiling, ratio, equal, g.fibers())


@dataclass(frozen=True)
class ExtremalWitness:
    A: IndexedSet
    B: IndexedSet
    C: IndexedSet
    surface: MultivariatePolynomial
    count: int
    bound: Fraction


def extremal_pair_count(N: int) -> int:
    """Lattice pairs (a, b) in {1..N}^2 with a + b in {2..N+1}."""
    return N * (N + 1) // 2


def gen_extremal_additive(N: int) -> ExtremalWitness:
    """A = B = {1..N}, C = {2..N+1}, f = x + y - z, with the exact |G|."""
    if N < 2:
        raise PreconditionError(f"extremal witness needs N >= 2, got {N}")
    A = IndexedSet.interval(1, N)
    C = IndexedSet.interval(2, N + 1)
    f = (MultivariatePolynomial.variable("x", SURFACE_VARIABLES)
         + MultivariatePolynomial.variable("y", SURFACE_VARIABLES)
         - MultivariatePolynomial.variable("z", SURFACE_VARIABLES))
    lo, hi = 2, N + 1
    count = sum(1 for a in range(1, N + 1) for b in range(1, N + 1) if lo <= a + b <= hi)
    if count != extremal_pair_count(N):
        raise InvariantViolation(f"extremal enumeration {count} disagrees with closed form {extremal_pair_count(N)}")
    bound = Fraction((N - 2) ** 2, 8)
    if count < bound:
        raise InvariantViolation(f"extremal witness count {count} is below (N-2)^2/8 = {bound}")
    return ExtremalWitness(A, A, C, f, count, bound)


def is_cylinder(f: MultivariatePolynomial) -> Optional[str]:
    """Name of a surface variable f does not depend on, or None."""
    _check_surface(f)
    for name in SURFACE_VARIABLES:
        if not f.depends_on(name):
            return name
    return None


def require_nonempty(g: GridIntersection):
    if not len(g):
        raise EmptyGridError("the grid intersection G is empty")


def curve_points(g: MultivariatePolynomial, A: IndexedSet, B: IndexedSet) -> list:
    """(A x B) ∩ Z(g) for a plane curve g, sorted by (a, b)."""
    if g.nvars != 2:
        raise ArityError(f"a plane curve needs two variables, got {g.variables}")
    return [(a, b) for a, b in product(A, B) if g.evaluate((a, b)) == 0]
