"""Distinct-distance applications, counted exactly on squared distances.

Squaring is strictly monotone on nonnegative reals, so distinct squared
distances are distinct distances and no radicals are ever formed.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from .algebra import MultivariatePolynomial, as_rational, determinant, divides
from .errors import (
    CollinearAnchorsError,
    DegenerateFitError,
    ForbiddenAngleError,
    InvariantViolation,
    OffCurveError,
    PreconditionError,
)
from .fitting import fit_exponent
from .grid import SURFACE_VARIABLES, IndexedSet, intersect_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class PlanarPoint:
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y) -> "PlanarPoint":
        return cls(as_rational(x), as_rational(y))

    def __add__(self, other: "PlanarPoint") -> "PlanarPoint":
        return PlanarPoint(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "PlanarPoint") -> "PlanarPoint":
        return PlanarPoint(self.x - other.x, self.y - other.y)

    def dot(self, other: "PlanarPoint") -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "PlanarPoint") -> Fraction:
        return self.x * other.y - self.y * other.x

    def perp(self) -> "PlanarPoint":
        return PlanarPoint(-self.y, self.x)

    def norm2(self) -> Fraction:
        return self.dot(self)

    def squared_distance(self, other: "PlanarPoint") -> Fraction:
        return (self - other).norm2()


@dataclass
class ExperimentRecord:
    name: str
    parameters: dict
    n: object
    exact_count: int
    bound_value: float
    exponent_series: list = field(default_factory=list)
    exponent: Optional[float] = None
    details: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)


def _with_series(name: str, parameters: dict, records: Sequence[ExperimentRecord]) -> ExperimentRecord:
    series = [(r.n, r.exact_count) for r in records]
    last = records[-1]
    fit = fit_exponent(series)
    return ExperimentRecord(name, parameters, last.n, last.exact_count, last.bound_value, series, fit.slope,
                            {"residual": fit.residual}, [w for r in records for w in r.warnings])


# -- two lines ---------------------------------------------------------------

def two_lines_experiment(cos_theta, A: IndexedSet, B: IndexedSet) -> ExperimentRecord:
    """Distinct distances between points s on one line and t on another at angle theta."""
    c = as_rational(cos_theta)
    if c in (0, 1, -1):
        raise ForbiddenAngleError(f"cos(theta) = {c} makes the lines orthogonal or parallel")
    if abs(c) > 1:
        raise PreconditionError(f"cos(theta) = {c} is not a cosine")
    values = {s * s + t * t - 2 * s * t * c for s in A for t in B}
    bound = min((len(A) * len(B)) ** 0.75, float(len(A) ** 2))
    return ExperimentRecord("two-lines", {"cos_theta": c}, (len(A), len(B)), len(values), bound)


def two_lines_series(cos_theta, Ns: Sequence[int]) -> ExperimentRecord:
    records = [two_lines_experiment(cos_theta, IndexedSet.interval(1, n), IndexedSet.interval(1, n)) for n in Ns]
    for r, n in zip(records, Ns):
        r.n = n
    return _with_series("two-lines", {"cos_theta": as_rational(cos_theta)}, records)


# -- three points ------------------------------------------------------------

def _check_anchors(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint):
    if (p2 - p1).cross(p3 - p1) == 0:
        raise CollinearAnchorsError(f"anchors {p1}, {p2}, {p3} are collinear")


def cayley_menger_surface(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint) -> MultivariatePolynomial:
    """Cayley-Menger determinant of {p1, p2, p3, p} in the squared distances (x, y, z) = (r1, r2, r3).

    It vanishes exactly when the four points fit in a plane, i.e. when some
    planar p realizes the three squared distances.
    """
    _check_anchors(p1, p2, p3)
    r1, r2, r3 = (MultivariatePolynomial.variable(v, SURFACE_VARIABLES) for v in SURFACE_VARIABLES)
    d12, d13, d23 = p1.squared_distance(p2), p1.squared_distance(p3), p2.squared_distance(p3)
    matrix = [
        [0, 1, 1, 1, 1],
        [1, 0, d12, d13, r1],
        [1, d12, 0, d23, r2],
        [1, d13, d23, 0, r3],
        [1, r1, r2, r3, 0],
    ]
    return determinant(matrix, SURFACE_VARIABLES)


def three_points_experiment(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint, P: Iterable[PlanarPoint],
                            count_grid: bool = False) -> ExperimentRecord:
    surface = cayley_menger_surface(p1, p2, p3)
    points = sorted(set(P))
    distances = [set(), set(), set()]
    for p in points:
        triple = tuple(p.squared_distance(anchor) for anchor in (p1, p2, p3))
        if surface.evaluate(triple) != 0:
            raise InvariantViolation(f"{p} realizes {triple} off the Cayley-Menger surface")
        for d, r in zip(distances, triple):
            d.add(r)
    count = len(distances[0] | distances[1] | distances[2])
    details = {"sizes": [len(d) for d in distances]}
    if count_grid and points:
        grid = intersect_grid(surface, *(IndexedSet(sorted(d)) for d in distances))
        if len(grid) < len(points):
            raise InvariantViolation(f"|G| = {len(grid)} < |P| = {len(points)} on the Cayley-Menger surface")
        details["grid"] = len(grid)
    n = len(points)
    return ExperimentRecord("three-points", {"anchors": [p1, p2, p3]}, n, count, n ** (7 / 12), details=details)


def line_points(n: int, slope=Fraction(1, 2), intercept=Fraction(1, 3)) -> list:
    return [PlanarPoint.of(t, slope * t + intercept) for t in range(1, n + 1)]


def three_points_series(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint, Ns: Sequence[int]) -> ExperimentRecord:
    records = [three_points_experiment(p1, p2, p3, line_points(n)) for n in Ns]
    return _with_series("three-points", {"anchors": [p1, p2, p3], "points": "line"}, records)


# -- points on a curve -------------------------------------------------------

def _line_through(p: PlanarPoint, q: PlanarPoint, variables) -> MultivariatePolynomial:
    x, y = (MultivariatePolynomial.variable(v, variables) for v in variables)
    return (q.y - p.y) * (x - p.x) - (q.x - p.x) * (y - p.y)


def _circle_through(p: PlanarPoint, q: PlanarPoint, r: PlanarPoint, variables) -> Optional[MultivariatePolynomial]:
    a, b = q - p, r - p
    cross = a.cross(b)
    if cross == 0:
        return None
    d = 2 * cross
    center = p + PlanarPoint((b.y * a.norm2() - a.y * b.norm2()) / d, (a.x * b.norm2() - b.x * a.norm2()) / d)
    x, y = (MultivariatePolynomial.variable(v, variables) for v in variables)
    return (x - center.x) ** 2 + (y - center.y) ** 2 - center.squared_distance(p)


def line_or_circle_warnings(gamma: MultivariatePolynomial, points: Sequence[PlanarPoint], sample_size: int = 6) -> list:
    """Divisibility pre-check for lines and circles through the first few points."""
    warnings = []
    if gamma.total_degree() <= 1:
        return [f"{gamma} is a line"]
    sample = list(points)[:sample_size]
    for p, q in combinations(sample, 2):
        line = _line_through(p, q, gamma.variables)
        if line and divides(line, gamma):
            warnings.append(f"{gamma} contains the line {line}")
            break
    for p, q, r in combinations(sample, 3):
        circle = _circle_through(p, q, r, gamma.variables)
        if circle is not None and divides(circle, gamma):
            warnings.append(f"{gamma} contains the circle {circle}")
            break
    return warnings


def curve_distance_experiment(gamma: MultivariatePolynomial, P: Iterable[PlanarPoint]) -> ExperimentRecord:
    points = sorted(set(P))
    for p in points:
        if gamma.evaluate((p.x, p.y)) != 0:
            raise OffCurveError(f"{p} is not on {gamma}")
    warnings = line_or_circle_warnings(gamma, points)
    for message in warnings:
        logger.warning(message)
    distances = {p.squared_distance(q) for p, q in combinations(points, 2)}
    n = len(points)
    return ExperimentRecord("curve", {"gamma": str(gamma)}, n, len(distances), n ** 1.5, warnings=warnings)


def cubic_points(n: int) -> list:
    return [PlanarPoint.of(t, t ** 3) for t in range(1, n + 1)]


def curve_series(gamma: MultivariatePolynomial, Ns: Sequence[int], sampler=cubic_points) -> ExperimentRecord:
    records = [curve_distance_experiment(gamma, sampler(n)) for n in Ns]
    return _with_series("curve", {"gamma": str(gamma)}, records)


# -- unit circles through three families -------------------------------------

def unit_vector(t) -> PlanarPoint:
    """((1 - t^2) / (1 + t^2), 2t / (1 + t^2)), a rational point of the unit circle."""
    t = as_rational(t)
    denominator = 1 + t * t
    return PlanarPoint((1 - t * t) / denominator, 2 * t / denominator)


def circumcenter(o1: PlanarPoint, o2: PlanarPoint, o3: PlanarPoint) -> Optional[PlanarPoint]:
    a, b = o2 - o1, o3 - o1
    cross = a.cross(b)
    if cross == 0:
        return None
    d = 2 * cross
    return o1 + PlanarPoint((b.y * a.norm2() - a.y * b.norm2()) / d, (a.x * b.norm2() - b.x * a.norm2()) / d)


def circumradius_squared(o1: PlanarPoint, o2: PlanarPoint, o3: PlanarPoint) -> Optional[Fraction]:
    """|a|^2 |b|^2 |a - b|^2 / (4 (a x b)^2); None for collinear or coincident centers."""
    a, b = o2 - o1, o3 - o1
    cross = a.cross(b)
    if cross == 0:
        return None
    return a.norm2() * b.norm2() * (a - b).norm2() / (4 * cross * cross)


def pairwise_circle_oracle(o1: PlanarPoint, o2: PlanarPoint, o3: PlanarPoint) -> bool:
    """Do the unit circles about o1 and o2 meet at a point at distance 1 from o3?

    The intersections are m +- h perp(d) with d = o2 - o1, m the midpoint and
    h^2 = (1 - |d|^2/4) / |d|^2. Writing e = m - o3, u = e . perp(d) and
    L = |e|^2 + h^2 |d|^2 - 1, a hit means L = -+ 2 h u, i.e. L^2 = 4 h^2 u^2.
    """
    d = o2 - o1
    if d.norm2() == 0:
        return False
    h2 = (1 - d.norm2() / 4) / d.norm2()
    if h2 < 0:
        return False
    m = PlanarPoint((o1.x + o2.x) / 2, (o1.y + o2.y) / 2)
    e = m - o3
    u = e.dot(d.perp())
    L = e.norm2() + h2 * d.norm2() - 1
    return L * L == 4 * h2 * u * u


def unit_circle_triple_points(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint,
                              t_params: Sequence[Sequence]) -> ExperimentRecord:
    """Points lying on a unit circle from each of three families of circles through p1, p2, p3.

    Family i has centers p_i + unit_vector(t), so every circle passes through
    p_i. A triple of centers yields a triple point iff its circumradius is 1;
    the triple point is then the circumcenter, and triples are grouped by it.
    """
    anchors = (p1, p2, p3)
    if len(set(anchors)) < 3:
        raise PreconditionError(f"anchors {p1}, {p2}, {p3} must be distinct")
    if len(t_params) != 3:
        raise PreconditionError("one list of t-parameters per family is required")
    families = [sorted({anchor + unit_vector(t) for t in ts}) for anchor, ts in zip(anchors, t_params)]
    centers, hits, degenerate = set(), 0, 0
    for o1, o2, o3 in product(*families):
        r2 = circumradius_squared(o1, o2, o3)
        if r2 is None:
            degenerate += 1
            continue
        if r2 == 1:
            hits += 1
            centers.add(circumcenter(o1, o2, o3))
    n = max(len(f) for f in families)
    details = {"triples": hits, "degenerate": degenerate, "family_sizes": [len(f) for f in families],
               "grouping": "triples sharing a circumcenter count once"}
    return ExperimentRecord("circles", {"anchors": list(anchors)}, n, len(centers), n ** (12 / 7), details=details)


def circles_series(p1: PlanarPoint, p2: PlanarPoint, p3: PlanarPoint, Ns: Sequence[int]) -> ExperimentRecord:
    records = []
    for n in Ns:
        ts = list(range(n))
        records.append(unit_circle_triple_points(p1, p2, p3, (ts, ts, ts)))
    warnings = []
    for r in records:
        if r.exact_count == 0:
            message = f"no triple points at N = {r.n}; left out of the exponent fit"
            logger.warning(message)
            warnings.append(message)
    series = [(r.n, r.exact_count) for r in records if r.exact_count > 0]
    if len(series) < 2:
        raise DegenerateFitError(f"only {len(series)} of {len(records)} sizes have triple points; the fit needs two")
    last = records[-1]
    fit = fit_exponent(series)
    return ExperimentRecord("circles", {"anchors": [p1, p2, p3]}, last.n, last.exact_count, last.bound_value,
                            [(r.n, r.exact_count) for r in records], fit.slope, {"residual": fit.residual}, warnings)
