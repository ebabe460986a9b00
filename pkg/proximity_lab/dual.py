"""Dual curves, safety certificates, incidence systems and the full bound chain.

For a surface f(x, y, z) and a pair (a, a') the dual curve is the z-resultant of
f(a, y, z) and f(a', y', z), a plane curve in (y, y') through every (b, b')
whose points (a, b, c), (a', b', c) share a z-value. Components shared by many
dual curves are popular; pairs owning one are dangerous and get forbidden.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .algebra import (
    MultivariatePolynomial,
    as_rational,
    bivariate_gcd,
    divides,
    radical,
    resultant_in_z,
    sturm_isolate,
    univariate_gcd,
)
from .errors import (
    CylinderError,
    InvariantViolation,
    LabError,
    PreconditionError,
    StageError,
    ZDegreeCollapseError,
    ZeroPolynomialError,
)
from .expander import separability_test
from .grid import SURFACE_VARIABLES, GridIntersection, IndexedSet, intersect_grid, is_cylinder, require_nonempty
from .quadruples import ForbidMap, default_capacity, extract_proximate_tuples

logger = logging.getLogger(__name__)

AXES = {"x": ("y", "y'"), "y": ("x", "x'")}


@dataclass(frozen=True)
class DualCurve:
    pair: tuple
    defining: MultivariatePolynomial
    squarefree_key: Optional[MultivariatePolynomial]
    degenerate: bool
    leading: tuple = ()
    axis: str = "x"

    @property
    def empty(self) -> bool:
        """A nonzero constant resultant: no common z anywhere."""
        return not self.degenerate and self.defining.is_constant

    def contains(self, point) -> bool:
        return self.defining.evaluate(point) == 0


def _slice(f: MultivariatePolynomial, axis: str, value, primed: bool) -> MultivariatePolynomial:
    if axis not in AXES:
        raise PreconditionError(f"axis must be 'x' or 'y', got {axis!r}")
    g = f.substitute(axis, value)
    if g.is_zero:
        raise ZeroPolynomialError(f"{f} vanishes identically at {axis} = {value}")
    if primed:
        free = AXES[axis][0]
        g = g.rename({free: free + "'"})
    return g


def dual_curve(f: MultivariatePolynomial, a, a2, axis: str = "x") -> DualCurve:
    """The z-resultant curve of the slices at axis = a and axis = a'."""
    a, a2 = as_rational(a), as_rational(a2)
    g1 = _slice(f, axis, a, primed=False)
    g2 = _slice(f, axis, a2, primed=True)
    defining = resultant_in_z(g1, g2, "z")
    degenerate = defining.is_zero
    key = None
    if not degenerate and not defining.is_constant:
        key = radical(defining)
    leading = (g1.coefficients_in("z")[-1], g2.coefficients_in("z")[-1])
    return DualCurve((a, a2), defining, key, degenerate, leading, axis)


@dataclass(frozen=True)
class SafetyCertificate:
    pair: tuple
    safe: bool
    witness: Optional[MultivariatePolynomial] = None
    popularity: int = 0
    excluded: Optional[str] = None

    @property
    def verdict(self) -> str:
        return "safe" if self.safe else "dangerous"


@dataclass(frozen=True)
class Classification:
    axis: str
    threshold: int
    certificates: dict
    curves: dict
    popular: tuple
    clusters: tuple

    def certificate(self, a, a2) -> SafetyCertificate:
        return self.certificates[(as_rational(a), as_rational(a2))]

    @property
    def dangerous(self) -> list:
        return [pair for pair, cert in self.certificates.items() if not cert.safe]


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _specialization_value(keys, fixed: str) -> Fraction:
    """A value for ``fixed`` at which no key drops degree in the other variable."""
    free = next(v for v in keys[0].variables if v != fixed)
    leads = [k.coefficients_in(free)[-1] for k in keys]
    t = 0
    while True:
        for value in (Fraction(t), Fraction(-t)):
            if all(lead.evaluate((value,)) != 0 for lead in leads):
                return value
        t += 1


class _GcdFilter:
    """Cheap necessary test for a nonconstant common divisor.

    A nonconstant common factor survives specialization of one variable at a
    point where every key keeps its degree in the other variable.
    """

    def __init__(self, keys):
        first, second = keys[0].variables
        self.first_value = _specialization_value(keys, second)
        self.second_value = _specialization_value(keys, first)
        self.first = first
        self.second = second
        self._cache = {}

    def _images(self, key):
        if key not in self._cache:
            self._cache[key] = (key.substitute(self.second, self.first_value),
                                key.substitute(self.first, self.second_value))
        return self._cache[key]

    def may_share(self, k1, k2) -> bool:
        u1, v1 = self._images(k1)
        u2, v2 = self._images(k2)
        return not univariate_gcd(u1, u2).is_constant or not univariate_gcd(v1, v2).is_constant


def classify_pairs(f: MultivariatePolynomial, A: IndexedSet, axis: str = "x") -> Classification:
    """Certificates for all ordered pairs a != a' of A.

    Popularity is measured within A x A only; this can only mark more pairs
    dangerous than measuring over all complex pairs would.
    """
    if len(A) < 2:
        raise PreconditionError("classify_pairs needs at least two elements")
    threshold = f.total_degree() ** 4 + 1
    curves, collapsed = {}, {}
    for a in A:
        for a2 in A:
            if a == a2:
                continue
            try:
                curves[(a, a2)] = dual_curve(f, a, a2, axis)
            except (ZDegreeCollapseError, ZeroPolynomialError) as exc:
                collapsed[(a, a2)] = str(exc)

    keys = sorted({c.squarefree_key for c in curves.values() if c.squarefree_key is not None},
                  key=lambda k: (k.total_degree(), str(k)))
    candidates = list(keys)
    clusters = ()
    if keys:
        gcd_filter = _GcdFilter(keys)
        uf = _UnionFind(len(keys))
        seen = set(keys)
        frontier = []
        for i, j in combinations(range(len(keys)), 2):
            if not gcd_filter.may_share(keys[i], keys[j]):
                continue
            g = bivariate_gcd(keys[i], keys[j])
            if g.is_constant:
                continue
            uf.union(i, j)
            if g not in seen:
                seen.add(g)
                frontier.append(g)
        while frontier:
            fresh = []
            for g in frontier:
                for other in candidates:
                    if not gcd_filter.may_share(g, other):
                        continue
                    h = bivariate_gcd(g, other)
                    if not h.is_constant and h not in seen:
                        seen.add(h)
                        fresh.append(h)
                candidates.append(g)
            frontier = fresh
        groups = {}
        for i, key in enumerate(keys):
            groups.setdefault(uf.find(i), []).append(key)
        clusters = tuple(tuple(group) for _, group in sorted(groups.items()))

    pair_count = {}
    for curve in curves.values():
        if curve.squarefree_key is not None:
            pair_count[curve.squarefree_key] = pair_count.get(curve.squarefree_key, 0) + 1
    popularity = {}
    for candidate in candidates:
        popularity[candidate] = sum(n for key, n in pair_count.items() if divides(candidate, key))
    popular = tuple(sorted((c for c, n in popularity.items() if n >= threshold),
                           key=lambda c: (c.total_degree(), str(c))))

    certificates = {}
    for a in A:
        for a2 in A:
            if a == a2:
                continue
            pair = (a, a2)
            if pair in collapsed:
                certificates[pair] = SafetyCertificate(pair, True, excluded="collapsed")
                continue
            curve = curves[pair]
            if curve.degenerate:
                witness = popular[0] if popular else None
                certificates[pair] = SafetyCertificate(
                    pair, witness is None, witness, popularity.get(witness, 0), excluded="degenerate")
                continue
            witness = None
            if curve.squarefree_key is not None:
                witness = next((c for c in popular if divides(c, curve.squarefree_key)), None)
            excluded = "empty" if curve.empty else None
            certificates[pair] = SafetyCertificate(
                pair, witness is None, witness, popularity[witness] if witness is not None else 0, excluded)
    logger.info("classify_pairs axis=%s: %d pairs, %d keys, %d popular, %d dangerous",
                axis, len(certificates), len(keys), len(popular),
                sum(1 for c in certificates.values() if not c.safe))
    return Classification(axis, threshold, certificates, curves, popular, clusters)


def forbid_from_certificates(classification: Classification, A: IndexedSet) -> ForbidMap:
    """Forbid(a) = {a' : (a, a') dangerous}, with capacity max |Forbid(a)| + 1."""
    forbidden = {a: set() for a in A}
    for (a, a2), cert in classification.certificates.items():
        if not cert.safe:
            forbidden[a].add(a2)
    capacity = max((len(s) for s in forbidden.values()), default=0) + 1
    return ForbidMap({a: s for a, s in forbidden.items() if s}, capacity)


@dataclass(frozen=True)
class IncidencePoint:
    pair: tuple
    gap: int


@dataclass(frozen=True)
class IncidenceCurve:
    curve: DualCurve
    gap: int


@dataclass(frozen=True)
class IncidenceSystem:
    points: tuple
    curves: tuple
    K: Fraction
    radius_a: Fraction
    radius_b: Fraction
    incidence_count: int
    excluded_curves: int = 0

    @property
    def point_pairs(self) -> set:
        return {p.pair for p in self.points}

    @property
    def curve_pairs(self) -> set:
        return {c.curve.pair for c in self.curves}


def _admissible_pairs(S: IndexedSet, forbid: ForbidMap, radius: Fraction, classification: Optional[Classification]):
    for i, a in enumerate(S):
        for j, a2 in enumerate(S):
            if i == j or abs(i - j) > radius or not forbid.allows(a, a2):
                continue
            if classification is not None and not classification.certificate(a, a2).safe:
                continue
            yield (a, a2), abs(i - j)


def _brute_force_incidences(points, curves) -> int:
    return sum(1 for c in curves for p in points if c.curve.contains(p.pair))


def build_incidence_system(f: MultivariatePolynomial, A: IndexedSet, B: IndexedSet, C: IndexedSet,
                           grid: GridIntersection, K, forbid_a: ForbidMap, forbid_b: ForbidMap,
                           classification_a: Optional[Classification] = None,
                           classification_b: Optional[Classification] = None) -> IncidenceSystem:
    """Gamma and P: safe, forbid-avoiding pairs within index radius K|.||C|/|G|."""
    require_nonempty(grid)
    K = as_rational(K)
    if K <= 0:
        raise PreconditionError(f"K must be positive, got {K}")
    total = len(grid)
    radius_a = K * len(A) * len(C) / total
    radius_b = K * len(B) * len(C) / total
    cache = classification_a.curves if classification_a is not None else {}

    curves, excluded = [], 0
    for pair, gap in _admissible_pairs(A, forbid_a, radius_a, classification_a):
        curve = cache.get(pair)
        if curve is None:
            try:
                curve = dual_curve(f, pair[0], pair[1], "x")
            except (ZDegreeCollapseError, ZeroPolynomialError):
                excluded += 1
                continue
        if curve.degenerate:
            excluded += 1
            continue
        curves.append(IncidenceCurve(curve, gap))
    points = [IncidencePoint(pair, gap) for pair, gap in _admissible_pairs(B, forbid_b, radius_b, classification_b)]

    gamma_ceiling = 2 * K * len(A) ** 2 * len(C) / total + len(A)
    point_ceiling = 2 * K * len(B) ** 2 * len(C) / total + len(B)
    if len(curves) > gamma_ceiling:
        raise InvariantViolation(f"|Gamma| = {len(curves)} exceeds 2K|A|^2|C|/|G| + |A| = {gamma_ceiling}")
    if len(points) > point_ceiling:
        raise InvariantViolation(f"|P| = {len(points)} exceeds 2K|B|^2|C|/|G| + |B| = {point_ceiling}")
    count = _brute_force_incidences(points, curves)
    return IncidenceSystem(tuple(points), tuple(curves), K, radius_a, radius_b, count, excluded)


@dataclass(frozen=True)
class IncidenceCount:
    count: int
    st_shape: float
    ratio: float


def szemeredi_trotter_shape(points: int, curves: int) -> float:
    return points ** (2 / 3) * curves ** (2 / 3) + points + curves


def count_incidences(system: IncidenceSystem) -> IncidenceCount:
    count = _brute_force_incidences(system.points, system.curves)
    shape = szemeredi_trotter_shape(len(system.points), len(system.curves))
    return IncidenceCount(count, shape, count / shape if shape else 0.0)


def count_incidences_by_roots(system: IncidenceSystem) -> int:
    """Second counter: per curve and first coordinate b, isolate the roots in the second coordinate."""
    by_first = {}
    for point in system.points:
        by_first.setdefault(point.pair[0], set()).add(point.pair[1])
    total = 0
    for entry in system.curves:
        defining = entry.curve.defining
        first, second = defining.variables
        for b, partners in by_first.items():
            line = defining.substitute(first, b)
            if line.is_zero:
                total += len(partners)
                continue
            if line.is_constant:
                continue
            roots = {iv.exact_hit for iv in sturm_isolate(line) if iv.exact_hit is not None}
            total += len(partners & roots)
    return total


@dataclass(frozen=True)
class NecessityReport:
    checked: int
    collapsed: int


def check_resultant_necessity(f: MultivariatePolynomial, grid: GridIntersection, cache: Optional[dict] = None) -> NecessityReport:
    """Every same-fiber pair (a, b, c), (a', b', c) puts (b, b') on the dual curve of (a, a')."""
    cache = {} if cache is None else dict(cache)
    checked = collapsed = 0
    for k in range(len(grid.C)):
        fiber = grid.fiber(k)
        for a, b in fiber:
            for a2, b2 in fiber:
                pair = (a, a2)
                if pair not in cache:
                    try:
                        cache[pair] = dual_curve(f, a, a2, "x")
                    except (ZDegreeCollapseError, ZeroPolynomialError):
                        cache[pair] = None
                curve = cache[pair]
                if curve is None:
                    collapsed += 1
                    continue
                if not curve.contains((b, b2)):
                    raise InvariantViolation(f"({b}, {b2}) is off the dual curve of ({a}, {a2}) at z = {grid.C[k]}")
                checked += 1
    return NecessityReport(checked, collapsed)


@dataclass(frozen=True)
class RoleOrder:
    surface: MultivariatePolynomial
    A: IndexedSet
    B: IndexedSet
    C: IndexedSet
    permutation: tuple

    @property
    def permuted(self) -> bool:
        return self.permutation != SURFACE_VARIABLES


def order_roles(f: MultivariatePolynomial, A: IndexedSet, B: IndexedSet, C: IndexedSet) -> RoleOrder:
    """Permute coordinates so that |A| <= |B| <= |C|.

    ``permutation[i]`` names the user coordinate now playing role x, y, z.
    """
    sets = dict(zip(SURFACE_VARIABLES, (A, B, C)))
    order = tuple(sorted(SURFACE_VARIABLES, key=lambda v: (len(sets[v]), SURFACE_VARIABLES.index(v))))
    if order == SURFACE_VARIABLES:
        return RoleOrder(f, A, B, C, order)
    mapping = {old: new for new, old in zip(SURFACE_VARIABLES, order)}
    renamed = f.rename(mapping).with_variables(SURFACE_VARIABLES)
    return RoleOrder(renamed, sets[order[0]], sets[order[1]], sets[order[2]], order)


def h_minus_z_part(f: MultivariatePolynomial) -> Optional[MultivariatePolynomial]:
    """h(x, y) when f = lambda * (h(x, y) - z) for a nonzero constant lambda, else None."""
    if f.degree("z") != 1:
        return None
    slope = f.coefficient_of("z", 1)
    if not slope.is_constant:
        return None
    lam = -slope.constant_value
    rest = f.coefficient_of("z", 0)
    return (rest * (1 / lam)).substitute("z", 0)


@dataclass
class ChainReport:
    G: int = 0
    tuples: int = 0
    safe_tuples: int = 0
    P: int = 0
    Gamma: int = 0
    I: int = 0
    I_by_roots: Optional[int] = None
    st_shape: float = 0.0
    st_ratio: float = 0.0
    fitted_C: float = 0.0
    chain_shape: float = 0.0
    c_dec: int = 1
    K: Fraction = Fraction(0)
    S: int = 1
    sizes: tuple = (0, 0, 0)
    heavy_fibers: int = 0
    guarantee: Fraction = Fraction(0)
    excluded_curves: int = 0
    necessity_checked: int = 0
    permutation: tuple = SURFACE_VARIABLES
    warnings: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)


def grid_bound_shape(a: int, b: int, c: int) -> float:
    """(|A||B||C|)^{4/7} + |B||C|^{1/2}."""
    return (a * b * c) ** (4 / 7) + b * c ** 0.5


class _Stage:
    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        logger.info("chain stage %s", self.name)
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and isinstance(exc, LabError) and not isinstance(exc, StageError):
            raise StageError(self.name, exc) from exc
        return False


def verify_chain(f: MultivariatePolynomial, A: IndexedSet, B: IndexedSet, C: IndexedSet,
                 S: Optional[int] = None, K=None, inject_violation: bool = False,
                 second_counter: bool = True) -> ChainReport:
    """Run grid, certificates, forbid sets, tuples and incidences; assert what is exact.

    The one asserted chain inequality is: distinct ((a, a'), (b, b')) among the
    extracted tuples with (a, a') in Gamma and (b, b') in P never exceed I(P, Gamma).
    """
    report = ChainReport()
    with _Stage("roles"):
        missing = is_cylinder(f)
        if missing is not None:
            raise CylinderError(f"{f} does not depend on {missing}; cylinders over a curve are refused")
        roles = order_roles(f, A, B, C)
        if roles.permuted:
            message = f"coordinates permuted to {roles.permutation} so that |A| <= |B| <= |C|"
            logger.warning(message)
            report.warnings.append(message)
        f, A, B, C = roles.surface, roles.A, roles.B, roles.C
        report.permutation = roles.permutation
        report.sizes = (len(A), len(B), len(C))
        h = h_minus_z_part(f)
        if h is not None and separability_test(h).special:
            message = f"{h} - z has a special-candidate form; expect |G| beyond the theorem shape"
            logger.warning(message)
            report.warnings.append(message)

    with _Stage("grid"):
        grid = intersect_grid(f, A, B, C)
        report.G = len(grid)
    if not len(grid):
        report.checks["trivial"] = True
        return report

    with _Stage("certificates"):
        classification_a = classify_pairs(f, A, "x") if len(A) >= 2 else None
        classification_b = classify_pairs(f, B, "y") if len(B) >= 2 else None
    with _Stage("forbid"):
        forbid_a = forbid_from_certificates(classification_a, A) if classification_a else ForbidMap.empty()
        forbid_b = forbid_from_certificates(classification_b, B) if classification_b else ForbidMap.empty()
        if S is None:
            S = default_capacity(forbid_a, forbid_b)
    with _Stage("tuples"):
        extraction = extract_proximate_tuples(f, A, B, C, S, forbid_a, forbid_b, grid)
        report.tuples = len(extraction.tuples)
        report.c_dec = extraction.c_dec
        report.S = S
        report.heavy_fibers = len(extraction.heavy.indices)
        report.guarantee = extraction.guarantee
        report.checks["heavy_retention"] = True
        report.checks["tuple_ledger"] = True
    with _Stage("incidence"):
        K = as_rational(K) if K is not None else Fraction(extraction.gap_constant)
        report.K = K
        system = build_incidence_system(f, A, B, C, grid, K, forbid_a, forbid_b, classification_a, classification_b)
        counted = count_incidences(system)
        report.P, report.Gamma, report.I = len(system.points), len(system.curves), counted.count
        report.excluded_curves = system.excluded_curves
        report.st_shape, report.st_ratio = counted.st_shape, counted.ratio
        report.checks["ceilings"] = True
        if second_counter:
            report.I_by_roots = count_incidences_by_roots(system)
            if report.I_by_roots != counted.count:
                raise InvariantViolation(f"incidence counters disagree: {counted.count} vs {report.I_by_roots}")
            report.checks["incidence_counters_agree"] = True
    with _Stage("necessity"):
        cache = dict(classification_a.curves) if classification_a else {}
        necessity = check_resultant_necessity(f, grid, cache)
        report.necessity_checked = necessity.checked
        report.checks["resultant_necessity"] = True
    with _Stage("assert"):
        gamma_pairs = system.curve_pairs
        point_pairs = system.point_pairs
        curves_by_pair = {c.curve.pair: c.curve for c in system.curves}
        safe = {((t.a, t.a2), (t.b, t.b2)) for t in extraction.tuples
                if (t.a, t.a2) in gamma_pairs and (t.b, t.b2) in point_pairs}
        for (pair, point) in safe:
            if not curves_by_pair[pair].contains(point):
                raise InvariantViolation(f"safe tuple {pair}, {point} contributes no incidence")
        report.safe_tuples = len(safe)
        if inject_violation:
            raise InvariantViolation("injected violation: safe tuple count forced above the incidence count")
        if report.safe_tuples > report.I:
            raise InvariantViolation(f"{report.safe_tuples} safe tuples exceed I(P, Gamma) = {report.I}")
        report.checks["tuples_le_incidences"] = True

    a, b, c = report.sizes
    report.fitted_C = report.G / grid_bound_shape(a, b, c)
    report.chain_shape = (a * b * c / report.G) ** (4 / 3) + b * b * c / report.G
    logger.info("chain: |G|=%d tuples=%d safe=%d |P|=%d |Gamma|=%d I=%d",
                report.G, report.tuples, report.safe_tuples, report.P, report.Gamma, report.I)
    return report
