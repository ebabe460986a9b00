"""Proximate quadruples and 5-tuples.

The monotone scan walks the points of one monotone piece in x-order, looks at
anchors i = S*j and windows (i, i+S], discards windows with a big index skip
and otherwise pairs the anchor with the first window point allowed by both
forbid maps. Curves are handled piecewise through the monotone decomposition
and surfaces fiber by fiber over the heavy z-slices.

Every extractor asserts its guarantee with the constants it actually used;
a failed guarantee raises InvariantViolation.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .algebra import MultivariatePolynomial, as_rational
from .errors import (
    CylinderError,
    DegenerateCurveError,
    ForbidCapacityError,
    InvariantViolation,
    PreconditionError,
    UnfillableWindowError,
    UnsortedInputError,
)
from .grid import GridIntersection, IndexedSet, intersect_grid, is_cylinder, require_nonempty
from .monotone import decompose

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ForbidMap:
    """Per-element forbidden sets; every set is smaller than ``capacity``."""

    per_element: Mapping = field(default_factory=dict)
    capacity: int = 1

    def __post_init__(self):
        if self.capacity < 1:
            raise ForbidCapacityError(f"forbid capacity must be at least 1, got {self.capacity}")
        frozen = {as_rational(k): frozenset(as_rational(v) for v in vs) for k, vs in self.per_element.items()}
        object.__setattr__(self, "per_element", frozen)
        if self.max_size >= self.capacity:
            raise ForbidCapacityError(f"forbidden set of size {self.max_size} does not fit capacity {self.capacity}")

    @classmethod
    def empty(cls, capacity: int = 1) -> "ForbidMap":
        return cls({}, capacity)

    def forbidden(self, element) -> frozenset:
        return self.per_element.get(as_rational(element), frozenset())

    def allows(self, element, other) -> bool:
        return as_rational(other) not in self.forbidden(element)

    @property
    def max_size(self) -> int:
        return max((len(s) for s in self.per_element.values()), default=0)

    def with_capacity(self, capacity: int) -> "ForbidMap":
        return ForbidMap(self.per_element, capacity)


def default_capacity(forbid_a: ForbidMap, forbid_b: ForbidMap) -> int:
    """Smallest S for which S points with distinct a- and b-values always contain a jointly allowed one."""
    return 1 + forbid_a.max_size + forbid_b.max_size


@dataclass(frozen=True)
class ProximateQuadruple:
    a: Fraction
    a2: Fraction
    b: Fraction
    b2: Fraction
    gap_a: int
    gap_b: int

    def swapped(self) -> "ProximateQuadruple":
        return ProximateQuadruple(self.b, self.b2, self.a, self.a2, self.gap_b, self.gap_a)

    def lift(self, c: Fraction) -> "ProximateTuple5":
        return ProximateTuple5(self.a, self.a2, self.b, self.b2, c, self.gap_a, self.gap_b)


@dataclass(frozen=True)
class ProximateTuple5:
    a: Fraction
    a2: Fraction
    b: Fraction
    b2: Fraction
    c: Fraction
    gap_a: int
    gap_b: int


@dataclass(frozen=True)
class ScanResult:
    quadruples: tuple
    anchors: tuple
    size: int
    S: int
    radius_a: Fraction
    radius_b: Fraction
    x_skips: int = 0
    y_skips: int = 0
    truncated: int = 0

    @property
    def windows(self) -> int:
        return max(self.size // self.S, 0)

    @property
    def guarantee(self) -> Fraction:
        return Fraction(self.size, 2 * self.S) - 1

    @property
    def skip_floor(self) -> int:
        return self.size // self.S - 1 - self.x_skips - self.y_skips


def _monotone_sign(values: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:])) or all(a >= b for a, b in zip(values, values[1:]))


def _check_capacity(S: int, forbid_a: ForbidMap, forbid_b: ForbidMap):
    if S < 1:
        raise PreconditionError(f"S must be a positive integer, got {S}")
    for label, forbid in (("A", forbid_a), ("B", forbid_b)):
        if forbid.max_size >= S:
            raise ForbidCapacityError(f"forbidden sets on {label} reach size {forbid.max_size}, need < S = {S}")


def _allowed_partner(points: Sequence, i: int, S: int, forbid_a: ForbidMap, forbid_b: ForbidMap) -> int:
    """Smallest k in (i, i+S] whose point passes both forbid maps of the anchor."""
    a, b = points[i]
    not_a = forbid_a.forbidden(a)
    not_b = forbid_b.forbidden(b)
    for k in range(i + 1, i + S + 1):
        if points[k][0] not in not_a and points[k][1] not in not_b:
            return k
    window = tuple(points[i + 1:i + S + 1])
    raise UnfillableWindowError(
        f"no point of the window after anchor {i} at ({a}, {b}) avoids Forbid(a) = {sorted(not_a)} "
        f"and Forbid(b) = {sorted(not_b)}; window b-values {sorted({q[1] for q in window})}", i, window)


def extract_monotone_quadruples(points: Sequence, A: IndexedSet, B: IndexedSet, S: int,
                                forbid_a: ForbidMap, forbid_b: ForbidMap,
                                radius_a: Optional[Fraction] = None,
                                radius_b: Optional[Fraction] = None) -> ScanResult:
    """Scan one monotone piece.

    ``points`` must have strictly increasing A-index and weakly monotone
    B-index. The default skip radii are 4S|A|/|G| and 4S|B|/|G|; callers that
    scan several pieces of one curve pass shared radii instead, and then the
    piece-level |G|/(2S) - 1 floor is left to the caller.

    The partner of an anchor is a single window point, so (a', b') is on the
    piece. Windows whose b-values repeat can be emptied by Forbid(b); such a
    window raises UnfillableWindowError instead of lowering the floor.
    """
    _check_capacity(S, forbid_a, forbid_b)
    points = [(as_rational(a), as_rational(b)) for a, b in points]
    n = [A.index_of(a) for a, _ in points]
    m = [B.index_of(b) for _, b in points]
    if any(y <= x for x, y in zip(n, n[1:])):
        raise UnsortedInputError("piece points must have strictly increasing x-index")
    if not _monotone_sign(m):
        raise UnsortedInputError("piece points must have weakly monotone y-index")

    size = len(points)
    own_radii = radius_a is None and radius_b is None
    if size == 0:
        return ScanResult((), (), 0, S, Fraction(0), Fraction(0))
    if radius_a is None:
        radius_a = Fraction(4 * S * len(A), size)
    if radius_b is None:
        radius_b = Fraction(4 * S * len(B), size)

    quadruples, anchors = [], []
    x_skips = y_skips = truncated = 0
    for j in range(size // S):
        i = S * j
        if i + S >= size:
            truncated += 1
            continue
        big_x = n[i + S] - n[i] > radius_a
        big_y = abs(m[i + S] - m[i]) > radius_b
        x_skips += big_x
        y_skips += big_y
        if big_x or big_y:
            continue
        k = _allowed_partner(points, i, S, forbid_a, forbid_b)
        (a, b), (a2, b2) = points[i], points[k]
        quadruples.append(ProximateQuadruple(a, a2, b, b2, n[k] - n[i], abs(m[k] - m[i])))
        anchors.append(i)

    result = ScanResult(tuple(quadruples), tuple(anchors), size, S, radius_a, radius_b,
                        x_skips, y_skips, truncated)
    if len(quadruples) < result.skip_floor:
        raise InvariantViolation(f"scan emitted {len(quadruples)} < floor(|G|/S)-1-skips = {result.skip_floor}")
    if own_radii and len(quadruples) < result.guarantee:
        raise InvariantViolation(f"scan emitted {len(quadruples)} < |G|/(2S)-1 = {result.guarantee}")
    return result


@dataclass(frozen=True)
class CurveExtraction:
    quadruples: tuple
    size: int
    S: int
    c_dec: int
    residual: int
    radius_a: Fraction
    radius_b: Fraction
    pieces: int = 0
    scans: tuple = ()

    @property
    def guarantee(self) -> Fraction:
        if not self.size:
            return Fraction(0)
        return Fraction(self.size, 2 * self.S * self.c_dec) - self.c_dec - Fraction(self.residual, self.S)

    @property
    def gap_constant(self) -> int:
        return 4 * self.S * self.c_dec


def _swap(points):
    return [(b, a) for a, b in points]


def extract_curve_quadruples(g: MultivariatePolynomial, A: IndexedSet, B: IndexedSet, points: Iterable,
                             S: int, forbid_a: ForbidMap, forbid_b: ForbidMap) -> CurveExtraction:
    """Quadruples on a whole curve, piece by piece, with shared radii 4 S c_dec |A| / |G|."""
    _check_capacity(S, forbid_a, forbid_b)
    if g.is_constant:
        raise DegenerateCurveError(f"{g} depends on neither variable")
    points = sorted({(as_rational(a), as_rational(b)) for a, b in points})
    size = len(points)
    if size == 0:
        return CurveExtraction((), 0, S, 1, 0, Fraction(0), Fraction(0))
    decomposition = decompose(g, points)
    assignment = decomposition.assignment
    c_dec = decomposition.c_dec
    radius_a = Fraction(4 * S * c_dec * len(A), size)
    radius_b = Fraction(4 * S * c_dec * len(B), size)

    quadruples, scans = [], []
    for key, members in assignment.pieces.items():
        if key.vertical:
            scan = extract_monotone_quadruples(_swap(members), B, A, S, forbid_b, forbid_a, radius_b, radius_a)
            found = [q.swapped() for q in scan.quadruples]
        else:
            scan = extract_monotone_quadruples(members, A, B, S, forbid_a, forbid_b, radius_a, radius_b)
            found = list(scan.quadruples)
        quadruples.extend(found)
        scans.append(scan)

    result = CurveExtraction(tuple(quadruples), size, S, c_dec, len(assignment.residual), radius_a, radius_b,
                             assignment.piece_count, tuple(scans))
    if len(quadruples) < result.guarantee:
        raise InvariantViolation(f"curve extraction emitted {len(quadruples)} < ledger {result.guarantee} on {g}")
    for q in quadruples:
        if q.gap_a > radius_a or q.gap_b > radius_b:
            raise InvariantViolation(f"quadruple {q} exceeds gap radii ({radius_a}, {radius_b})")
    logger.debug("curve %s: %d points, %d pieces, %d quadruples", g, size, c_dec, len(quadruples))
    return result


@dataclass(frozen=True)
class HeavyFibers:
    indices: tuple
    threshold: Fraction
    retained: int
    total: int

    def values(self, C: IndexedSet) -> list:
        return [C[k] for k in self.indices]


def heavy_fibers(grid: GridIntersection) -> HeavyFibers:
    """Slices z = c carrying at least |G| / (2|C|) points; they keep at least half of G."""
    require_nonempty(grid)
    total = len(grid)
    threshold = Fraction(total, 2 * len(grid.C))
    indices = tuple(k for k, count in enumerate(grid.fiber_counts) if count >= threshold)
    retained = sum(grid.fiber_counts[k] for k in indices)
    if 2 * retained < total:
        raise InvariantViolation(f"heavy fibers retain {retained} < |G|/2 = {Fraction(total, 2)}")
    return HeavyFibers(indices, threshold, retained, total)


@dataclass(frozen=True)
class TupleExtraction:
    tuples: tuple
    grid: GridIntersection
    heavy: HeavyFibers
    S: int
    c_dec: int
    residual: int
    per_fiber: tuple = ()

    @property
    def guarantee(self) -> Fraction:
        total = len(self.grid)
        return (Fraction(total, 4 * self.S * self.c_dec) - len(self.grid.C) * self.c_dec
                - Fraction(self.residual, self.S))

    @property
    def gap_constant(self) -> int:
        return 8 * self.S * self.c_dec

    @property
    def radius_a(self) -> Fraction:
        return Fraction(self.gap_constant * len(self.grid.A) * len(self.grid.C), len(self.grid))

    @property
    def radius_b(self) -> Fraction:
        return Fraction(self.gap_constant * len(self.grid.B) * len(self.grid.C), len(self.grid))


def extract_proximate_tuples(f: MultivariatePolynomial, A: IndexedSet, B: IndexedSet, C: IndexedSet,
                             S: Optional[int] = None, forbid_a: Optional[ForbidMap] = None,
                             forbid_b: Optional[ForbidMap] = None,
                             grid: Optional[GridIntersection] = None) -> TupleExtraction:
    missing = is_cylinder(f)
    if missing is not None:
        raise CylinderError(f"{f} does not depend on {missing}; cylinders over a curve are refused")
    forbid_a = forbid_a or ForbidMap.empty()
    forbid_b = forbid_b or ForbidMap.empty()
    if S is None:
        S = default_capacity(forbid_a, forbid_b)
    _check_capacity(S, forbid_a, forbid_b)
    if grid is None:
        grid = intersect_grid(f, A, B, C)
    heavy = heavy_fibers(grid)

    tuples, per_fiber = [], []
    c_dec = 1
    residual = 0
    for k in heavy.indices:
        c = C[k]
        g = f.substitute("z", c)
        if g.is_zero:
            raise CylinderError(f"{f} contains the plane z = {c}")
        extraction = extract_curve_quadruples(g, A, B, grid.fiber(k), S, forbid_a, forbid_b)
        tuples.extend(q.lift(c) for q in extraction.quadruples)
        per_fiber.append((c, extraction))
        c_dec = max(c_dec, extraction.c_dec)
        residual += extraction.residual

    result = TupleExtraction(tuple(tuples), grid, heavy, S, c_dec, residual, tuple(per_fiber))
    if len(tuples) < result.guarantee:
        raise InvariantViolation(f"extracted {len(tuples)} tuples < ledger {result.guarantee}")
    for t in tuples:
        if t.gap_a > result.radius_a or t.gap_b > result.radius_b:
            raise InvariantViolation(f"tuple {t} exceeds gap radii ({result.radius_a}, {result.radius_b})")
    logger.info("tuples: |G|=%d heavy=%d c_dec=%d extracted=%d", len(grid), len(heavy.indices), c_dec, len(tuples))
    return result
