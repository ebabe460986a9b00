"""Monotone decomposition of plane algebraic curves.

The x-axis is cut at the real roots of

* Res_y(g, g_y)          vertical tangents and crossings,
* Res_y(k, k_x)          horizontal tangents, k = g without its horizontal lines,
* the leading y-coefficient of g,
* the content of g in y  vertical line components.

Between consecutive cuts every real branch of g = 0 is the graph of a strictly
monotone or constant function of x. Branches inside a cell are numbered by the
count of real roots of g(x0, .) strictly below the point, so assignment never
leaves exact arithmetic.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from .algebra import (
    IsolatingInterval,
    MultivariatePolynomial,
    SturmSequence,
    as_rational,
    bivariate_gcd,
    content_in,
    exact_divide,
    resultant,
    squarefree_part,
)
from .errors import (
    ArityError,
    DegenerateCurveError,
    InvariantViolation,
    OffCurveError,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)


class CriticalSource(str, Enum):
    VERTICAL_TANGENT = "vertical_tangent"
    HORIZONTAL_TANGENT = "horizontal_tangent"
    LEADING_COEFFICIENT = "leading_coefficient"
    VERTICAL_LINE = "vertical_line"


class Direction(str, Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"
    VERTICAL = "vertical"


@dataclass(frozen=True)
class CriticalValue:
    interval: IsolatingInterval
    sources: tuple


@dataclass(frozen=True)
class CriticalValueSet:
    """Sorted, disjoint isolating intervals of the distinguished x-values."""

    source: MultivariatePolynomial
    curve: Optional[MultivariatePolynomial]
    vertical_lines: MultivariatePolynomial
    values: tuple
    eliminant: Optional[SturmSequence] = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.values)

    def is_critical(self, x0) -> bool:
        return self.eliminant is not None and self.eliminant.is_root(as_rational(x0))

    def cell_index(self, x0) -> int:
        """Number of critical values strictly below x0."""
        if self.eliminant is None:
            return 0
        return self.eliminant.count_below(as_rational(x0))

    def on_vertical_line(self, x0) -> bool:
        return not self.vertical_lines.is_constant and self.vertical_lines.evaluate((as_rational(x0),)) == 0

    def fiber(self, x0) -> MultivariatePolynomial:
        return self.curve.substitute(self.curve.variables[0], as_rational(x0))

    def branch_count(self, x0) -> int:
        """Distinct real roots of g(x0, .); constant across a non-critical cell."""
        return SturmSequence(self.fiber(x0)).count_all()

    def branch_index(self, x0, y0) -> int:
        return SturmSequence(self.fiber(x0)).count_below(as_rational(y0))

    @property
    def sources(self) -> list:
        return [value.sources for value in self.values]


@dataclass(frozen=True, order=True)
class PieceKey:
    cell: int
    branch: int
    vertical: bool = False

    def label(self) -> str:
        if self.vertical:
            return f"vertical@{self.cell}"
        return f"cell{self.cell}/branch{self.branch}"


@dataclass(frozen=True)
class PieceAssignment:
    pieces: dict
    directions: dict
    residual: tuple = ()

    @property
    def piece_count(self) -> int:
        return len(self.pieces)

    def assigned(self) -> int:
        return sum(len(points) for points in self.pieces.values())


@dataclass(frozen=True)
class MonotonicityAudit:
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


def _check_curve(g: MultivariatePolynomial):
    if g.nvars != 2:
        raise ArityError(f"a plane curve needs two variables, got {g.variables}")
    if g.is_zero:
        raise ZeroPolynomialError("the curve polynomial is zero")


def _critical_values(g: MultivariatePolynomial, allow_vertical_only: bool) -> CriticalValueSet:
    _check_curve(g)
    xv, yv = g.variables
    content = content_in(g, yv)
    primitive = exact_divide(g, content.with_variables(g.variables))
    generators = []
    if content.degree(xv) > 0:
        generators.append((CriticalSource.VERTICAL_LINE, content))

    curve = None
    if primitive.degree(yv) > 0:
        curve = squarefree_part(primitive, yv)
        generators.append((CriticalSource.VERTICAL_TANGENT, resultant(curve, curve.derivative(yv), yv)))
        curve_x = curve.derivative(xv)
        if curve_x:
            slanted = exact_divide(curve, bivariate_gcd(curve, curve_x))
            if slanted.degree(yv) > 0:
                generators.append((CriticalSource.HORIZONTAL_TANGENT,
                                   resultant(slanted, slanted.derivative(xv), yv)))
        leading = curve.coefficients_in(yv)[-1]
        generators.append((CriticalSource.LEADING_COEFFICIENT, leading))
    elif not allow_vertical_only:
        vertical = SturmSequence(content).isolate() if content.degree(xv) > 0 else []
        raise DegenerateCurveError(f"{g} does not depend on {yv} after content removal", vertical_lines=vertical)

    active = []
    for source, generator in generators:
        if generator.is_zero:
            raise InvariantViolation(f"{source.value} generator vanished identically for {g}")
        if generator.degree(xv) > 0:
            active.append((source, generator, SturmSequence(generator)))

    if not active:
        return CriticalValueSet(g, curve, content, ())

    product = MultivariatePolynomial.constant(1, (xv,))
    for _, _, sequence in active:
        product = product * MultivariatePolynomial((xv,), {(k,): c for k, c in enumerate(sequence.squarefree) if c})
    eliminant = SturmSequence(product)
    values = []
    for interval in eliminant.isolate():
        tags = []
        for source, generator, sequence in active:
            if interval.exact_hit is not None:
                hit = sequence.is_root(interval.exact_hit)
            else:
                hit = sequence.count(interval.lower, interval.upper) > 0
            if hit:
                tags.append(source)
        values.append(CriticalValue(interval, tuple(tags)))
    logger.debug("critical x-values of %s: %d", g, len(values))
    return CriticalValueSet(g, curve, content, tuple(values), eliminant)


def critical_x_values(g: MultivariatePolynomial) -> CriticalValueSet:
    return _critical_values(g, allow_vertical_only=False)


def _direction(points: list) -> Direction:
    first, last = points[0][1], points[-1][1]
    if last > first:
        return Direction.INCREASING
    if last < first:
        return Direction.DECREASING
    return Direction.CONSTANT


def assign_branches(g: MultivariatePolynomial, crit: CriticalValueSet, points: Iterable) -> PieceAssignment:
    """Assign curve points to (cell, branch) pieces; critical columns go to the residual set."""
    buckets = defaultdict(list)
    residual = []
    for x0, y0 in points:
        x0, y0 = as_rational(x0), as_rational(y0)
        if g.evaluate((x0, y0)) != 0:
            raise OffCurveError(f"({x0}, {y0}) is not on {g}")
        if crit.on_vertical_line(x0):
            buckets[PieceKey(crit.cell_index(x0), 0, True)].append((x0, y0))
        elif crit.is_critical(x0):
            residual.append((x0, y0))
        else:
            buckets[PieceKey(crit.cell_index(x0), crit.branch_index(x0, y0))].append((x0, y0))

    pieces, directions = {}, {}
    for key in sorted(buckets):
        members = sorted(set(buckets[key]), key=lambda p: (p[1], p[0]) if key.vertical else p)
        pieces[key] = members
        directions[key] = Direction.VERTICAL if key.vertical else _direction(members)
    return PieceAssignment(pieces, directions, tuple(sorted(residual)))


def monotonicity_audit(assignment: PieceAssignment) -> MonotonicityAudit:
    violations = []
    for key, members in assignment.pieces.items():
        direction = assignment.directions.get(key)
        if direction is Direction.VERTICAL:
            ok = all(p[0] == members[0][0] for p in members) and all(
                p[1] < q[1] for p, q in zip(members, members[1:]))
        else:
            ordered = sorted(members)
            xs = [p[0] for p in ordered]
            ys = [p[1] for p in ordered]
            ok = ordered == list(members) and all(a < b for a, b in zip(xs, xs[1:]))
            if direction is Direction.INCREASING:
                ok = ok and all(a <= b for a, b in zip(ys, ys[1:]))
            elif direction is Direction.DECREASING:
                ok = ok and all(a >= b for a, b in zip(ys, ys[1:]))
            elif direction is Direction.CONSTANT:
                ok = ok and all(y == ys[0] for y in ys)
            else:
                ok = False
        if not ok:
            violations.append(key)
    return MonotonicityAudit(not violations, tuple(violations))


@dataclass(frozen=True)
class CurveDecomposition:
    critical: CriticalValueSet
    assignment: PieceAssignment

    @property
    def c_dec(self) -> int:
        return max(1, self.assignment.piece_count)

    @property
    def benchmark(self) -> int:
        """The 2 deg^2 piece count a Harnack-type argument achieves."""
        return 2 * self.critical.source.total_degree() ** 2


def decompose(g: MultivariatePolynomial, points: Iterable) -> CurveDecomposition:
    """Critical values plus branch assignment; pure vertical-line curves are accepted."""
    if g.is_constant:
        raise DegenerateCurveError(f"{g} depends on neither variable")
    crit = _critical_values(g, allow_vertical_only=True)
    assignment = assign_branches(g, crit, points)
    audit = monotonicity_audit(assignment)
    if not audit:
        raise InvariantViolation(f"non-monotone pieces {[k.label() for k in audit.violations]} on {g}")
    return CurveDecomposition(crit, assignment)
