"""Exact rational polynomial arithmetic.

Polynomials in up to three named variables with ``Fraction`` coefficients,
Sylvester resultants by fraction-free (Bareiss) elimination, bivariate gcd via
primitive polynomial remainder sequences, squarefree parts, and Sturm-sequence
real root isolation. Nothing in here touches floating point.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import floor, gcd, lcm
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import (
    ArityError,
    UnknownVariableError,
    ZDegreeCollapseError,
    ZeroPolynomialError,
)

logger = logging.getLogger(__name__)

ExactRational = Fraction
Scalar = Union[int, Fraction]
Monomial = tuple

MAX_VARIABLES = 3


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _grlex_key(item):
    exps = item[0]
    return (sum(exps), exps)


class MultivariatePolynomial:
    """Immutable polynomial over Q in an ordered tuple of named variables.

    ``terms`` maps exponent tuples (aligned with ``variables``) to nonzero
    Fractions; the zero polynomial has no terms. Arithmetic between two
    polynomials requires identical variable tuples; use ``with_variables`` to
    embed one into a larger variable set first.
    """

    def __init__(self, variables: Sequence[str], terms: Union[Mapping, Iterable] = ()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ArityError(f"repeated variable in {variables}")
        if len(variables) > MAX_VARIABLES:
            raise ArityError(f"at most {MAX_VARIABLES} variables are supported, got {len(variables)}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exps, coef in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(variables):
                raise ArityError(f"exponent tuple {exps} does not match variables {variables}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            value = clean.get(exps, Fraction(0)) + as_rational(coef)
            if value:
                clean[exps] = value
            else:
                clean.pop(exps, None)
        self.variables = variables
        self._terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value, variables: Sequence[str] = ()) -> "MultivariatePolynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, name: str, variables: Sequence[str]) -> "MultivariatePolynomial":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariableError(f"unknown variable {name!r}; declared {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], coef=1) -> "MultivariatePolynomial":
        return cls(tuple(variables), {tuple(exps): coef})

    @classmethod
    def lift(cls, coefficients: Sequence["MultivariatePolynomial"], variable: str,
             variables: Sequence[str]) -> "MultivariatePolynomial":
        """Inverse of ``coefficients_in``: sum of coefficients[k] * variable**k."""
        variables = tuple(variables)
        pos = variables.index(variable)
        terms = {}
        for power, coef in enumerate(coefficients):
            for exps, c in coef._terms.items():
                full = exps[:pos] + (power,) + exps[pos:]
                terms[full] = terms.get(full, Fraction(0)) + c
        return cls(variables, terms)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self._terms)

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def __bool__(self):
        return bool(self._terms)

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {name!r}; declared {self.variables}") from None

    def total_degree(self) -> int:
        """Total degree; the zero polynomial reports 0."""
        return max((sum(exps) for exps in self._terms), default=0)

    def degree(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self._index(name)
        return max((exps[i] for exps in self._terms), default=-1)

    def depends_on(self, name: str) -> bool:
        return self.degree(name) > 0

    def used_variables(self) -> tuple:
        return tuple(v for i, v in enumerate(self.variables) if any(exps[i] for exps in self._terms))

    def leading_term(self):
        """(exponents, coefficient) of the graded-lexicographic leading term."""
        if not self._terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        return max(self._terms.items(), key=_grlex_key)

    def coefficients_in(self, name: str) -> list:
        """Dense coefficient list (low to high) in ``name``, entries over the other variables."""
        i = self._index(name)
        others = self.variables[:i] + self.variables[i + 1:]
        buckets = {}
        for exps, c in self._terms.items():
            rest = exps[:i] + exps[i + 1:]
            buckets.setdefault(exps[i], {})[rest] = c
        if not buckets:
            return []
        return [MultivariatePolynomial(others, buckets.get(k, {})) for k in range(max(buckets) + 1)]

    def coefficient_of(self, name: str, power: int) -> "MultivariatePolynomial":
        """Coefficient of name**power, kept over the full variable tuple."""
        i = self._index(name)
        return MultivariatePolynomial(
            self.variables,
            {exps[:i] + (0,) + exps[i + 1:]: c for exps, c in self._terms.items() if exps[i] == power},
        )

    # -- equality -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultivariatePolynomial):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant and self.constant_value == other
        return NotImplemented

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash((self.variables, frozenset(self._terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "MultivariatePolynomial":
        if isinstance(other, MultivariatePolynomial):
            if other.variables != self.variables:
                raise ArityError(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultivariatePolynomial.constant(as_rational(other), self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for exps, c in other._terms.items():
            terms[exps] = terms.get(exps, Fraction(0)) + c
        return MultivariatePolynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultivariatePolynomial(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultivariatePolynomial):
            factor = as_rational(other)
            return MultivariatePolynomial(self.variables, {e: c * factor for e, c in self._terms.items()})
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return MultivariatePolynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultivariatePolynomial.constant(1, self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- evaluation and substitution ------------------------------------------

    @cached_property
    def _integer_terms(self):
        den = lcm(*(c.denominator for c in self._terms.values()))
        return den, [(int(c * den), exps) for exps, c in self._terms.items()]

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ArityError(f"expected {self.nvars} coordinates, got {len(point)}")
        values = [as_rational(v) for v in point]
        if all(v.denominator == 1 for v in values):
            ints = [v.numerator for v in values]
            den, terms = self._integer_terms
            total = 0
            for coef, exps in terms:
                for x, e in zip(ints, exps):
                    if e:
                        coef *= x ** e
                total += coef
            return Fraction(total, den)
        total = Fraction(0)
        for exps, coef in self._terms.items():
            for x, e in zip(values, exps):
                if e:
                    coef *= x ** e
            total += coef
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    def substitute(self, name: str, value) -> "MultivariatePolynomial":
        """Fix one variable to a rational; the remaining variable order is kept."""
        i = self._index(name)
        value = as_rational(value)
        others = self.variables[:i] + self.variables[i + 1:]
        terms = {}
        for exps, c in self._terms.items():
            rest = exps[:i] + exps[i + 1:]
            terms[rest] = terms.get(rest, Fraction(0)) + c * value ** exps[i]
        return MultivariatePolynomial(others, terms)

    def substitute_many(self, values: Mapping[str, object]) -> "MultivariatePolynomial":
        result = self
        for name, value in values.items():
            result = result.substitute(name, value)
        return result

    def compose(self, substitutions: Mapping[str, "MultivariatePolynomial"],
                variables: Sequence[str]) -> "MultivariatePolynomial":
        """Replace every variable by a polynomial over ``variables``."""
        variables = tuple(variables)
        images = []
        for name in self.variables:
            if name not in substitutions:
                raise UnknownVariableError(f"no substitution given for {name!r}")
            image = substitutions[name]
            if not isinstance(image, MultivariatePolynomial):
                image = MultivariatePolynomial.constant(image, variables)
            images.append(image.with_variables(variables))
        powers = [{0: MultivariatePolynomial.constant(1, variables)} for _ in images]
        result = MultivariatePolynomial(variables)
        for exps, c in self._terms.items():
            term = MultivariatePolynomial.constant(c, variables)
            for k, e in enumerate(exps):
                if e not in powers[k]:
                    powers[k][e] = images[k] ** e
                term = term * powers[k][e]
            result = result + term
        return result

    def derivative(self, name: str) -> "MultivariatePolynomial":
        i = self._index(name)
        terms = {}
        for exps, c in self._terms.items():
            if exps[i]:
                lowered = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
                terms[lowered] = c * exps[i]
        return MultivariatePolynomial(self.variables, terms)

    def rename(self, mapping: Mapping[str, str]) -> "MultivariatePolynomial":
        return MultivariatePolynomial(tuple(mapping.get(v, v) for v in self.variables), self._terms)

    def with_variables(self, variables: Sequence[str]) -> "MultivariatePolynomial":
        """Re-express over another variable tuple containing every used variable."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        terms = {}
        for exps, c in self._terms.items():
            target = [0] * len(variables)
            for name, e in zip(self.variables, exps):
                if e:
                    if name not in pos:
                        raise ArityError(f"{name!r} is used but absent from {variables}")
                    target[pos[name]] = e
            terms[tuple(target)] = c
        return MultivariatePolynomial(variables, terms)

    def normalized(self) -> "MultivariatePolynomial":
        """Primitive integer form with a positive graded-lex leading coefficient."""
        if not self._terms:
            return self
        den = lcm(*(c.denominator for c in self._terms.values()))
        content = 0
        for c in self._terms.values():
            content = gcd(content, int(c * den))
        scale = Fraction(den, content)
        if self.leading_term()[1] < 0:
            scale = -scale
        return self * scale

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exps, coef in sorted(self._terms.items(), key=_grlex_key, reverse=True):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e)
            magnitude = abs(coef)
            if not mono:
                body = format_rational(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{format_rational(magnitude)}*{mono}"
            if not parts:
                parts.append(f"-{body}" if coef < 0 else body)
            else:
                parts.append(f"{'-' if coef < 0 else '+'} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"MultivariatePolynomial({self.variables!r}, {str(self)!r})"


Polynomial = MultivariatePolynomial


def _as_poly(value, variables) -> MultivariatePolynomial:
    if isinstance(value, MultivariatePolynomial):
        return value.with_variables(variables)
    return MultivariatePolynomial.constant(value, variables)


# -- exact division ---------------------------------------------------------

def _greedy_divide(p: MultivariatePolynomial, d: MultivariatePolynomial) -> Optional[MultivariatePolynomial]:
    """Quotient p/d if d divides p exactly, else None.

    Uses lexicographic leading terms: for an exact division the leading term of
    every remainder is a multiple of the leading term of d.
    """
    if d.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    d = d.with_variables(p.variables)
    lead_exps = max(d._terms)
    lead_coef = d._terms[lead_exps]
    remainder = dict(p._terms)
    quotient = {}
    while remainder:
        r_exps = max(remainder)
        shift = tuple(a - b for a, b in zip(r_exps, lead_exps))
        if any(s < 0 for s in shift):
            return None
        q = remainder[r_exps] / lead_coef
        quotient[shift] = q
        for exps, c in d._terms.items():
            key = tuple(a + b for a, b in zip(exps, shift))
            value = remainder.get(key, Fraction(0)) - q * c
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return MultivariatePolynomial(p.variables, quotient)


def exact_divide(p: MultivariatePolynomial, d: MultivariatePolynomial) -> MultivariatePolynomial:
    quotient = _greedy_divide(p, d)
    if quotient is None:
        raise ArithmeticError(f"{d} does not divide {p}")
    return quotient


def divides(d: MultivariatePolynomial, p: MultivariatePolynomial) -> bool:
    return _greedy_divide(p, d) is not None


# -- dense univariate helpers (coefficients low to high) ---------------------

def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _dense(p: MultivariatePolynomial) -> list:
    if p.nvars == 0:
        return _trim([p.constant_value]) if p else []
    if p.nvars != 1:
        raise ArityError(f"expected a univariate polynomial, got variables {p.variables}")
    if p.is_zero:
        return []
    coeffs = [Fraction(0)] * (p.degree(p.variables[0]) + 1)
    for (e,), c in p._terms.items():
        coeffs[e] = c
    return coeffs


def _from_dense(coeffs: Sequence[Fraction], name: str) -> MultivariatePolynomial:
    return MultivariatePolynomial((name,), {(k,): c for k, c in enumerate(coeffs) if c})


def _u_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _u_derivative(coeffs: Sequence[Fraction]) -> list:
    return [c * k for k, c in enumerate(coeffs)][1:]


def _u_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    remainder = list(a)
    quotient = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(remainder) >= len(b) and remainder:
        shift = len(remainder) - len(b)
        q = remainder[-1] / lead
        quotient[shift] = q
        for k, c in enumerate(b):
            remainder[shift + k] -= q * c
        remainder.pop()
        _trim(remainder)
    return _trim(quotient), remainder


def _u_monic(coeffs: Sequence[Fraction]) -> list:
    if not coeffs:
        return []
    lead = coeffs[-1]
    return [c / lead for c in coeffs]


def _u_gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _u_divmod(a, b)[1]
    return _u_monic(a)


def _u_squarefree(coeffs: Sequence[Fraction]) -> list:
    coeffs = _trim(list(coeffs))
    if len(coeffs) <= 2:
        return coeffs
    g = _u_gcd(coeffs, _u_derivative(coeffs))
    return _u_divmod(coeffs, g)[0] if len(g) > 1 else coeffs


def _u_primitive_integer(coeffs: Sequence[Fraction]) -> list:
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    content = 0
    for v in ints:
        content = gcd(content, v)
    return [v // content for v in ints]


# -- content, primitive parts, gcd ------------------------------------------

def _check_small(p: MultivariatePolynomial):
    if p.nvars > 2:
        raise ArityError(f"at most two variables are supported here, got {p.variables}")


def _content(p: MultivariatePolynomial, name: str) -> MultivariatePolynomial:
    """Content in ``name``: gcd of the coefficients, over the other variable.

    Univariate inputs have a rational content chosen so the primitive part is an
    integer polynomial with positive leading coefficient.
    """
    others = tuple(v for v in p.variables if v != name)
    if p.is_zero:
        return MultivariatePolynomial(others)
    if not others:
        return MultivariatePolynomial.constant(_constant_scale(p), ())
    g: list = []
    for coef in p.coefficients_in(name):
        if coef:
            g = _u_gcd(g, _dense(coef)) if g else _u_monic(_dense(coef))
    return _from_dense(g, others[0])


def _constant_scale(p: MultivariatePolynomial) -> Fraction:
    """The rational c with p == c * p.normalized()."""
    exps, coef = p.normalized().leading_term()
    return p._terms[exps] / coef


def _primitive(p: MultivariatePolynomial, name: str) -> MultivariatePolynomial:
    if p.is_zero:
        return p
    content = _content(p, name)
    return exact_divide(p, content.with_variables(p.variables))


def _prem(a: MultivariatePolynomial, b: MultivariatePolynomial, name: str) -> MultivariatePolynomial:
    """Pseudo-remainder of a by b in ``name``."""
    db = b.degree(name)
    lead_b = b.coefficient_of(name, db)
    remainder = a
    while remainder and remainder.degree(name) >= db:
        dr = remainder.degree(name)
        lead_r = remainder.coefficient_of(name, dr)
        shift = tuple(dr - db if v == name else 0 for v in a.variables)
        remainder = lead_b * remainder - lead_r * b * MultivariatePolynomial.monomial(a.variables, shift)
    return remainder


def _primitive_gcd(a: MultivariatePolynomial, b: MultivariatePolynomial, name: str) -> MultivariatePolynomial:
    """gcd of the primitive parts in ``name`` (a gcd over Q(other variable))."""
    a, b = _primitive(a, name), _primitive(b, name)
    if not a:
        return b
    if not b:
        return a
    if a.degree(name) < b.degree(name):
        a, b = b, a
    while b:
        r = _prem(a, b, name)
        a, b = b, (_primitive(r, name) if r else r)
    if a.degree(name) <= 0:
        return MultivariatePolynomial.constant(1, a.variables)
    return _primitive(a, name)


def univariate_gcd(p: MultivariatePolynomial, q: MultivariatePolynomial) -> MultivariatePolynomial:
    """Normalized gcd of two polynomials in the same single variable."""
    if p.variables != q.variables:
        raise ArityError(f"variable mismatch: {p.variables} vs {q.variables}")
    if p.is_zero and q.is_zero:
        raise ZeroPolynomialError("gcd of two zero polynomials")
    g = _u_gcd(_dense(p), _dense(q))
    if p.nvars == 0:
        return MultivariatePolynomial.constant(1, ())
    return _from_dense(g, p.variables[0]).normalized()


def content_in(p: MultivariatePolynomial, name: str) -> MultivariatePolynomial:
    """Content of p as a polynomial in ``name``, expressed over the other variable."""
    _check_small(p)
    return _content(p, name)


def primitive_part(p: MultivariatePolynomial, name: str) -> MultivariatePolynomial:
    _check_small(p)
    return _primitive(p, name)


def bivariate_gcd(p: MultivariatePolynomial, q: MultivariatePolynomial) -> MultivariatePolynomial:
    """Greatest common divisor over Q, primitive, positive graded-lex leading coefficient."""
    if p.variables != q.variables:
        raise ArityError(f"variable mismatch: {p.variables} vs {q.variables}")
    _check_small(p)
    if p.is_zero and q.is_zero:
        raise ZeroPolynomialError("gcd of two zero polynomials")
    if p.is_zero:
        return q.normalized()
    if q.is_zero:
        return p.normalized()
    if p.nvars == 0:
        return MultivariatePolynomial.constant(1, ())
    name = p.variables[0]
    g = _primitive_gcd(p, q, name)
    if p.nvars == 2:
        other = p.variables[1]
        c = _u_gcd(_dense(_content(p, name)), _dense(_content(q, name)))
        g = g * _from_dense(c, other).with_variables(p.variables)
    return g.normalized()


def squarefree_part(p: MultivariatePolynomial, name: str) -> MultivariatePolynomial:
    """p / gcd(p, dp/dname) over the rational function field in the other variable."""
    _check_small(p)
    if p.is_zero:
        raise ZeroPolynomialError("squarefree part of the zero polynomial")
    if p.degree(name) <= 0:
        return p.normalized()
    if p.nvars == 1:
        return _from_dense(_u_squarefree(_dense(p)), name).normalized()
    g = _primitive_gcd(p, p.derivative(name), name)
    return exact_divide(p, g).normalized()


def radical(p: MultivariatePolynomial) -> MultivariatePolynomial:
    """Squarefree in every variable: squarefree content times squarefree primitive part."""
    _check_small(p)
    if p.is_zero:
        raise ZeroPolynomialError("radical of the zero polynomial")
    if p.nvars == 0:
        return MultivariatePolynomial.constant(1, ())
    name = p.variables[0]
    if p.nvars == 1:
        return squarefree_part(p, name)
    other = p.variables[1]
    content = _content(p, name)
    primitive = exact_divide(p, content.with_variables(p.variables))
    result = squarefree_part(primitive, name) if primitive.degree(name) > 0 else MultivariatePolynomial.constant(1, p.variables)
    if content.degree(other) > 0:
        result = result * squarefree_part(content, other).with_variables(p.variables)
    return result.normalized()


# -- determinants and resultants --------------------------------------------

def determinant(matrix: Sequence[Sequence], variables: Sequence[str]) -> MultivariatePolynomial:
    """Fraction-free Bareiss elimination over Q[variables]."""
    variables = tuple(variables)
    rows = [[_as_poly(entry, variables) for entry in row] for row in matrix]
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise ArityError("determinant of a non-square matrix")
    if n == 0:
        return MultivariatePolynomial.constant(1, variables)
    sign = 1
    previous = MultivariatePolynomial.constant(1, variables)
    for k in range(n - 1):
        if not rows[k][k]:
            pivot = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if pivot is None:
                return MultivariatePolynomial(variables)
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = exact_divide(rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j], previous)
        previous = rows[k][k]
    return rows[n - 1][n - 1] * sign


def resultant(p: MultivariatePolynomial, q: MultivariatePolynomial, name: str) -> MultivariatePolynomial:
    """Sylvester resultant of p and q in ``name``.

    The result lives over p's other variables followed by q's other variables
    not already present. Rows of p come first, so the value equals
    lc(p)^deg(q) lc(q)^deg(p) times the product of (r_i - s_j) over the roots.
    """
    others = tuple(v for v in p.variables if v != name)
    others += tuple(v for v in q.variables if v != name and v not in others)
    if len(others) > MAX_VARIABLES:
        raise ArityError(f"resultant would need variables {others}")
    if p.is_zero or q.is_zero:
        return MultivariatePolynomial(others)
    m, n = p.degree(name), q.degree(name)
    if m == 0 and n == 0:
        return MultivariatePolynomial.constant(1, others)
    zero = MultivariatePolynomial(others)
    p_coeffs = [c.with_variables(others) for c in reversed(p.coefficients_in(name))]
    q_coeffs = [c.with_variables(others) for c in reversed(q.coefficients_in(name))]
    size = m + n
    matrix = []
    for i in range(n):
        matrix.append([zero] * i + p_coeffs + [zero] * (size - i - m - 1))
    for i in range(m):
        matrix.append([zero] * i + q_coeffs + [zero] * (size - i - n - 1))
    return determinant(matrix, others)


def resultant_in_z(g1: MultivariatePolynomial, g2: MultivariatePolynomial,
                   name: str = "z") -> MultivariatePolynomial:
    """Eliminate ``name`` from g1(u, z) and g2(v, z); the result lives in (u, v)."""
    if g1.is_zero and g2.is_zero:
        raise ZeroPolynomialError("both resultant inputs are zero")
    for label, g in (("first", g1), ("second", g2)):
        if name not in g.variables or g.degree(name) <= 0:
            raise ZDegreeCollapseError(f"{label} input {g} has no positive degree in {name}")
    return resultant(g1, g2, name)


# -- Sturm sequences and real root isolation ---------------------------------

@dataclass(frozen=True)
class IsolatingInterval:
    """Closed interval holding exactly one real root; ``exact_hit`` marks a rational root."""

    lower: Fraction
    upper: Fraction
    exact_hit: Optional[Fraction] = None

    def contains(self, value: Fraction) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower


class SturmSequence:
    """Sturm chain of the squarefree part of a univariate polynomial."""

    def __init__(self, p: Union[MultivariatePolynomial, Sequence[Fraction]]):
        coeffs = _dense(p) if isinstance(p, MultivariatePolynomial) else _trim(list(p))
        if not coeffs:
            raise ZeroPolynomialError("Sturm sequence of the zero polynomial")
        self.squarefree = _u_squarefree(coeffs)
        chain = [self.squarefree, _u_derivative(self.squarefree)]
        while chain[-1]:
            remainder = _u_divmod(chain[-2], chain[-1])[1]
            if not remainder:
                break
            chain.append([-c for c in remainder])
        self.chain = [c for c in chain if c]
        self.bound = 2 + max((abs(c / self.squarefree[-1]) for c in self.squarefree[:-1]), default=Fraction(0))

    def variations(self, x: Fraction) -> int:
        signs = [v for v in (_u_eval(c, x) for c in self.chain) if v != 0]
        return sum(1 for s, t in zip(signs, signs[1:]) if (s > 0) != (t > 0))

    def count(self, lower: Fraction, upper: Fraction) -> int:
        """Distinct real roots in the half-open interval (lower, upper]."""
        if upper <= lower:
            return 0
        return self.variations(lower) - self.variations(upper)

    def count_all(self) -> int:
        return self.count(-self.bound, self.bound)

    def count_below(self, x: Fraction) -> int:
        """Distinct real roots strictly less than x."""
        if x <= -self.bound:
            return 0
        at_x = 1 if _u_eval(self.squarefree, x) == 0 else 0
        return self.count(-self.bound, min(x, self.bound)) - at_x

    def is_root(self, x: Fraction) -> bool:
        return _u_eval(self.squarefree, as_rational(x)) == 0

    def isolate(self) -> list:
        if len(self.squarefree) == 2:
            root = -self.squarefree[0] / self.squarefree[1]
            return [IsolatingInterval(root, root, root)]
        lead = abs(_u_primitive_integer(self.squarefree)[-1])
        found = []
        stack = [(-self.bound, self.bound)]
        while stack:
            lower, upper = stack.pop()
            k = self.count(lower, upper)
            if k == 0:
                continue
            if k == 1:
                found.append(self._finish(lower, upper, lead))
                continue
            mid = (lower + upper) / 2
            stack.append((mid, upper))
            stack.append((lower, mid))
        found.sort(key=lambda iv: iv.lower)
        return found

    def _finish(self, lower: Fraction, upper: Fraction, lead: int) -> IsolatingInterval:
        # Rational roots are multiples of 1/lead, so shrink below that spacing first.
        step = Fraction(1, lead)
        while upper - lower >= step:
            mid = (lower + upper) / 2
            if self.count(lower, mid) == 1:
                upper = mid
            else:
                lower = mid
        candidate = Fraction(floor(upper * lead), lead)
        if candidate > lower and _u_eval(self.squarefree, candidate) == 0:
            return IsolatingInterval(candidate, candidate, candidate)
        while _u_eval(self.squarefree, lower) == 0:
            mid = (lower + upper) / 2
            if self.count(mid, upper) == 1:
                lower = mid
            else:
                upper = mid
        return IsolatingInterval(lower, upper)


def sturm_isolate(p: MultivariatePolynomial) -> list:
    """One isolating interval per distinct real root, sorted and pairwise disjoint."""
    if p.is_zero:
        raise ZeroPolynomialError("cannot isolate the roots of the zero polynomial")
    if p.nvars > 1 and len(p.used_variables()) > 1:
        raise ArityError(f"sturm_isolate needs a univariate polynomial, got {p}")
    if p.nvars > 1:
        used = p.used_variables() or p.variables[:1]
        p = p.with_variables(used)
    return SturmSequence(p).isolate()


def real_roots_below(p: MultivariatePolynomial, value) -> int:
    return SturmSequence(p).count_below(as_rational(value))


def real_root_count(p: MultivariatePolynomial) -> int:
    return SturmSequence(p).count_all()
