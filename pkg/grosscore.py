# grosscore.py
"""Exact arithmetic over grossone-based numbers.

A gross-number is a finite sum of terms c*G^p where the gross-digit c and the
gross-power p are exact rationals. Values are kept in canonical form (exponents
strictly decreasing, no zero coefficients), so two numbers are equal exactly
when their term tuples are identical.
"""
import functools
import logging
import math
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Union

from errors import (
    DivisionByZero,
    InexactDivision,
    Indeterminate,
    NotRepresentable,
    ZeroToNegativePower,
)

logger = logging.getLogger("grosscore")

# Quotient terms produced before long division gives up
DEFAULT_MAX_DIV_TERMS = 32
# Largest integer power computed: coefficient bits, and terms of a multi-term result
MAX_POWER_BITS = 1 << 20
MAX_POWER_TERMS = 1024

# Gross-digits are unbounded; lift the int <-> str digit limit of Python 3.11+
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and rational strings to Fraction; floats are refused"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not gross-digits")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    @classmethod
    def from_sign(cls, sign) -> "Ordering":
        if sign > 0:
            return cls.GREATER
        if sign < 0:
            return cls.LESS
        return cls.EQUAL

    @property
    def symbol(self) -> str:
        return {-1: "<", 0: "=", 1: ">"}[self.value]

    def reverse(self) -> "Ordering":
        return Ordering(-self.value)


class Magnitude(Enum):
    ZERO = "zero"
    INFINITESIMAL = "infinitesimal"
    FINITE = "finite"
    INFINITE = "infinite"


@dataclass(frozen=True)
class GrossTerm:
    # gross-power p
    exponent: Fraction
    # gross-digit c
    coefficient: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", as_fraction(self.exponent))
        object.__setattr__(self, "coefficient", as_fraction(self.coefficient))

    def __mul__(self, other: "GrossTerm") -> "GrossTerm":
        return GrossTerm(self.exponent + other.exponent, self.coefficient * other.coefficient)


GrossLike = Union["GrossNumber", int, Fraction]


def _is_gross_like(value) -> bool:
    return isinstance(value, (GrossNumber, Rational)) and not isinstance(value, bool)


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class GrossNumber:
    """Canonical finite sum of gross terms; zero is the empty tuple"""
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        for term in terms:
            if term.coefficient == 0:
                raise ValueError("zero coefficient in canonical terms, use normalize()")
        for higher, lower in zip(terms, terms[1:]):
            if higher.exponent <= lower.exponent:
                raise ValueError("exponents must strictly decrease, use normalize()")

    @classmethod
    def of(cls, value: GrossLike) -> "GrossNumber":
        """Coerce a rational or an existing gross-number"""
        if isinstance(value, GrossNumber):
            return value
        coefficient = as_fraction(value)
        if coefficient == 0:
            return cls()
        return cls((GrossTerm(0, coefficient),))

    @property
    def leading_term(self) -> Optional[GrossTerm]:
        return self.terms[0] if self.terms else None

    def is_rational(self) -> bool:
        """True when the value is an ordinary finite rational"""
        return not self.terms or (len(self.terms) == 1 and self.terms[0].exponent == 0)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("gross-number has infinite or infinitesimal parts")
        return self.terms[0].coefficient if self.terms else Fraction(0)

    def is_integer(self) -> bool:
        return self.is_rational() and self.rational_value().denominator == 1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not _is_gross_like(other):
            return NotImplemented
        return self.terms == GrossNumber.of(other).terms

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.rational_value())
        return hash(self.terms)

    def __lt__(self, other) -> bool:
        if not _is_gross_like(other):
            return NotImplemented
        return compare(self, other) is Ordering.LESS

    def __neg__(self) -> "GrossNumber":
        return negate(self)

    def __pos__(self) -> "GrossNumber":
        return self

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __pow__(self, other):
        return power(self, other)

    def __rpow__(self, other):
        return power(other, self)

    def __str__(self) -> str:
        from grossparse import to_text
        return to_text(self)

    def __repr__(self) -> str:
        return f"GrossNumber({str(self)!r})"


ZERO = GrossNumber()
ONE = GrossNumber.of(1)
GROSSONE = GrossNumber((GrossTerm(1, 1),))


def monomial(coefficient, exponent=0) -> GrossNumber:
    """The single-term gross-number coefficient*G^exponent"""
    return normalize([GrossTerm(exponent, coefficient)])


@dataclass(frozen=True)
class Parts:
    infinite: GrossNumber
    finite: GrossNumber
    infinitesimal: GrossNumber

    def reassemble(self) -> GrossNumber:
        return add(add(self.infinite, self.finite), self.infinitesimal)


def normalize(raw_terms: Iterable) -> GrossNumber:
    """Merge equal exponents, drop zero coefficients, sort exponents decreasing.

    Accepts GrossTerm objects or (exponent, coefficient) pairs.
    """
    merged = {}
    for raw in raw_terms:
        term = raw if isinstance(raw, GrossTerm) else GrossTerm(*raw)
        merged[term.exponent] = merged.get(term.exponent, Fraction(0)) + term.coefficient
    return GrossNumber(tuple(
        GrossTerm(exponent, coefficient)
        for exponent, coefficient in sorted(merged.items(), reverse=True)
        if coefficient != 0
    ))


def negate(x: GrossLike) -> GrossNumber:
    x = GrossNumber.of(x)
    # exponents are untouched, so the terms stay canonical
    return GrossNumber(tuple(GrossTerm(t.exponent, -t.coefficient) for t in x.terms))


def add(a: GrossLike, b: GrossLike) -> GrossNumber:
    a, b = GrossNumber.of(a), GrossNumber.of(b)
    return normalize(a.terms + b.terms)


def sub(a: GrossLike, b: GrossLike) -> GrossNumber:
    return add(a, negate(b))


def mul(a: GrossLike, b: GrossLike) -> GrossNumber:
    a, b = GrossNumber.of(a), GrossNumber.of(b)
    return normalize(x * y for x in a.terms for y in b.terms)


def div(a: GrossLike, b: GrossLike, max_terms: int = DEFAULT_MAX_DIV_TERMS) -> GrossNumber:
    """Long division by leading terms.

    Each step divides the leading term of the remainder by the leading term of
    the divisor. Raises InexactDivision when the remainder is still nonzero
    after max_terms quotient terms; the error carries the partial quotient and
    remainder so that partial*b + remainder == a.
    """
    a, b = GrossNumber.of(a), GrossNumber.of(b)
    if not b:
        raise DivisionByZero("division by zero")
    if max_terms < 1:
        raise ValueError("max_terms must be a positive integer")

    divisor_lead = b.leading_term
    quotient = []
    remainder = a
    while remainder:
        if len(quotient) == max_terms:
            partial = GrossNumber(tuple(quotient))
            logger.debug("division truncated after %d terms", max_terms)
            raise InexactDivision(partial, remainder, max_terms)
        lead = remainder.leading_term
        step = GrossTerm(lead.exponent - divisor_lead.exponent, lead.coefficient / divisor_lead.coefficient)
        quotient.append(step)
        # The leading term cancels, so remainder exponents strictly drop
        remainder = sub(remainder, mul(GrossNumber((step,)), b))
    return GrossNumber(tuple(quotient))


def integer_root(n: int, k: int) -> Optional[int]:
    """Exact k-th root of a nonnegative integer, or None"""
    if n < 2:
        return n
    # 2^k <= n is needed for an integer root of order k
    if k >= n.bit_length():
        return None
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x ** k == n else None


def _rational_root(value: Fraction, k: int) -> Optional[Fraction]:
    if value < 0:
        if k % 2 == 0:
            return None
        root = _rational_root(-value, k)
        return None if root is None else -root
    numerator = integer_root(value.numerator, k)
    denominator = integer_root(value.denominator, k)
    if numerator is None or denominator is None:
        return None
    return Fraction(numerator, denominator)


def _coefficient_bits(c: Fraction) -> int:
    return max(abs(c.numerator), c.denominator).bit_length()


def _check_power_size(base: GrossNumber, n: int):
    """Raise NotRepresentable when base^n is too large to compute"""
    coefficients = [term.coefficient for term in base.terms]
    if len(coefficients) == 1 and abs(coefficients[0]) == 1:
        return
    widest = max(_coefficient_bits(c) for c in coefficients)
    # multinomial coefficients add at most log2(len(terms)) bits per factor
    bits = n * (widest + (len(coefficients) - 1).bit_length())
    if bits > MAX_POWER_BITS:
        raise NotRepresentable(f"power too large: about {bits} bits per gross-digit")
    if len(base.terms) > 1:
        step = math.lcm(*(term.exponent.denominator for term in base.terms))
        span = (base.terms[0].exponent - base.terms[-1].exponent) * step
        if n * span + 1 > MAX_POWER_TERMS:
            raise NotRepresentable(f"power too large: up to {n * span + 1} terms")


def _square_and_multiply(base: GrossNumber, n: int) -> GrossNumber:
    result, square = ONE, base
    while n:
        if n & 1:
            result = mul(result, square)
        n >>= 1
        if n:
            square = mul(square, square)
    return result


def power(base: GrossLike, exponent: GrossLike, max_terms: int = DEFAULT_MAX_DIV_TERMS) -> GrossNumber:
    """Exact power in the cases that stay inside the finite-sum form.

    Supported: finite integer exponents (negative ones need a nonzero base),
    finite rational exponents of single-term bases whose coefficient has an
    exact rational root, and any nonzero exponent over base 0 or 1.
    """
    base, exponent = GrossNumber.of(base), GrossNumber.of(exponent)

    if not exponent:
        if not base:
            raise Indeterminate("0^0 is undefined")
        return ONE
    if not base:
        if compare(exponent, ZERO) is Ordering.GREATER:
            return ZERO
        raise ZeroToNegativePower("zero raised to a negative power")
    if base == ONE:
        return ONE
    if not exponent.is_rational():
        raise NotRepresentable("infinite or infinitesimal exponents leave the finite-sum form")

    # integer exponent: repeated squaring, then invert if negative
    r = exponent.rational_value()
    if r.denominator == 1:
        n = r.numerator
        _check_power_size(base, abs(n))
        positive = _square_and_multiply(base, abs(n))
        if n > 0:
            return positive
        if len(positive.terms) == 1:
            term = positive.terms[0]
            return monomial(1 / term.coefficient, -term.exponent)
        return div(ONE, positive, max_terms)

    # fractional exponent: root of the gross-digit, scaled gross-power
    if len(base.terms) != 1:
        raise NotRepresentable("fractional powers are defined for single-term bases only")
    term = base.terms[0]
    root = _rational_root(term.coefficient, r.denominator)
    if root is None:
        raise NotRepresentable(f"{term.coefficient} has no exact rational root of order {r.denominator}")
    _check_power_size(GrossNumber.of(root), abs(r.numerator))
    return monomial(root ** r.numerator, term.exponent * r)


def compare(a: GrossLike, b: GrossLike) -> Ordering:
    """Sign of a - b, decided by its highest-exponent term"""
    difference = sub(a, b)
    if not difference:
        return Ordering.EQUAL
    return Ordering.from_sign(difference.leading_term.coefficient)


def parts(x: GrossLike) -> Parts:
    x = GrossNumber.of(x)
    return Parts(
        infinite=GrossNumber(tuple(t for t in x.terms if t.exponent > 0)),
        finite=GrossNumber(tuple(t for t in x.terms if t.exponent == 0)),
        infinitesimal=GrossNumber(tuple(t for t in x.terms if t.exponent < 0)),
    )


def classify(x: GrossLike) -> Magnitude:
    x = GrossNumber.of(x)
    if not x:
        return Magnitude.ZERO
    # the leading term decides the class
    lead = x.leading_term.exponent
    if lead > 0:
        return Magnitude.INFINITE
    if lead == 0:
        return Magnitude.FINITE
    return Magnitude.INFINITESIMAL
