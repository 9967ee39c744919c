# setmeasure.py
"""Grossone measures of infinite sets.

Set descriptors are a closed catalog (naturals, integers, residue classes,
squares, pairs, the numeral sets Q1 and Q2, power sets, positional numerals
over an interval) plus four constructors: element removal from N and Z,
disjoint unions of same-modulus progressions, and adding or removing a
finite number of elements. A measure is either a gross-number (PolyMeasure)
or an exponential form coeff*base^exponent + offset (ExpMeasure).
"""
import logging
import math
import re
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from errors import (
    AmbiguousComparison,
    GrossSyntaxError,
    InvalidDescriptor,
    NotAnAdmissibleLength,
)
from grosscore import (
    GROSSONE,
    ONE,
    ZERO,
    GrossNumber,
    Magnitude,
    Ordering,
    add,
    as_fraction,
    classify,
    compare,
    integer_root,
    monomial,
    mul,
    parts,
    sub,
)
from grossparse import MAX_NESTING, evaluate_text, to_text

logger = logging.getLogger("setmeasure")


class CantorLabel(Enum):
    """Cantor's cardinality of a catalog set, kept for display only"""
    COUNTABLE_ALEPH0 = "countable, aleph_0"
    CONTINUUM_C = "continuum, c"

    def display(self, unicode: bool = False) -> str:
        if not unicode:
            return self.value
        return {"countable, aleph_0": "countable, ℵ₀", "continuum, c": "continuum, 𝔠"}[self.value]


# Measures
class Measure(ABC):
    floor: bool

    @abstractmethod
    def shifted(self, count: int) -> "Measure":
        """Measure of the set with count elements added (negative count removes)"""

    @abstractmethod
    def to_text(self, unicode: bool = False) -> str:
        pass

    @abstractmethod
    def to_json(self) -> dict:
        pass

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class PolyMeasure(Measure):
    value: GrossNumber
    # value stands for floor(value), e.g. floor(G^(1/2)) for the squares
    floor: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", GrossNumber.of(self.value))
        if compare(self.value, ZERO) is Ordering.LESS:
            raise InvalidDescriptor(f"negative number of elements: {to_text(self.value)}")

    def shifted(self, count: int) -> "PolyMeasure":
        return PolyMeasure(add(self.value, count), self.floor)

    def to_text(self, unicode: bool = False) -> str:
        text = to_text(self.value, unicode)
        if not self.floor:
            return text
        return f"⌊{text}⌋" if unicode else f"floor({text})"

    def to_json(self) -> dict:
        # A polynomial measure is 0*b^E + P: only the offset is set
        return {
            "form": "poly",
            "coeff": "0",
            "base": None,
            "exponent": None,
            "offset": to_text(self.value),
            "floor": self.floor,
        }


@dataclass(frozen=True)
class ExpMeasure(Measure):
    coeff: Fraction
    base: int
    exponent: GrossNumber
    offset: GrossNumber = ZERO
    # the exponent stands for floor(exponent)
    floor: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeff", as_fraction(self.coeff))
        object.__setattr__(self, "exponent", GrossNumber.of(self.exponent))
        object.__setattr__(self, "offset", GrossNumber.of(self.offset))
        if self.coeff <= 0:
            raise InvalidDescriptor("exponential measure needs a positive coefficient")
        if not isinstance(self.base, int) or isinstance(self.base, bool) or self.base < 2:
            raise InvalidDescriptor(f"base must be an integer >= 2, got {self.base!r}")
        if classify(self.exponent) is not Magnitude.INFINITE or self.exponent.leading_term.coefficient < 0:
            raise InvalidDescriptor("exponent of an exponential measure must be positive and infinite")

    def shifted(self, count: int) -> "ExpMeasure":
        return replace(self, offset=add(self.offset, count))

    def to_text(self, unicode: bool = False) -> str:
        exponent = to_text(self.exponent, unicode)
        if self.floor:
            exponent = f"⌊{exponent}⌋" if unicode else f"floor({exponent})"
        elif self.exponent != GROSSONE:
            exponent = f"({exponent})"
        text = f"{self.base}^{exponent}"
        if self.coeff != 1:
            text = f"{self.coeff}*{text}"
        if self.offset:
            offset = to_text(self.offset, unicode)
            if offset.startswith("-"):
                text += f" - {offset[1:]}"
            else:
                text += f" + {offset}"
        return text

    def to_json(self) -> dict:
        return {
            "form": "exp",
            "coeff": str(self.coeff),
            "base": self.base,
            "exponent": to_text(self.exponent),
            "offset": to_text(self.offset),
            "floor": self.floor,
        }


def measure_from_json(obj: dict) -> Measure:
    """Inverse of Measure.to_json"""
    floor = bool(obj.get("floor", False))
    if obj["form"] == "poly":
        return PolyMeasure(evaluate_text(obj["offset"]), floor)
    if obj["form"] == "exp":
        return ExpMeasure(
            Fraction(obj["coeff"]),
            int(obj["base"]),
            evaluate_text(obj["exponent"]),
            evaluate_text(obj["offset"]),
            floor,
        )
    raise InvalidDescriptor(f"unknown measure form {obj['form']!r}")


# Set descriptors
class SetDescriptor(ABC):
    """Symbolic description of an infinite set"""

    @property
    def cantor(self) -> CantorLabel:
        return CantorLabel.COUNTABLE_ALEPH0

    def validate(self) -> None:
        """Raise InvalidDescriptor when the descriptor breaks its invariants"""

    @abstractmethod
    def _measure(self) -> Measure:
        pass

    @abstractmethod
    def to_text(self) -> str:
        """Text in the set grammar of SETS.md"""

    def __str__(self) -> str:
        return self.to_text()


def _check_distinct(values: tuple, what: str) -> None:
    for value in values:
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidDescriptor(f"{what} must be integers, got {value!r}")
    if len(set(values)) != len(values):
        raise InvalidDescriptor(f"{what} must be distinct")


@dataclass(frozen=True)
class Naturals(SetDescriptor):
    def _measure(self) -> Measure:
        return PolyMeasure(GROSSONE)

    def to_text(self) -> str:
        return "N"


@dataclass(frozen=True)
class NaturalsMinus(SetDescriptor):
    removed: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "removed", tuple(self.removed))

    def validate(self) -> None:
        _check_distinct(self.removed, "removed naturals")
        for value in self.removed:
            if value < 1:
                raise InvalidDescriptor(f"{value} is not a natural number")

    def _measure(self) -> Measure:
        return PolyMeasure(GROSSONE).shifted(-len(self.removed))

    def to_text(self) -> str:
        return "N \\ {" + ",".join(str(v) for v in self.removed) + "}"


@dataclass(frozen=True)
class Progression(SetDescriptor):
    """N_{k,n} = {k, k+n, k+2n, ...}"""
    k: int
    n: int

    def validate(self) -> None:
        for value in (self.k, self.n):
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidDescriptor(f"progression parameters must be integers, got {value!r}")
        if not 1 <= self.k <= self.n:
            raise InvalidDescriptor(f"progression N({self.k},{self.n}) needs 1 <= k <= n")

    def _measure(self) -> Measure:
        return PolyMeasure(monomial(Fraction(1, self.n), 1))

    def to_text(self) -> str:
        return f"N({self.k},{self.n})"


@dataclass(frozen=True)
class Integers(SetDescriptor):
    """{-G, ..., -1, 0, 1, ..., G}"""
    def _measure(self) -> Measure:
        return PolyMeasure(add(mul(2, GROSSONE), 1))

    def to_text(self) -> str:
        return "Z"


@dataclass(frozen=True)
class IntegersMinus(SetDescriptor):
    removed: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "removed", tuple(self.removed))

    def validate(self) -> None:
        _check_distinct(self.removed, "removed integers")

    def _measure(self) -> Measure:
        return Integers()._measure().shifted(-len(self.removed))

    def to_text(self) -> str:
        return "Z \\ {" + ",".join(str(v) for v in self.removed) + "}"


@dataclass(frozen=True)
class Squares(SetDescriptor):
    def _measure(self) -> Measure:
        return PolyMeasure(monomial(1, Fraction(1, 2)), floor=True)

    def to_text(self) -> str:
        return "squares"


@dataclass(frozen=True)
class Pairs(SetDescriptor):
    def _measure(self) -> Measure:
        return PolyMeasure(mul(GROSSONE, GROSSONE))

    def to_text(self) -> str:
        return "pairs"


@dataclass(frozen=True)
class Q1Numerals(SetDescriptor):
    """Numerals p/q with p in Z and q in Z \\ {0}"""
    def _measure(self) -> Measure:
        numerators = measure(Integers())
        denominators = measure(IntegersMinus((0,)))
        return PolyMeasure(mul(numerators.value, denominators.value))

    def to_text(self) -> str:
        return "Q1"


@dataclass(frozen=True)
class Q2Numerals(SetDescriptor):
    """Numerals 0, -p/q and p/q with p, q in N"""
    def _measure(self) -> Measure:
        positive = mul(GROSSONE, GROSSONE)
        return PolyMeasure(add(mul(2, positive), 1))

    def to_text(self) -> str:
        return "Q2"


@dataclass(frozen=True)
class PowerSet(SetDescriptor):
    inner: SetDescriptor

    @property
    def cantor(self) -> CantorLabel:
        return CantorLabel.CONTINUUM_C

    def _measure(self) -> Measure:
        inner = measure(self.inner)
        if not isinstance(inner, PolyMeasure):
            raise InvalidDescriptor("power sets of exponentially measured sets are outside the catalog")
        if classify(inner.value) is not Magnitude.INFINITE:
            raise InvalidDescriptor("power sets are measured for infinite sets only")
        return ExpMeasure(1, 2, inner.value, ZERO, inner.floor)

    def to_text(self) -> str:
        return f"P({self.inner.to_text()})"


@dataclass(frozen=True)
class IntervalNumerals(SetDescriptor):
    """Numerals of a positional system with the given base over [lower, upper) or [lower, upper]"""
    base: int
    lower: Fraction
    upper: Fraction
    closed_upper: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lower", as_fraction(self.lower))
        object.__setattr__(self, "upper", as_fraction(self.upper))

    @property
    def cantor(self) -> CantorLabel:
        return CantorLabel.CONTINUUM_C

    def validate(self) -> None:
        if not isinstance(self.base, int) or isinstance(self.base, bool) or self.base < 2:
            raise InvalidDescriptor(f"numeral base must be an integer >= 2, got {self.base!r}")
        if not self.lower < self.upper:
            raise InvalidDescriptor(f"empty interval [{self.lower},{self.upper}]")

    def _measure(self) -> Measure:
        # G digits after the point give base^G numerals per unit of length
        offset = ONE if self.closed_upper else ZERO
        return ExpMeasure(self.upper - self.lower, self.base, GROSSONE, offset)

    def to_text(self) -> str:
        bracket = "]" if self.closed_upper else ")"
        return f"num[{self.lower},{self.upper}{bracket}@{self.base}"


@dataclass(frozen=True)
class DisjointUnion(SetDescriptor):
    """Union of progressions N(k,n) sharing n with distinct k"""
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))

    def validate(self) -> None:
        if not self.members:
            raise InvalidDescriptor("a union needs at least one member")
        for member in self.members:
            if not isinstance(member, Progression):
                raise InvalidDescriptor(
                    f"only progressions can be unioned, got {member.to_text()}"
                )
            member.validate()
        if len({member.n for member in self.members}) != 1:
            raise InvalidDescriptor("unioned progressions must share the same modulus n")
        if len({member.k for member in self.members}) != len(self.members):
            raise InvalidDescriptor("unioned progressions must be distinct")

    def _measure(self) -> Measure:
        total = ZERO
        for member in self.members:
            total = add(total, measure(member).value)
        return PolyMeasure(total)

    def to_text(self) -> str:
        return " | ".join(member.to_text() for member in self.members)


@dataclass(frozen=True)
class MinusElements(SetDescriptor):
    inner: SetDescriptor
    count: int

    @property
    def cantor(self) -> CantorLabel:
        return self.inner.cantor

    def validate(self) -> None:
        if not isinstance(self.count, int) or isinstance(self.count, bool) or self.count < 0:
            raise InvalidDescriptor(f"element count must be a natural number, got {self.count!r}")

    def _measure(self) -> Measure:
        return measure(self.inner).shifted(-self.count)

    def to_text(self) -> str:
        return f"{self.inner.to_text()} - {self.count}"


@dataclass(frozen=True)
class PlusElements(SetDescriptor):
    inner: SetDescriptor
    count: int

    @property
    def cantor(self) -> CantorLabel:
        return self.inner.cantor

    def validate(self) -> None:
        if not isinstance(self.count, int) or isinstance(self.count, bool) or self.count < 0:
            raise InvalidDescriptor(f"element count must be a natural number, got {self.count!r}")

    def _measure(self) -> Measure:
        return measure(self.inner).shifted(self.count)

    def to_text(self) -> str:
        return f"{self.inner.to_text()} + {self.count}"


def measure(s: SetDescriptor) -> Measure:
    """Exact grossone measure of a set descriptor"""
    s.validate()
    result = s._measure()
    logger.debug("measure(%s) = %s", s.to_text(), result.to_text())
    return result


def partition(n: int) -> DisjointUnion:
    """N(1,n) | N(2,n) | ... | N(n,n), which is the whole of N"""
    return DisjointUnion(tuple(Progression(k, n) for k in range(1, n + 1)))


# Ordering of measures
# Largest t for which the bit-length bounds of base^t are refined before exact products
MAX_LOG_REFINEMENT = 64 ** 3


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _compare_ints(left: int, right: int) -> Ordering:
    return Ordering.from_sign((left > right) - (left < right))


def _log_bounds(factors: list, t: int) -> tuple:
    """Open bounds on t*log2 of the product of base^m over (m, base) factors"""
    lo = hi = 0
    for m, base in factors:
        a = (base.numerator ** t).bit_length() - (base.denominator ** t).bit_length()
        # t*log2(base) lies strictly between a - 1 and a + 1
        if m > 0:
            lo, hi = lo + m * (a - 1), hi + m * (a + 1)
        else:
            lo, hi = lo + m * (a + 1), hi + m * (a - 1)
    return lo, hi


def _exact_product(factors: list) -> Fraction:
    result = Fraction(1)
    for m, base in factors:
        result *= base ** m
    return result


def _compare_products(left: list, right: list) -> Ordering:
    """Order two products of rational powers, given as (m, base) factors with positive bases.

    Bit lengths of base^t bound the logarithms. t grows until the bounds
    separate, so huge exponents are decided without forming the powers;
    the exact products are the fallback once t reaches the exponents.
    """
    left = [(m, Fraction(base)) for m, base in left if m and base != 1]
    right = [(m, Fraction(base)) for m, base in right if m and base != 1]
    largest = max((abs(m) for m, _ in left + right), default=0)
    t = 64
    while largest:
        lo1, hi1 = _log_bounds(left, t)
        lo2, hi2 = _log_bounds(right, t)
        if lo1 >= hi2:
            return Ordering.GREATER
        if lo2 >= hi1:
            return Ordering.LESS
        if t >= largest or t >= MAX_LOG_REFINEMENT:
            break
        t *= 64
    left_value, right_value = _exact_product(left), _exact_product(right)
    return Ordering.from_sign((left_value > right_value) - (left_value < right_value))


def _compare_scaled_logs(q1: Fraction, b1: int, q2: Fraction, b2: int) -> Ordering:
    """Order q1*ln(b1) against q2*ln(b2) without logarithms"""
    s1, s2 = _sign(q1), _sign(q2)
    if s1 != s2:
        return Ordering.from_sign(s1 - s2)
    if s1 == 0:
        return Ordering.EQUAL
    d = math.lcm(q1.denominator, q2.denominator)
    x, y = int(abs(q1) * d), int(abs(q2) * d)
    if b1 == b2:
        ordering = _compare_ints(x, y)
    else:
        g = math.gcd(x, y)
        # b1^x against b2^y
        ordering = _compare_products([(x // g, b1)], [(y // g, b2)])
    return ordering if s1 > 0 else ordering.reverse()


def _compare_finite_factors(c1: Fraction, b1: int, q1: Fraction, c2: Fraction, b2: int, q2: Fraction) -> Ordering:
    """Order c1*b1^q1 against c2*b2^q2 for positive c by raising both to a common denominator"""
    d = math.lcm(q1.denominator, q2.denominator)
    m1, m2 = int(q1 * d), int(q2 * d)
    if b1 == b2:
        m1, m2 = m1 - m2, 0
    return _compare_products([(d, c1), (m1, b1)], [(d, c2), (m2, b2)])


def _compare_poly(a: PolyMeasure, b: PolyMeasure) -> Ordering:
    difference = sub(a.value, b.value)
    ordering = compare(difference, ZERO)
    if not (a.floor or b.floor):
        return ordering
    # floor(x + n) = floor(x) + n for integer n
    if a.floor and b.floor and difference.is_integer():
        return ordering
    if classify(difference) is Magnitude.INFINITE:
        return ordering
    raise AmbiguousComparison(
        f"floor annotation may change the order of {a.to_text()} and {b.to_text()}"
    )


def _primitive_base(b: int) -> tuple:
    """(r, k) with b = r^k and r not itself a perfect power"""
    for k in range(b.bit_length() - 1, 1, -1):
        root = integer_root(b, k)
        if root is not None:
            return root, k
    return b, 1


def _compare_exp(a: ExpMeasure, b: ExpMeasure) -> Ordering:
    base_a, base_b = a.base, b.base
    exponent_a, exponent_b = a.exponent, b.exponent
    # 4^E = 2^(2E): bases that are powers of one root are compared over that root
    if base_a != base_b:
        root_a, k_a = _primitive_base(base_a)
        root_b, k_b = _primitive_base(base_b)
        if root_a == root_b:
            base_a = base_b = root_a
            exponent_a, exponent_b = mul(exponent_a, k_a), mul(exponent_b, k_b)

    coeffs_a = {t.exponent: t.coefficient for t in exponent_a.terms}
    coeffs_b = {t.exponent: t.coefficient for t in exponent_b.terms}
    powers = sorted(set(coeffs_a) | set(coeffs_b), reverse=True)
    zero = Fraction(0)

    def level(p) -> Ordering:
        return _compare_scaled_logs(coeffs_a.get(p, zero), base_a, coeffs_b.get(p, zero), base_b)

    # infinite part of exponent*ln(base): any difference is an infinite ratio
    for p in powers:
        if p <= 0:
            break
        ordering = level(p)
        if ordering is not Ordering.EQUAL:
            return ordering

    if a.floor or b.floor:
        same_slack = (
            a.floor and b.floor and a.base == b.base
            and sub(a.exponent, b.exponent).is_integer()
        )
        if not same_slack:
            raise AmbiguousComparison(
                f"floor annotation may change the order of {a.to_text()} and {b.to_text()}"
            )

    # the ratio of the two powers is finite from here on
    ordering = _compare_finite_factors(
        a.coeff, base_a, coeffs_a.get(Fraction(0), zero),
        b.coeff, base_b, coeffs_b.get(Fraction(0), zero),
    )
    if ordering is not Ordering.EQUAL:
        return ordering
    for p in powers:
        if p < 0:
            ordering = level(p)
            if ordering is not Ordering.EQUAL:
                return ordering
    return compare(a.offset, b.offset)


def compare_measure(a: Measure, b: Measure) -> Ordering:
    """Exact ordering of two measures.

    Raises AmbiguousComparison when a floor annotation leaves the result open.
    """
    if isinstance(a, PolyMeasure) and isinstance(b, PolyMeasure):
        return _compare_poly(a, b)
    # an infinite exponent dominates any polynomial
    if isinstance(a, ExpMeasure) and isinstance(b, PolyMeasure):
        return Ordering.GREATER
    if isinstance(a, PolyMeasure) and isinstance(b, ExpMeasure):
        return Ordering.LESS
    return _compare_exp(a, b)


# Numerals of zero
class NumeralSystem(Enum):
    Q1 = "Q1"
    Q2 = "Q2"


def zero_numeral_count(system: NumeralSystem) -> PolyMeasure:
    """How many numerals of the system denote the number 0"""
    system = NumeralSystem(system)
    if system is NumeralSystem.Q1:
        # 0/q for every q in Z \ {0}
        return PolyMeasure(measure(IntegersMinus((0,))).value)
    return PolyMeasure(ONE)


def _denominator_text(q: GrossNumber) -> str:
    text = to_text(q)
    return f"({text})" if len(q.terms) > 1 else text


def zero_numerals(system: NumeralSystem, head: int = 3) -> list:
    """First and last head numerals of zero, joined by "..."."""
    system = NumeralSystem(system)
    if system is NumeralSystem.Q2:
        return ["0"]
    first = [add(mul(-1, GROSSONE), i) for i in range(head)]
    last = [sub(GROSSONE, i) for i in reversed(range(head))]
    return (
        [f"0/{_denominator_text(q)}" for q in first]
        + ["..."]
        + [f"0/{_denominator_text(q)}" for q in last]
    )


# Sequence lengths
def max_sequence_length() -> PolyMeasure:
    """No sequence has more elements than N, which has G"""
    return PolyMeasure(GROSSONE)


def _check_admissible(length: GrossNumber) -> GrossNumber:
    length = GrossNumber.of(length)
    if compare(length, ZERO) is not Ordering.GREATER:
        raise NotAnAdmissibleLength(f"length {to_text(length)} is not positive")
    split = parts(length)
    if split.infinitesimal:
        raise NotAnAdmissibleLength(f"length {to_text(length)} has an infinitesimal part")
    if not split.finite.is_integer():
        raise NotAnAdmissibleLength(f"length {to_text(length)} has a non-integer finite part")
    return length


def check_sequence(length: GrossNumber) -> bool:
    length = _check_admissible(length)
    return compare(length, GROSSONE) is not Ordering.GREATER


@dataclass(frozen=True)
class ArithmeticSequence:
    """a_i = first + (i - 1)*step for i = 1 .. length"""
    first: GrossNumber
    step: GrossNumber
    length: GrossNumber

    def __post_init__(self):
        object.__setattr__(self, "first", GrossNumber.of(self.first))
        object.__setattr__(self, "step", GrossNumber.of(self.step))
        object.__setattr__(self, "length", GrossNumber.of(self.length))
        if not check_sequence(self.length):
            raise NotAnAdmissibleLength(
                f"a sequence cannot have more than G elements, got {to_text(self.length)}"
            )

    def element(self, index) -> GrossNumber:
        index = GrossNumber.of(index)
        if compare(index, ONE) is Ordering.LESS or compare(index, self.length) is Ordering.GREATER:
            raise IndexError(f"index {to_text(index)} outside 1..{to_text(self.length)}")
        return add(self.first, mul(sub(index, 1), self.step))

    def last(self) -> GrossNumber:
        return self.element(self.length)

    def _available(self, count: int) -> int:
        if self.length.is_rational():
            return min(count, int(self.length.rational_value()))
        return count

    def head(self, count: int) -> list:
        return [self.element(i) for i in range(1, self._available(count) + 1)]

    def tail(self, count: int) -> list:
        """The final count elements, e.g. 5(G-1), 5G"""
        count = self._available(count)
        return [self.element(sub(self.length, j)) for j in reversed(range(count))]


# Catalog of measured sets
@dataclass(frozen=True)
class CatalogRow:
    description: str
    descriptor: SetDescriptor

    @property
    def cantor(self) -> CantorLabel:
        return self.descriptor.cantor

    @property
    def measure(self) -> Measure:
        return measure(self.descriptor)


def catalog() -> list:
    """The classic table of infinite sets with their Cantor labels and grossone measures"""
    return [
        CatalogRow("the set of natural numbers N", Naturals()),
        CatalogRow("N \\ {3, 5, 10, 23, 114}", NaturalsMinus((3, 5, 10, 23, 114))),
        CatalogRow("the set of even numbers E (odd numbers O)", Progression(2, 2)),
        CatalogRow("the set of integers Z", Integers()),
        CatalogRow("Z \\ {0}", IntegersMinus((0,))),
        CatalogRow("squares of natural numbers", Squares()),
        CatalogRow("pairs of natural numbers", Pairs()),
        CatalogRow("the set of numerals Q1 = {p/q : p in Z, q in Z, q != 0}", Q1Numerals()),
        CatalogRow("the set of numerals Q2 = {0, -p/q, p/q : p in N, q in N}", Q2Numerals()),
        CatalogRow("the power set of N", PowerSet(Naturals())),
        CatalogRow("the power set of E", PowerSet(Progression(2, 2))),
        CatalogRow("the power set of Z", PowerSet(Integers())),
        CatalogRow("the power set of Q1", PowerSet(Q1Numerals())),
        CatalogRow("the power set of Q2", PowerSet(Q2Numerals())),
        CatalogRow("numbers in [1,2) expressible in binary", IntervalNumerals(2, 1, 2, False)),
        CatalogRow("numbers in [1,2] expressible in binary", IntervalNumerals(2, 1, 2, True)),
        CatalogRow("numbers in [1,2) expressible in decimal", IntervalNumerals(10, 1, 2, False)),
        CatalogRow("numbers in [0,2) expressible in decimal", IntervalNumerals(10, 0, 2, False)),
    ]


# Set grammar (documented in SETS.md)
_SET_TOKEN_PATTERN = re.compile(r"""
    (?P<space>\s+)
  | (?P<number>[0-9]+(?:\.[0-9]+)?)
  | (?P<word>[A-Za-z][A-Za-z0-9]*)
  | (?P<backslash>\\+|∖)
  | (?P<punct>[-−+(){}\[\],|∪@/])
""", re.VERBOSE)

_PUNCT_NAMES = {
    "(": "LParen", ")": "RParen", "{": "LBrace", "}": "RBrace",
    "[": "LBracket", "]": "RBracket", ",": "Comma", "|": "Union", "∪": "Union",
    "@": "At", "/": "Slash", "+": "Plus", "-": "Minus", "−": "Minus",
}

_SIMPLE_SETS = {
    "Z": Integers,
    "squares": Squares,
    "pairs": Pairs,
    "Q1": Q1Numerals,
    "Q2": Q2Numerals,
}

_SET_START = ("N", "Z", "E", "O", "squares", "pairs", "Q1", "Q2", "P", "num", "LParen")


@dataclass(frozen=True)
class _SetToken:
    kind: str
    lexeme: str
    position: int


def _tokenize_set(text: str) -> list:
    tokens = []
    position = 0
    while position < len(text):
        match = _SET_TOKEN_PATTERN.match(text, position)
        if match is None:
            raise GrossSyntaxError(f"unexpected character {text[position]!r}", position)
        group, lexeme = match.lastgroup, match.group()
        if group == "number":
            tokens.append(_SetToken("Number", lexeme, position))
        elif group == "word":
            tokens.append(_SetToken(lexeme, lexeme, position))
        elif group == "backslash":
            tokens.append(_SetToken("Backslash", lexeme, position))
        elif group == "punct":
            tokens.append(_SetToken(_PUNCT_NAMES[lexeme], lexeme, position))
        position = match.end()
    tokens.append(_SetToken("End", "", len(text)))
    return tokens


class SetParser:
    """Recursive-descent parser for set descriptors"""
    def __init__(self, text: str):
        self.tokens = _tokenize_set(text)
        self.index = 0
        self.depth = 0

    @property
    def current(self) -> _SetToken:
        return self.tokens[self.index]

    def advance(self) -> _SetToken:
        token = self.current
        if token.kind != "End":
            self.index += 1
        return token

    def fail(self, expected) -> GrossSyntaxError:
        token = self.current
        found = "end of input" if token.kind == "End" else repr(token.lexeme)
        return GrossSyntaxError(f"unexpected {found}", token.position, expected)

    def expect(self, kind: str) -> _SetToken:
        if self.current.kind != kind:
            raise self.fail((kind,))
        return self.advance()

    def parse(self) -> SetDescriptor:
        descriptor = self.set_expr()
        if self.current.kind != "End":
            raise self.fail(("Union", "Plus", "Minus", "End"))
        return descriptor

    def set_expr(self) -> SetDescriptor:
        # parentheses, P(...) and each "+ n" / "- n" add a level of descriptor nesting
        levels = 0
        try:
            levels += self.enter()
            descriptor = self.union()
            while self.current.kind in ("Plus", "Minus"):
                levels += self.enter()
                sign = self.advance().kind
                count = self.natural()
                if sign == "Plus":
                    descriptor = PlusElements(descriptor, count)
                else:
                    descriptor = MinusElements(descriptor, count)
            return descriptor
        finally:
            self.depth -= levels

    def enter(self) -> int:
        self.depth += 1
        if self.depth > MAX_NESTING:
            self.depth -= 1
            raise GrossSyntaxError("set nested too deeply", self.current.position)
        return 1

    def union(self) -> SetDescriptor:
        members = [self.primary()]
        while self.current.kind == "Union":
            self.advance()
            members.append(self.primary())
        if len(members) == 1:
            return members[0]
        return DisjointUnion(tuple(members))

    def primary(self) -> SetDescriptor:
        token = self.current
        kind = token.kind
        if kind == "N":
            self.advance()
            if self.current.kind == "LParen":
                self.advance()
                k = self.natural()
                self.expect("Comma")
                n = self.natural()
                self.expect("RParen")
                return Progression(k, n)
            if self.current.kind == "Backslash":
                return NaturalsMinus(self.removed_elements())
            return Naturals()
        if kind == "Z":
            self.advance()
            if self.current.kind == "Backslash":
                return IntegersMinus(self.removed_elements())
            return Integers()
        if kind == "E":
            self.advance()
            return Progression(2, 2)
        if kind == "O":
            self.advance()
            return Progression(1, 2)
        if kind in _SIMPLE_SETS:
            self.advance()
            return _SIMPLE_SETS[kind]()
        if kind == "P":
            self.advance()
            self.expect("LParen")
            inner = self.set_expr()
            self.expect("RParen")
            return PowerSet(inner)
        if kind == "num":
            return self.interval()
        if kind == "LParen":
            self.advance()
            inner = self.set_expr()
            self.expect("RParen")
            return inner
        raise self.fail(_SET_START)

    def removed_elements(self) -> tuple:
        self.expect("Backslash")
        self.expect("LBrace")
        values = []
        if self.current.kind != "RBrace":
            values.append(self.integer())
            while self.current.kind == "Comma":
                self.advance()
                values.append(self.integer())
        self.expect("RBrace")
        return tuple(values)

    def interval(self) -> IntervalNumerals:
        self.expect("num")
        self.expect("LBracket")
        lower = self.rational()
        self.expect("Comma")
        upper = self.rational()
        if self.current.kind == "RBracket":
            closed = True
        elif self.current.kind == "RParen":
            closed = False
        else:
            raise self.fail(("RBracket", "RParen"))
        self.advance()
        self.expect("At")
        base = self.natural()
        return IntervalNumerals(base, lower, upper, closed)

    def natural(self) -> int:
        token = self.current
        if token.kind != "Number" or "." in token.lexeme:
            raise self.fail(("Number",))
        self.advance()
        return int(token.lexeme)

    def integer(self) -> int:
        if self.current.kind == "Minus":
            self.advance()
            return -self.natural()
        return self.natural()

    def rational(self) -> Fraction:
        negative = False
        if self.current.kind == "Minus":
            self.advance()
            negative = True
        token = self.expect("Number")
        value = Fraction(token.lexeme)
        if self.current.kind == "Slash":
            self.advance()
            denominator = self.expect("Number")
            if Fraction(denominator.lexeme) == 0:
                raise GrossSyntaxError("zero denominator", denominator.position)
            value /= Fraction(denominator.lexeme)
        return -value if negative else value


def parse_set(text: str) -> SetDescriptor:
    """Parse the set grammar of SETS.md"""
    return SetParser(text).parse()


def measure_text(text: str) -> Measure:
    return measure(parse_set(text))
