# lexrank.py
"""Lexicographic ranking of score vectors.

Two rival counters turn a priority-ordered tally (gold, silver, bronze, ...)
into one comparable value:

* the grossone rank  sum(scores[i] * G^(k-1-i)), valid for any nonnegative
  rational scores;
* the binary rank    0.1..10 1..10 1..1 (unary runs of ones separated by
  zeros), valid for integer tallies only and growing one bit per medal.
"""
import functools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from errors import DimensionMismatch, InvalidScoreVector, NonIntegerScore, NotRepresentable
from grosscore import GrossNumber, Ordering, as_fraction, compare, monomial, normalize
from grossparse import to_text

logger = logging.getLogger("lexrank")

# Significand width of an IEEE-754 double, hidden bit included
DOUBLE_SIGNIFICAND_BITS = 53
# Longest binary rank built; one bit per medal plus the separators
MAX_BIT_RANK_LENGTH = 1 << 24


@dataclass(frozen=True)
class ScoreVector:
    """Tallies in priority order: index 0 is the most important criterion"""
    scores: tuple

    def __post_init__(self):
        try:
            scores = tuple(as_fraction(s) for s in self.scores)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise InvalidScoreVector(f"scores must be exact rationals: {e}") from e
        if not scores:
            raise InvalidScoreVector("a score vector needs at least one score")
        for score in scores:
            if score < 0:
                raise InvalidScoreVector(f"scores must be nonnegative, got {score}")
        object.__setattr__(self, "scores", scores)

    @property
    def k(self) -> int:
        return len(self.scores)

    def is_integral(self) -> bool:
        return all(score.denominator == 1 for score in self.scores)

    @classmethod
    def parse(cls, text: str) -> "ScoreVector":
        """Parse "2,0,1" or "1/2,3/4"."""
        pieces = [piece.strip() for piece in text.split(",")]
        if any(not piece for piece in pieces):
            raise InvalidScoreVector(f"empty score in {text!r}")
        return cls(tuple(pieces))

    def to_text(self) -> str:
        return ",".join(str(score) for score in self.scores)

    def to_json(self) -> dict:
        return {"scores": [_score_json(score) for score in self.scores]}

    @classmethod
    def from_json(cls, obj: dict) -> "ScoreVector":
        return cls(tuple(obj["scores"]))


def _score_json(score: Fraction):
    # integers stay JSON numbers, fractions travel as "p/q" strings
    return score.numerator if score.denominator == 1 else str(score)


@dataclass(frozen=True)
class BitRank:
    """Binary fraction 0.<bits> produced by the binary rank"""
    bits: str

    @property
    def bit_length(self) -> int:
        return len(self.bits)

    @property
    def numerator(self) -> int:
        return int(self.bits, 2) if self.bits else 0

    @property
    def value(self) -> Fraction:
        """Exact value numerator / 2^bit_length"""
        return Fraction(self.numerator, 1 << self.bit_length)

    @property
    def text(self) -> str:
        return f"0.{self.bits}" if self.bits else "0"

    def fits_double(self) -> bool:
        """Whether a double holds this value exactly"""
        first = self.bits.find("1")
        if first < 0:
            return True
        last = self.bits.rfind("1")
        return last - first + 1 <= DOUBLE_SIGNIFICAND_BITS

    def to_json(self) -> dict:
        return {"bits": self.bits, "bit_length": self.bit_length}

    @classmethod
    def from_json(cls, obj: dict) -> "BitRank":
        rank = cls(obj["bits"])
        if set(rank.bits) - {"0", "1"} or rank.bit_length != obj.get("bit_length", rank.bit_length):
            raise ValueError(f"malformed bit rank {obj!r}")
        return rank


def _check_dimensions(a: ScoreVector, b: ScoreVector) -> None:
    if a.k != b.k:
        raise DimensionMismatch(f"cannot compare {a.k} criteria with {b.k}")


def gross_rank(v: ScoreVector) -> GrossNumber:
    """scores[0]*G^(k-1) + ... + scores[k-1]*G^0"""
    return normalize(
        monomial(score, v.k - 1 - i).terms[0]
        for i, score in enumerate(v.scores)
        if score
    )


def gross_compare(a: ScoreVector, b: ScoreVector) -> Ordering:
    _check_dimensions(a, b)
    return compare(gross_rank(a), gross_rank(b))


def binary_rank(v: ScoreVector) -> BitRank:
    """Unary runs of ones, one run per criterion, separated by single zeros"""
    for score in v.scores:
        if score.denominator != 1:
            raise NonIntegerScore(f"the binary rank takes integer tallies only, got {score}")
    length = sum(score.numerator for score in v.scores) + v.k - 1
    if length > MAX_BIT_RANK_LENGTH:
        raise NotRepresentable(f"binary rank of {length} bits is too long to build")
    bits ="0".join("1" * score.numerator for score in v.scores)
    logger.debug("binary rank of %s uses %d bits", v.to_text(), len(bits))
    return BitRank(bits)


def binary_compare(a: ScoreVector, b: ScoreVector) -> Ordering:
    _check_dimensions(a, b)
    left, right = binary_rank(a).value, binary_rank(b).value
    return Ordering.from_sign((left > right) - (left < right))


class RankMethod(ABC):
    """A counter turning score vectors into comparable ranks"""
    name: str

    @abstractmethod
    def rank(self, v: ScoreVector):
        pass

    @abstractmethod
    def compare(self, a: ScoreVector, b: ScoreVector) -> Ordering:
        pass

    @abstractmethod
    def rank_text(self, v: ScoreVector, unicode: bool = False) -> str:
        pass

    @abstractmethod
    def rank_json(self, v: ScoreVector):
        pass


class GrossRankMethod(RankMethod):
    name = "gross"

    def rank(self, v: ScoreVector) -> GrossNumber:
        return gross_rank(v)

    def compare(self, a: ScoreVector, b: ScoreVector) -> Ordering:
        return gross_compare(a, b)

    def rank_text(self, v: ScoreVector, unicode: bool = False) -> str:
        return to_text(gross_rank(v), unicode)

    def rank_json(self, v: ScoreVector) -> str:
        return to_text(gross_rank(v))


class BinaryRankMethod(RankMethod):
    name = "binary"

    def rank(self, v: ScoreVector) -> BitRank:
        return binary_rank(v)

    def compare(self, a: ScoreVector, b: ScoreVector) -> Ordering:
        return binary_compare(a, b)

    def rank_text(self, v: ScoreVector, unicode: bool = False) -> str:
        return binary_rank(v).text

    def rank_json(self, v: ScoreVector) -> dict:
        return binary_rank(v).to_json()


METHODS = {method.name: method for method in (GrossRankMethod(), BinaryRankMethod())}


@dataclass(frozen=True)
class LeaderboardEntry:
    position: int
    label: str
    vector: ScoreVector


def leaderboard(vectors: Sequence[ScoreVector], labels: Optional[Sequence[str]], method: RankMethod) -> list:
    """Best first; ties keep input order and share a position (1, 1, 3, ...)"""
    if labels is None or not labels:
        labels = [str(i + 1) for i in range(len(vectors))]
    if len(labels) != len(vectors):
        raise ValueError(f"{len(labels)} labels for {len(vectors)} score vectors")
    for vector in vectors[1:]:
        _check_dimensions(vectors[0], vector)

    def by_rank(left, right) -> int:
        # descending order of rank
        return -method.compare(left[1], right[1]).value

    ordered = sorted(zip(labels, vectors), key=functools.cmp_to_key(by_rank))
    entries = []
    for index, (label, vector) in enumerate(ordered):
        if entries and method.compare(vector, entries[-1].vector) is Ordering.EQUAL:
            position = entries[-1].position
        else:
            position = index + 1
        entries.append(LeaderboardEntry(position, label, vector))
    logger.debug("leaderboard of %d entries by %s rank", len(entries), method.name)
    return entries
