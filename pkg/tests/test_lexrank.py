import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from errors import DimensionMismatch, InvalidScoreVector, NonIntegerScore, NotRepresentable
from grosscore import Ordering, normalize
from grossparse import to_text
from lexrank import (
    MAX_BIT_RANK_LENGTH,
    METHODS,
    BitRank,
    BinaryRankMethod,
    GrossRankMethod,
    ScoreVector,
    binary_compare,
    binary_rank,
    gross_compare,
    gross_rank,
    leaderboard,
)

from .strategies import fractional_score_vectors, score_vectors

A = ScoreVector((2, 0, 1))
B = ScoreVector((1, 11, 3))


def oracle(a: ScoreVector, b: ScoreVector) -> Ordering:
    return Ordering.from_sign((a.scores > b.scores) - (a.scores < b.scores))


def test_gross_ranks_of_the_medal_table():
    assert gross_rank(A) == normalize([(2, 2), (0, 1)])
    assert to_text(gross_rank(A)) == "2*G^2 + 1"
    assert to_text(gross_rank(B)) == "G^2 + 11*G + 3"
    assert gross_compare(A, B) is Ordering.GREATER


def test_binary_ranks_of_the_medal_table():
    assert binary_rank(A).bits == "11001"
    assert binary_rank(B).bits == "10111111111110111"
    assert binary_rank(A).text == "0.11001"
    assert binary_rank(A).value == Fraction(25, 32)
    assert binary_compare(A, B) is Ordering.GREATER


def test_binary_rank_grows_with_the_tally():
    assert binary_rank(ScoreVector((20, 20, 20))).bit_length == 62
    assert binary_rank(ScoreVector((306, 306, 306))).bit_length == 920


def test_double_precision_limit():
    assert binary_rank(A).fits_double()
    assert binary_rank(ScoreVector((17, 17, 17))).fits_double()
    assert not binary_rank(ScoreVector((20, 20, 20))).fits_double()
    # trailing zeros cost nothing
    assert binary_rank(ScoreVector((53, 0, 0))).fits_double()


def test_empty_tallies():
    rank = binary_rank(ScoreVector((0, 0, 0)))
    assert rank.bits == "00"
    assert rank.value == 0
    assert gross_rank(ScoreVector((0, 0, 0))) == 0


def test_fractional_scores():
    v = ScoreVector(("1/2", 0, 3))
    assert to_text(gross_rank(v)) == "1/2*G^2 + 3"
    with pytest.raises(NonIntegerScore):
        binary_rank(v)


@pytest.mark.parametrize("scores", [(), (-1, 2), (0.5,), (True,)])
def test_invalid_score_vectors(scores):
    with pytest.raises(InvalidScoreVector):
        ScoreVector(scores)


@pytest.mark.parametrize("text", ["", "1,,2", "a,b", "1;2", "1/0", "1,2/0"])
def test_invalid_score_text(text):
    with pytest.raises(InvalidScoreVector):
        ScoreVector.parse(text)


def test_score_vector_text_and_json():
    v = ScoreVector.parse("2, 0, 1/2")
    assert v.scores == (2, 0, Fraction(1, 2))
    assert v.to_text() == "2,0,1/2"
    assert v.to_json() == {"scores": [2, 0, "1/2"]}
    assert ScoreVector.from_json(v.to_json()) == v


def test_bit_rank_json():
    rank = binary_rank(A)
    assert rank.to_json() == {"bits": "11001", "bit_length": 5}
    assert BitRank.from_json(rank.to_json()) == rank
    with pytest.raises(ValueError):
        BitRank.from_json({"bits": "1021", "bit_length": 4})


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        gross_compare(A, ScoreVector((1, 1)))
    with pytest.raises(DimensionMismatch):
        binary_compare(A, ScoreVector((1, 1)))


def test_methods_registry():
    assert isinstance(METHODS["gross"], GrossRankMethod)
    assert isinstance(METHODS["binary"], BinaryRankMethod)
    assert METHODS["gross"].rank_text(A, unicode=True) == "2*①^2 + 1"
    assert METHODS["binary"].rank_json(A) == {"bits": "11001", "bit_length": 5}


def test_leaderboard_orders_best_first():
    entries = leaderboard([B, A], ["B", "A"], METHODS["gross"])
    assert [(e.position, e.label) for e in entries] == [(1, "A"), (2, "B")]


def test_leaderboard_ties_share_a_position():
    vectors = [ScoreVector((1, 0, 0)), ScoreVector((0, 5, 0)), ScoreVector((1, 0, 0)), ScoreVector((2, 0, 0))]
    for method in METHODS.values():
        entries = leaderboard(vectors, ["x", "y", "z", "w"], method)
        assert [(e.position, e.label) for e in entries] == [(1, "w"), (2, "x"), (2, "z"), (4, "y")]


def test_leaderboard_default_labels():
    entries = leaderboard([B, A], None, METHODS["binary"])
    assert [e.label for e in entries] == ["2", "1"]


def test_leaderboard_label_mismatch():
    with pytest.raises(ValueError):
        leaderboard([A, B], ["A"], METHODS["gross"])


def test_comparators_agree_on_every_small_tally():
    vectors = [ScoreVector(scores) for scores in itertools.product(range(7), repeat=3)]
    assert len(vectors) == 343
    for a, b in itertools.combinations(vectors, 2):
        expected = oracle(a, b)
        assert gross_compare(a, b) is expected
        assert binary_compare(a, b) is expected


@given(score_vectors(), score_vectors())
def test_comparators_agree_on_larger_tallies(a, b):
    expected = oracle(a, b)
    assert gross_compare(a, b) is expected
    assert binary_compare(a, b) is expected
    assert gross_compare(b, a) is expected.reverse()


@given(fractional_score_vectors(), fractional_score_vectors())
def test_gross_rank_is_lexicographic_for_rational_scores(a, b):
    assert gross_compare(a, b) is oracle(a, b)


def test_overlong_binary_rank_is_refused():
    assert binary_rank(ScoreVector((MAX_BIT_RANK_LENGTH - 1, 0))).bit_length == MAX_BIT_RANK_LENGTH
    with pytest.raises(NotRepresentable):
        binary_rank(ScoreVector((MAX_BIT_RANK_LENGTH, 0)))
    with pytest.raises(NotRepresentable):
        binary_rank(ScoreVector((10 ** 100,)))


@given(score_vectors())
def test_binary_rank_length_is_total_tally_plus_separators(v):
    assert binary_rank(v).bit_length == sum(v.scores) + v.k - 1


@given(fractional_score_vectors(), st.integers(min_value=0, max_value=2), st.fractions(min_value=0, max_value=10).filter(bool))
def test_gross_rank_grows_with_every_score(v, i, extra):
    scores = list(v.scores)
    scores[i] += extra
    better = ScoreVector(tuple(scores))
    assert gross_compare(better, v) is Ordering.GREATER
    assert gross_compare(v, better) is Ordering.LESS
