from hypothesis import strategies as st

from grosscore import normalize
from lexrank import ScoreVector


def rationals(bound=50, max_denominator=12):
    return st.fractions(min_value=-bound, max_value=bound, max_denominator=max_denominator)


def exponents():
    # integer and half-integer gross-powers, infinitesimal to infinite
    return st.fractions(min_value=-3, max_value=3, max_denominator=2)


@st.composite
def gross_numbers(draw, max_terms=4):
    pairs = draw(st.lists(st.tuples(exponents(), rationals()), max_size=max_terms))
    return normalize(pairs)


def nonzero_gross_numbers(max_terms=4):
    return gross_numbers(max_terms).filter(bool)


@st.composite
def positive_gross_numbers(draw, max_terms=4):
    x = draw(nonzero_gross_numbers(max_terms))
    return -x if x.leading_term.coefficient < 0 else x


@st.composite
def score_vectors(draw, k=3, max_score=50):
    scores = draw(st.lists(st.integers(min_value=0, max_value=max_score), min_size=k, max_size=k))
    return ScoreVector(tuple(scores))


def fractional_score_vectors(k=3):
    return st.lists(
        st.fractions(min_value=0, max_value=20, max_denominator=6), min_size=k, max_size=k,
    ).map(lambda scores: ScoreVector(tuple(scores)))


def removed_naturals(max_size=20):
    return st.sets(st.integers(min_value=1, max_value=10**6), max_size=max_size).map(tuple)

