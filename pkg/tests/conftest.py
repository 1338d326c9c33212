from fractions import Fraction

from hypothesis import settings, strategies as st

from kpakns.ncpoly import NCPoly
from kpakns.scalar import CycScalar

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def compositions(draw, max_weight=4):
    w = draw(st.integers(1, max_weight))
    parts, left = [], w
    while left:
        p = draw(st.integers(1, left))
        parts.append(p)
        left -= p
    return tuple(parts)


cyc_scalars = st.builds(CycScalar, small_rationals, small_rationals)

LETTERS = [("a", 0), ("a", 1), ("b", 0), ("b", 2), ("c", 0)]


@st.composite
def ncpolys(draw, rules=None, max_terms=3, max_len=3):
    from kpakns.ncpoly import FREE

    rules = rules or FREE
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        word = tuple(draw(st.lists(st.sampled_from(LETTERS), min_size=0, max_size=max_len)))
        terms[word] = terms.get(word, 0) + draw(st.integers(-3, 3))
    return NCPoly(terms, rules)


def frac(a, b=1):
    return Fraction(a, b)
