"""Hypothesis strategies shared by the property suites."""

from fractions import Fraction

from hypothesis import strategies as st

from tightlie.exact import ExactScalar, Mat

small_int = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, small_int, st.integers(min_value=1, max_value=5))
nonzero_rationals = rationals.filter(bool)
scalars = st.builds(ExactScalar, rationals, rationals)


def matrices(n: int, real: bool = False):
    entry = rationals if real else scalars
    return st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n, max_size=n).map(Mat)


def coefficient_vectors(k: int):
    return st.lists(rationals, min_size=k, max_size=k)


def combo(coeffs, mats):
    out = Mat.zeros(mats[0].dim)
    for c, M in zip(coeffs, mats):
        if c:
            out = out + M.scale(c)
    return out
