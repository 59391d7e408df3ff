"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from syzcert.poly import HomPoly, monomial_basis

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.integers(min_value=1, max_value=4),
)


@st.composite
def hom_polys(draw, min_degree=0, max_degree=6, max_terms=6):
    d = draw(st.integers(min_value=min_degree, max_value=max_degree))
    basis = monomial_basis(d)
    picks = draw(st.lists(st.sampled_from(basis), max_size=max_terms))
    terms = {m: draw(small_rationals) for m in picks}
    return HomPoly(d, terms)


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6, bound=5):
    r = draw(st.integers(min_value=1, max_value=max_rows))
    c = draw(st.integers(min_value=1, max_value=max_cols))
    entries = st.integers(min_value=-bound, max_value=bound)
    return [[draw(entries) for _ in range(c)] for _ in range(r)]
