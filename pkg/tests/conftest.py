from fractions import Fraction

from hypothesis import strategies as st

from kleinian_d import Poly, Scalar

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def scalars(draw):
    return Scalar(draw(small), draw(small))


@st.composite
def polys(draw, max_degree=6):
    coeffs = draw(st.lists(scalars(), min_size=0, max_size=max_degree + 1))
    return Poly(coeffs)


def F(a, b=1):
    return Fraction(a, b)
