"""Points, order, distance."""

from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from kappalab import (
    DoubleArrowPoint,
    NiemytzkiPoint,
    SorgenfreyPoint,
    SpaceMismatchError,
    euclid_dist,
    lex_less,
)
from kappalab.spaces import sq_dist


def test_lex_less_examples():
    assert lex_less(DoubleArrowPoint(F(1, 4), 1), DoubleArrowPoint(F(1, 2), 0))
    assert lex_less(DoubleArrowPoint(F(1, 2), 0), DoubleArrowPoint(F(1, 2), 1))
    assert not lex_less(DoubleArrowPoint(F(1, 2), 1), DoubleArrowPoint(F(1, 2), 1))


def test_lex_less_space_mismatch():
    with pytest.raises((SpaceMismatchError, AttributeError)):
        lex_less(DoubleArrowPoint(F(1, 2), 0), SorgenfreyPoint(F(1, 2)))


da_points = st.tuples(
    st.fractions(min_value=0, max_value=1), st.integers(min_value=0, max_value=1)
).map(lambda t: DoubleArrowPoint(*t))


@given(da_points, da_points, da_points)
def test_lex_less_strict_total_order(a, b, c):
    # antisymmetry
    assert not (lex_less(a, b) and lex_less(b, a))
    # totality
    assert a == b or lex_less(a, b) or lex_less(b, a)
    # transitivity
    if lex_less(a, b) and lex_less(b, c):
        assert lex_less(a, c)


def test_euclid_dist_examples():
    p = NiemytzkiPoint(F(0), F(2))
    assert euclid_dist(p, p) == 0
    assert euclid_dist(NiemytzkiPoint(F(0), F(0)), NiemytzkiPoint(F(3), F(4))) == 5
    d = euclid_dist(NiemytzkiPoint(F(1, 3), F(1, 6)), NiemytzkiPoint(F(0), F(1)))
    # oracle: exact squared distance 1/9 + 25/36 = 29/36
    assert sq_dist(NiemytzkiPoint(F(1, 3), F(1, 6)), NiemytzkiPoint(F(0), F(1))) == F(29, 36)
    assert abs(d - (29 ** 0.5) / 6) < 1e-12


@given(
    st.tuples(
        st.fractions(min_value=-4, max_value=4), st.fractions(min_value=0, max_value=4)
    ),
    st.tuples(
        st.fractions(min_value=-4, max_value=4), st.fractions(min_value=0, max_value=4)
    ),
    st.tuples(
        st.fractions(min_value=-4, max_value=4), st.fractions(min_value=0, max_value=4)
    ),
)
def test_triangle_inequality(t1, t2, t3):
    p, q, r = (NiemytzkiPoint(*t) for t in (t1, t2, t3))
    assert float(euclid_dist(p, r)) <= float(euclid_dist(p, q)) + float(euclid_dist(q, r)) + 1e-9


def test_point_validation():
    with pytest.raises(ValueError):
        NiemytzkiPoint(F(0), F(-1))
    with pytest.raises(ValueError):
        DoubleArrowPoint(F(3, 2), 0)
    with pytest.raises(ValueError):
        DoubleArrowPoint(F(1, 2), 2)
