"""Base elements: construction, membership, closures."""

from fractions import Fraction as F

import pytest

from kappalab import (
    ClopenInterval,
    DoubleArrowPoint,
    ExtremeSingleton,
    HalfOpen,
    InteriorDisc,
    NiemytzkiPoint,
    OpenInterval,
    SorgenfreyPoint,
    TangentDisc,
    basic_closure_member,
    basic_member,
)
from kappalab.basesets import basic_neighborhood


def test_constructor_guards():
    with pytest.raises(ValueError):
        HalfOpen(F(1), F(1))
    with pytest.raises(ValueError):
        ClopenInterval(F(1, 2), F(1, 4))
    with pytest.raises(ValueError):
        ClopenInterval(F(1, 4), F(1, 2), include_left_extreme=True)
    with pytest.raises(ValueError):
        InteriorDisc(F(0), F(1), F(2))  # r > cy
    with pytest.raises(ValueError):
        InteriorDisc(F(0), F(3), F(3, 2))  # r > 1
    with pytest.raises(ValueError):
        TangentDisc(F(0), F(0))


def test_sorgenfrey_membership():
    u = HalfOpen(F(0), F(1))
    assert basic_member(u, SorgenfreyPoint(F(0)))  # left endpoint included
    assert not basic_member(u, SorgenfreyPoint(F(1)))
    o = OpenInterval(F(0), F(1))
    assert not basic_member(o, SorgenfreyPoint(F(0)))
    assert basic_member(o, SorgenfreyPoint(F(1, 2)))


def test_niemytzki_membership():
    bs = TangentDisc(F(0), F(1))
    assert basic_member(bs, NiemytzkiPoint(F(0), F(0)))  # own tangency point
    assert not basic_member(bs, NiemytzkiPoint(F(1, 2), F(0)))  # other axis points
    disc = InteriorDisc(F(0), F(2), F(1))
    # distance 1.1 from the center: squared oracle 0 + (11/10)^2 > 1
    assert (F(0)) ** 2 + (F(9, 10) - 2) ** 2 == F(121, 100) > 1
    assert not basic_member(disc, NiemytzkiPoint(F(0), F(9, 10)))
    assert basic_member(disc, NiemytzkiPoint(F(0), F(3, 2)))
    assert not basic_member(disc, NiemytzkiPoint(F(0), F(0)))  # open discs miss the axis


def test_double_arrow_membership_and_extremes():
    c = ClopenInterval(F(1, 4), F(1, 2))
    assert basic_member(c, DoubleArrowPoint(F(1, 4), 1))  # left end (a,1)
    assert not basic_member(c, DoubleArrowPoint(F(1, 4), 0))
    assert basic_member(c, DoubleArrowPoint(F(1, 2), 0))  # right end (b,0)
    assert not basic_member(c, DoubleArrowPoint(F(1, 2), 1))
    e = ClopenInterval(F(0), F(1, 2), include_left_extreme=True)
    assert basic_member(e, DoubleArrowPoint(F(0), 0))
    assert basic_member(ExtremeSingleton(1), DoubleArrowPoint(F(1), 1))
    assert not basic_member(ExtremeSingleton(1), DoubleArrowPoint(F(1), 0))


def _sorgenfrey_closure_oracle(s, x, depth=12):
    """x adheres to s iff every [x, x+2^-k) meets s (scan on a rational grid)."""
    for k in range(1, depth + 1):
        delta = F(1, 2**k)
        hit = any(
            basic_member(s, SorgenfreyPoint(x + delta * F(j, 16)))
            for j in range(16)
        )
        if not hit:
            return False
    return True


def test_sorgenfrey_closures():
    o = OpenInterval(F(0), F(1))
    # cl (0,1) = [0,1): 0 in, 1 out
    assert basic_closure_member(o, SorgenfreyPoint(F(0)))
    assert not basic_closure_member(o, SorgenfreyPoint(F(1)))
    # oracle agreement on a sample of points
    for x in (F(-1, 2), F(0), F(1, 2), F(1), F(3, 2)):
        assert basic_closure_member(o, SorgenfreyPoint(x)) == _sorgenfrey_closure_oracle(o, x)
    h = HalfOpen(F(0), F(1))
    for x in (F(-1, 4), F(0), F(1, 2), F(1)):
        assert basic_closure_member(h, SorgenfreyPoint(x)) == _sorgenfrey_closure_oracle(h, x)


def test_double_arrow_closure_is_itself():
    c = ClopenInterval(F(1, 10), F(1, 5))
    for t, side in ((F(1, 10), 0), (F(1, 10), 1), (F(3, 20), 0), (F(1, 5), 0), (F(1, 5), 1)):
        p = DoubleArrowPoint(t, side)
        assert basic_closure_member(c, p) == basic_member(c, p)
    # the pinch-chain closure rule: (1/10, 0) adheres to [(x_k,1),(1/5,0)] when x_k < 1/10
    ck = ClopenInterval(F(9, 100), F(1, 5))
    assert basic_closure_member(ck, DoubleArrowPoint(F(1, 10), 0))


def test_niemytzki_closures():
    disc = InteriorDisc(F(0), F(1), F(1))  # tangent to the axis at (0,0)
    assert basic_closure_member(disc, NiemytzkiPoint(F(0), F(0)))
    assert not basic_member(disc, NiemytzkiPoint(F(0), F(0)))
    # oracle: B*(0, 1/2)'s open part meets the disc (both contain (0, y) for small y)
    probe = TangentDisc(F(0), F(1, 2))
    y = F(1, 100)
    assert basic_member(probe, NiemytzkiPoint(F(0), y)) and basic_member(
        disc, NiemytzkiPoint(F(0), y)
    )
    # closed-disc rule elsewhere
    assert basic_closure_member(disc, NiemytzkiPoint(F(1), F(1)))  # boundary circle
    assert not basic_closure_member(disc, NiemytzkiPoint(F(2), F(0)))
    bs = TangentDisc(F(0), F(1))
    assert basic_closure_member(bs, NiemytzkiPoint(F(0), F(2)))  # top of the disc
    assert not basic_closure_member(bs, NiemytzkiPoint(F(1, 2), F(0)))


def test_member_implies_closure_member():
    sets = [
        HalfOpen(F(0), F(1)),
        OpenInterval(F(0), F(1)),
        ClopenInterval(F(1, 4), F(3, 4)),
        InteriorDisc(F(0), F(2), F(1)),
        TangentDisc(F(0), F(1)),
    ]
    pts = {
        "sorgenfrey": [SorgenfreyPoint(F(k, 8)) for k in range(-8, 17)],
        "double_arrow": [DoubleArrowPoint(F(k, 8), s) for k in range(0, 9) for s in (0, 1)],
        "niemytzki": [
            NiemytzkiPoint(F(i, 4), F(j, 4)) for i in range(-8, 9) for j in range(0, 13)
        ],
    }
    for s in sets:
        for p in pts[s.space.value]:
            if basic_member(s, p):
                assert basic_closure_member(s, p)


def test_basic_neighborhoods_contain_their_point():
    pts = [
        SorgenfreyPoint(F(1, 3)),
        DoubleArrowPoint(F(1, 2), 0),
        DoubleArrowPoint(F(1, 2), 1),
        DoubleArrowPoint(F(0), 0),
        NiemytzkiPoint(F(1), F(0)),
        NiemytzkiPoint(F(1), F(1, 2)),
    ]
    for p in pts:
        for k in (1, 3, 6):
            assert basic_member(basic_neighborhood(p, k), p)
