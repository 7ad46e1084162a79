"""Wire format: rationals as p/q strings, strict field validation."""

from fractions import Fraction as F

import pytest

from kappalab import (
    ClopenInterval,
    DecreasingChain,
    DoubleArrowPoint,
    ExtremeSingleton,
    HalfOpen,
    InteriorDisc,
    NiemytzkiPoint,
    ParamValue,
    ParametricBasicSet,
    SorgenfreyPoint,
    Space,
    TangentDisc,
    validate_regular_open,
)
from kappalab.serialize import (
    SchemaError,
    decode_basic_set,
    decode_chain,
    decode_point,
    decode_roset,
    decode_scalar,
    encode_basic_set,
    encode_chain,
    encode_point,
    encode_roset,
    encode_scalar,
)


def test_scalar_roundtrip():
    assert encode_scalar(F(1, 3)) == "1/3"
    assert encode_scalar(F(4, 2)) == "2"
    assert decode_scalar("1/3") == F(1, 3)
    assert decode_scalar(5) == F(5)
    assert decode_scalar(0.25) == 0.25
    with pytest.raises(SchemaError):
        decode_scalar("1/0")
    with pytest.raises(SchemaError):
        decode_scalar(True)


def test_point_roundtrip():
    pts = [
        SorgenfreyPoint(F(-3, 7)),
        DoubleArrowPoint(F(1, 2), 1),
        NiemytzkiPoint(F(1, 3), F(0)),
        NiemytzkiPoint(0.5, 0.25),
    ]
    for p in pts:
        assert decode_point(encode_point(p)) == p
    with pytest.raises(SchemaError):
        decode_point({"space": "sorgenfrey", "x": "1/2", "extra": 1})


def test_basic_set_roundtrip():
    sets = [
        HalfOpen(F(0), F(1)),
        ClopenInterval(F(0), F(1, 2), include_left_extreme=True),
        ExtremeSingleton(1),
        InteriorDisc(F(0), F(2), F(1)),
        TangentDisc(F(-1, 2), F(1, 4)),
    ]
    for s in sets:
        assert decode_basic_set(encode_basic_set(s)) == s
    with pytest.raises(SchemaError):
        decode_basic_set({"kind": "mystery"})
    with pytest.raises(SchemaError):
        decode_basic_set({"kind": "half_open", "a": "0"})


def test_roset_roundtrip_revalidates():
    s = validate_regular_open(
        Space.NIEMYTZKI, [TangentDisc(F(0), F(1)), TangentDisc(F(3), F(1, 2))]
    )
    assert decode_roset(encode_roset(s)) == s


def test_chain_roundtrip_and_limit():
    comp = ParametricBasicSet(
        "tangent_disc", {"a": ParamValue(F(0)), "r": ParamValue(F(1, 2), F(1), F(0), 1)}
    )
    chain = DecreasingChain(Space.NIEMYTZKI, (comp,), 32)
    wire = encode_chain(chain)
    assert wire["param"] == "n" and wire["depth"] == 32
    assert wire["limit"]["components"] == [{"kind": "tangent_disc", "a": "0", "r": "1/2"}]
    back = decode_chain(wire)
    assert back.at(1) == chain.at(1)
    assert back.depth == 32


def test_chain_rejects_unknown_fields():
    comp = {"kind": "tangent_disc", "a": "0", "r": {"const": "1/2", "over_n": "1"}}
    with pytest.raises(SchemaError):
        decode_chain({"space": "niemytzki", "components": [comp], "bogus": 1})
    with pytest.raises(SchemaError):
        decode_chain({"space": "niemytzki", "components": [dict(comp, color="red")]})
