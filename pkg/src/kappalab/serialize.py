"""JSON encoding of points, sets, chains and reports.

Exact rationals travel as "p/q" strings (plain integers as "n"); binary64
values stay JSON numbers.  Field names are part of the wire contract, see
docs/schema.md.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .basesets import (
    BasicOpenSet,
    ClopenInterval,
    ExtremeSingleton,
    HalfOpen,
    InteriorDisc,
    OpenInterval,
    TangentDisc,
)
from .numerics import Scalar
from .rosets import (
    DecreasingChain,
    ParametricBasicSet,
    ParamValue,
    RegularOpenSet,
    validate_regular_open,
)
from .spaces import DoubleArrowPoint, NiemytzkiPoint, Point, SorgenfreyPoint, Space


class SchemaError(ValueError):
    """Malformed or unknown-field JSON input."""


def encode_scalar(v: Scalar):
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return str(v.numerator)
        return f"{v.numerator}/{v.denominator}"
    return float(v)


def decode_scalar(v) -> Scalar:
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {v!r}") from exc
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SchemaError(f"bad scalar {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def _expect_fields(obj: dict, required: set[str], optional: set[str] = frozenset()):
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object, got {obj!r}")
    keys = set(obj)
    missing = required - keys
    unknown = keys - required - optional
    if missing:
        raise SchemaError(f"missing fields {sorted(missing)} in {obj!r}")
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)} in {obj!r}")


def encode_point(p: Point) -> dict:
    if isinstance(p, SorgenfreyPoint):
        return {"space": "sorgenfrey", "x": encode_scalar(p.x)}
    if isinstance(p, DoubleArrowPoint):
        return {"space": "double_arrow", "t": encode_scalar(p.t), "side": p.side}
    if isinstance(p, NiemytzkiPoint):
        return {"space": "niemytzki", "x": encode_scalar(p.x), "y": encode_scalar(p.y)}
    raise TypeError(f"unknown point {p!r}")


def decode_point(obj: dict) -> Point:
    if not isinstance(obj, dict) or "space" not in obj:
        raise SchemaError(f"bad point {obj!r}")
    space = obj["space"]
    if space == "sorgenfrey":
        _expect_fields(obj, {"space", "x"})
        return SorgenfreyPoint(decode_scalar(obj["x"]))
    if space == "double_arrow":
        _expect_fields(obj, {"space", "t", "side"})
        return DoubleArrowPoint(decode_scalar(obj["t"]), obj["side"])
    if space == "niemytzki":
        _expect_fields(obj, {"space", "x", "y"})
        return NiemytzkiPoint(decode_scalar(obj["x"]), decode_scalar(obj["y"]))
    raise SchemaError(f"unknown space {space!r}")


def encode_basic_set(s: BasicOpenSet) -> dict:
    if isinstance(s, HalfOpen):
        return {"kind": "half_open", "a": encode_scalar(s.a), "b": encode_scalar(s.b)}
    if isinstance(s, OpenInterval):
        return {"kind": "open_interval", "a": encode_scalar(s.a), "b": encode_scalar(s.b)}
    if isinstance(s, ClopenInterval):
        out = {"kind": "clopen_interval", "a": encode_scalar(s.a), "b": encode_scalar(s.b)}
        if s.include_left_extreme:
            out["include_left_extreme"] = True
        if s.include_right_extreme:
            out["include_right_extreme"] = True
        return out
    if isinstance(s, ExtremeSingleton):
        return {"kind": "extreme_singleton", "side": s.side}
    if isinstance(s, InteriorDisc):
        return {
            "kind": "interior_disc",
            "cx": encode_scalar(s.cx),
            "cy": encode_scalar(s.cy),
            "r": encode_scalar(s.r),
        }
    if isinstance(s, TangentDisc):
        return {"kind": "tangent_disc", "a": encode_scalar(s.a), "r": encode_scalar(s.r)}
    raise TypeError(f"unknown base set {s!r}")


def decode_basic_set(obj: dict) -> BasicOpenSet:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"bad base set {obj!r}")
    kind = obj["kind"]
    if kind == "half_open":
        _expect_fields(obj, {"kind", "a", "b"})
        return HalfOpen(decode_scalar(obj["a"]), decode_scalar(obj["b"]))
    if kind == "open_interval":
        _expect_fields(obj, {"kind", "a", "b"})
        return OpenInterval(decode_scalar(obj["a"]), decode_scalar(obj["b"]))
    if kind == "clopen_interval":
        _expect_fields(
            obj, {"kind", "a", "b"}, {"include_left_extreme", "include_right_extreme"}
        )
        return ClopenInterval(
            decode_scalar(obj["a"]),
            decode_scalar(obj["b"]),
            bool(obj.get("include_left_extreme", False)),
            bool(obj.get("include_right_extreme", False)),
        )
    if kind == "extreme_singleton":
        _expect_fields(obj, {"kind", "side"})
        return ExtremeSingleton(obj["side"])
    if kind == "interior_disc":
        _expect_fields(obj, {"kind", "cx", "cy", "r"})
        return InteriorDisc(
            decode_scalar(obj["cx"]), decode_scalar(obj["cy"]), decode_scalar(obj["r"])
        )
    if kind == "tangent_disc":
        _expect_fields(obj, {"kind", "a", "r"})
        return TangentDisc(decode_scalar(obj["a"]), decode_scalar(obj["r"]))
    raise SchemaError(f"unknown base set kind {kind!r}")


_SPACES = {s.value: s for s in Space}


def encode_roset(s: RegularOpenSet) -> dict:
    cert = (
        "exact"
        if s.certificate.method == "exact"
        else {"sampled": s.certificate.n_samples}
    )
    return {
        "space": s.space.value,
        "components": [encode_basic_set(c) for c in s.components],
        "certificate": cert,
    }


def decode_roset(obj: dict) -> RegularOpenSet:
    _expect_fields(obj, {"space", "components"}, {"certificate"})
    space = _SPACES.get(obj["space"])
    if space is None:
        raise SchemaError(f"unknown space {obj['space']!r}")
    comps = [decode_basic_set(c) for c in obj["components"]]
    return validate_regular_open(space, comps)


def encode_param_value(v: ParamValue) -> dict:
    out = {"const": encode_scalar(v.const)}
    if v.over_n:
        out["over_n"] = encode_scalar(v.over_n)
    if v.over_n2:
        out["over_n2"] = encode_scalar(v.over_n2)
    if v.shift:
        out["shift"] = v.shift
    return out


def decode_param_value(obj) -> ParamValue:
    if isinstance(obj, (str, int, float)):
        return ParamValue(decode_scalar(obj))
    _expect_fields(obj, {"const"}, {"over_n", "over_n2", "shift"})
    return ParamValue(
        decode_scalar(obj["const"]),
        decode_scalar(obj.get("over_n", "0")),
        decode_scalar(obj.get("over_n2", "0")),
        int(obj.get("shift", 0)),
    )


_FLAG_FIELDS = {"include_left_extreme", "include_right_extreme"}


def encode_parametric_set(s: ParametricBasicSet) -> dict:
    out = {"kind": s.kind}
    for name, pv in sorted(s.params.items()):
        out[name] = encode_param_value(pv)
    for name, val in sorted(s.flags.items()):
        out[name] = val
    return out


def decode_parametric_set(obj: dict) -> ParametricBasicSet:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"bad parametric set {obj!r}")
    kind = obj["kind"]
    from .rosets import _PARAM_FIELDS  # wire names match constructor names

    if kind not in _PARAM_FIELDS:
        raise SchemaError(f"unknown parametric kind {kind!r}")
    fields = _PARAM_FIELDS[kind]
    _expect_fields(obj, {"kind", *fields}, _FLAG_FIELDS)
    params = {name: decode_param_value(obj[name]) for name in fields}
    flags = {name: bool(obj[name]) for name in _FLAG_FIELDS if name in obj}
    return ParametricBasicSet(kind, params, flags)


def encode_chain(chain: DecreasingChain) -> dict:
    return {
        "space": chain.space.value,
        "param": "n",
        "depth": chain.depth,
        "components": [encode_parametric_set(c) for c in chain.components],
        "limit": {
            "space": chain.space.value,
            "components": [
                encode_basic_set(c.at_limit()) for c in chain.components if _limit_nonempty(c)
            ],
        },
    }


def _limit_nonempty(c: ParametricBasicSet) -> bool:
    try:
        c.at_limit()
        return True
    except ValueError:
        return False


def decode_chain(obj: dict) -> DecreasingChain:
    _expect_fields(obj, {"space", "components"}, {"param", "depth", "limit"})
    space = _SPACES.get(obj["space"])
    if space is None:
        raise SchemaError(f"unknown space {obj['space']!r}")
    if obj.get("param", "n") != "n":
        raise SchemaError("chains are indexed by the parameter 'n'")
    comps = tuple(decode_parametric_set(c) for c in obj["components"])
    return DecreasingChain(space, comps, int(obj.get("depth", 64)))


def dumps_canonical(payload) -> str:
    """Deterministic JSON: sorted keys, no float formatting drift."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True)
