"""Parametric basic open sets and their exact membership/closure predicates.

Each space has a fixed repertoire of base elements:

* Sorgenfrey: ``HalfOpen(a, b)`` = [a, b), and ``OpenInterval(a, b)`` = (a, b)
  with rational endpoints.  Open intervals exist only so that candidate
  function families over them can be expressed (and refuted); they are not
  regular open and the union validator rejects them.
* Double arrow: ``ClopenInterval(a, b)`` = the order interval [(a,1), (b,0)],
  optionally extended by the isolated extreme points (0,0)/(1,1), plus
  ``ExtremeSingleton`` for those isolated points alone.
* Niemytzki: ``InteriorDisc(cx, cy, r)`` = the open Euclidean disc
  B((cx,cy), r) with 0 < r <= cy and r <= 1, and ``TangentDisc(a, r)`` =
  {(a,0)} union B((a,r), r) with 0 < r <= 1.

Closure membership is decided by closed-form case analysis in each space's
own topology:

* Sorgenfrey: cl [a,b) = [a,b) (clopen); cl (a,b) = [a,b) (the left endpoint
  is a limit of right-approaching points, the right endpoint is not).
* Double arrow: clopen intervals are their own closure.
* Niemytzki: the closure of a base disc is its closed Euclidean disc; for a
  disc tangent to the axis (r = cy, or any tangent disc) the tangency point
  lies in that closed disc already.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .numerics import Scalar, as_scalar, check_same_mode, eq, is_zero, le, lt, sq
from .spaces import (
    DoubleArrowPoint,
    NiemytzkiPoint,
    Point,
    SorgenfreyPoint,
    Space,
    SpaceMismatchError,
    lex_le,
    sq_dist,
)


@dataclass(frozen=True)
class HalfOpen:
    """Sorgenfrey base interval [a, b)."""

    a: Scalar
    b: Scalar

    space = Space.SORGENFREY
    kind = "half_open"

    def __post_init__(self):
        a, b = as_scalar(self.a), as_scalar(self.b)
        if not (isinstance(a, Fraction) and isinstance(b, Fraction)):
            raise ValueError("Sorgenfrey endpoints must be exact rationals")
        if not a < b:
            raise ValueError(f"need a < b, got [{a}, {b})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class OpenInterval:
    """Sorgenfrey open interval (a, b) with rational endpoints.

    Not regular open in the Sorgenfrey topology: cl (a,b) = [a,b), whose
    interior [a,b) strictly contains (a,b).
    """

    a: Scalar
    b: Scalar

    space = Space.SORGENFREY
    kind = "open_interval"

    def __post_init__(self):
        a, b = as_scalar(self.a), as_scalar(self.b)
        if not (isinstance(a, Fraction) and isinstance(b, Fraction)):
            raise ValueError("Sorgenfrey endpoints must be exact rationals")
        if not a < b:
            raise ValueError(f"need a < b, got ({a}, {b})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class ClopenInterval:
    """Double arrow clopen order interval [(a,1), (b,0)].

    With ``include_left_extreme`` (only when a = 0) the isolated minimum
    (0,0) joins the set; with ``include_right_extreme`` (only when b = 1) the
    isolated maximum (1,1) does.
    """

    a: Scalar
    b: Scalar
    include_left_extreme: bool = False
    include_right_extreme: bool = False

    space = Space.DOUBLE_ARROW
    kind = "clopen_interval"

    def __post_init__(self):
        a, b = as_scalar(self.a), as_scalar(self.b)
        if not (isinstance(a, Fraction) and isinstance(b, Fraction)):
            raise ValueError("double arrow endpoints must be exact rationals")
        if not (0 <= a < b <= 1):
            raise ValueError(f"need 0 <= a < b <= 1, got a={a}, b={b}")
        if self.include_left_extreme and a != 0:
            raise ValueError("include_left_extreme requires a = 0")
        if self.include_right_extreme and b != 1:
            raise ValueError("include_right_extreme requires b = 1")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class ExtremeSingleton:
    """One of the isolated double arrow extremes: {(0,0)} (side 0) or {(1,1)}."""

    side: int

    space = Space.DOUBLE_ARROW
    kind = "extreme_singleton"

    def __post_init__(self):
        if self.side not in (0, 1):
            raise ValueError("side must be 0 (minimum) or 1 (maximum)")

    @property
    def point(self) -> DoubleArrowPoint:
        return DoubleArrowPoint(Fraction(self.side), self.side)


@dataclass(frozen=True)
class InteriorDisc:
    """Open Euclidean disc B((cx, cy), r), disjoint from the axis: r <= cy."""

    cx: Scalar
    cy: Scalar
    r: Scalar

    space = Space.NIEMYTZKI
    kind = "interior_disc"

    def __post_init__(self):
        cx, cy, r = as_scalar(self.cx), as_scalar(self.cy), as_scalar(self.r)
        check_same_mode(cx, cy, r)
        if not lt(0, r) or not le(r, cy) or not le(r, 1):
            raise ValueError(f"need 0 < r <= cy and r <= 1, got cy={cy}, r={r}")
        object.__setattr__(self, "cx", cx)
        object.__setattr__(self, "cy", cy)
        object.__setattr__(self, "r", r)

    @property
    def center(self) -> NiemytzkiPoint:
        return NiemytzkiPoint(self.cx, self.cy)

    @property
    def axis_tangent(self) -> bool:
        """True when the open disc touches the axis (r = cy)."""
        return eq(self.r, self.cy)


@dataclass(frozen=True)
class TangentDisc:
    """Axis neighborhood {(a, 0)} union B((a, r), r)."""

    a: Scalar
    r: Scalar

    space = Space.NIEMYTZKI
    kind = "tangent_disc"

    def __post_init__(self):
        a, r = as_scalar(self.a), as_scalar(self.r)
        check_same_mode(a, r)
        if not lt(0, r) or not le(r, 1):
            raise ValueError(f"need 0 < r <= 1, got r={r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "r", r)

    @property
    def center(self) -> NiemytzkiPoint:
        return NiemytzkiPoint(self.a, self.r)

    @property
    def axis_point(self) -> NiemytzkiPoint:
        return NiemytzkiPoint(self.a, self.a * 0)


BasicOpenSet = (
    HalfOpen | OpenInterval | ClopenInterval | ExtremeSingleton | InteriorDisc | TangentDisc
)

SORGENFREY_KINDS = (HalfOpen, OpenInterval)
DOUBLE_ARROW_KINDS = (ClopenInterval, ExtremeSingleton)
NIEMYTZKI_KINDS = (InteriorDisc, TangentDisc)


def _check_point(s: BasicOpenSet, p: Point) -> None:
    if s.space is not p.space:
        raise SpaceMismatchError(f"set in {s.space}, point in {p.space}")


def basic_member(s: BasicOpenSet, p: Point) -> bool:
    """Exact membership of a point in a base element."""
    _check_point(s, p)
    if isinstance(s, HalfOpen):
        return le(s.a, p.x) and lt(p.x, s.b)
    if isinstance(s, OpenInterval):
        return lt(s.a, p.x) and lt(p.x, s.b)
    if isinstance(s, ClopenInterval):
        left = DoubleArrowPoint(s.a, 1)
        right = DoubleArrowPoint(s.b, 0)
        if lex_le(left, p) and lex_le(p, right):
            return True
        if s.include_left_extreme and p == DoubleArrowPoint(Fraction(0), 0):
            return True
        if s.include_right_extreme and p == DoubleArrowPoint(Fraction(1), 1):
            return True
        return False
    if isinstance(s, ExtremeSingleton):
        return p == s.point
    if isinstance(s, InteriorDisc):
        if is_zero(p.y):
            return False  # open disc never meets the axis
        return lt(sq_dist(p, s.center), sq(s.r))
    if isinstance(s, TangentDisc):
        if is_zero(p.y):
            return eq(p.x, s.a)
        return lt(sq_dist(p, s.center), sq(s.r))
    raise TypeError(f"unknown base set {s!r}")


def basic_closure_member(s: BasicOpenSet, p: Point) -> bool:
    """Membership in the closure of a base element, in its own topology."""
    _check_point(s, p)
    if isinstance(s, HalfOpen):
        return le(s.a, p.x) and lt(p.x, s.b)
    if isinstance(s, OpenInterval):
        # Every [a, a+d) meets (a, b), so the left endpoint is adherent;
        # no [b, b+d) does, so the right endpoint is not.
        return le(s.a, p.x) and lt(p.x, s.b)
    if isinstance(s, (ClopenInterval, ExtremeSingleton)):
        return basic_member(s, p)
    if isinstance(s, InteriorDisc):
        return le(sq_dist(p, s.center), sq(s.r))
    if isinstance(s, TangentDisc):
        return le(sq_dist(p, s.center), sq(s.r))
    raise TypeError(f"unknown base set {s!r}")


def basic_neighborhood(p: Point, k: int) -> BasicOpenSet:
    """The k-th canonical shrinking basic neighborhood of a point (k >= 1)."""
    if isinstance(p, SorgenfreyPoint):
        return HalfOpen(p.x, p.x + Fraction(1, 2**k))
    if isinstance(p, DoubleArrowPoint):
        zero, one = Fraction(0), Fraction(1)
        if p.t == 0 and p.side == 0:
            return ExtremeSingleton(0)
        if p.t == 1 and p.side == 1:
            return ExtremeSingleton(1)
        step = Fraction(1, 2**k)
        if p.side == 0:
            return ClopenInterval(max(zero, p.t - min(step, p.t / 2)), p.t)
        return ClopenInterval(p.t, min(one, p.t + min(step, (1 - p.t) / 2)))
    if isinstance(p, NiemytzkiPoint):
        if p.on_axis:
            return TangentDisc(p.x, _shrink(p, k, None))
        return InteriorDisc(p.x, p.y, _shrink(p, k, p.y))
    raise TypeError(f"unknown point {p!r}")


def _shrink(p: NiemytzkiPoint, k: int, cap: Scalar | None) -> Scalar:
    step: Scalar
    if isinstance(p.x, Fraction):
        step = Fraction(1, 2**k)
    else:
        step = 2.0**-k
    if cap is not None and not le(step, cap):
        return cap / 2**k if isinstance(cap, Fraction) else cap * 2.0**-k
    return step


def basic_neighborhoods(p: Point, depth: int) -> Iterator[BasicOpenSet]:
    for k in range(1, depth + 1):
        yield basic_neighborhood(p, k)
