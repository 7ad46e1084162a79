"""Points and elementary predicates for the three supported spaces.

Space conventions:

* Sorgenfrey line: the rationals (as stand-ins for the reals), topologized by
  half-open intervals [a, b).  Exact mode only.
* Double arrow: [0, 1] x {0, 1} with the lexicographic order topology.
  Exact mode only.
* Niemytzki plane: the closed upper half plane.  Interior points get ordinary
  open discs; a boundary point (a, 0) gets tangent-disc neighborhoods
  {(a, 0)} union B((a, r), r).  Coordinates may be exact or binary64.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .numerics import Scalar, as_scalar, check_same_mode, le, sq, sqrt_scalar


class Space(Enum):
    SORGENFREY = "sorgenfrey"
    DOUBLE_ARROW = "double_arrow"
    NIEMYTZKI = "niemytzki"


class SpaceMismatchError(ValueError):
    """Raised when an operation receives objects tagged with different spaces."""


def check_space(expected: Space, *objs) -> None:
    for obj in objs:
        if obj.space is not expected:
            raise SpaceMismatchError(f"expected {expected}, got {obj.space}")


@dataclass(frozen=True)
class SorgenfreyPoint:
    x: Scalar

    space = Space.SORGENFREY

    def __post_init__(self):
        object.__setattr__(self, "x", as_scalar(self.x))


@dataclass(frozen=True)
class DoubleArrowPoint:
    t: Scalar
    side: int

    space = Space.DOUBLE_ARROW

    def __post_init__(self):
        t = as_scalar(self.t)
        if not isinstance(t, Fraction):
            raise ValueError("double arrow coordinates must be exact rationals")
        if not (0 <= t <= 1):
            raise ValueError(f"double arrow coordinate {t} outside [0, 1]")
        if self.side not in (0, 1):
            raise ValueError(f"side must be 0 or 1, got {self.side}")
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class NiemytzkiPoint:
    x: Scalar
    y: Scalar

    space = Space.NIEMYTZKI

    def __post_init__(self):
        x, y = as_scalar(self.x), as_scalar(self.y)
        check_same_mode(x, y)
        if not le(0, y):
            raise ValueError(f"Niemytzki point must satisfy y >= 0, got y={y}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def on_axis(self) -> bool:
        from .numerics import is_zero

        return is_zero(self.y)


Point = SorgenfreyPoint | DoubleArrowPoint | NiemytzkiPoint


def lex_less(a: DoubleArrowPoint, b: DoubleArrowPoint) -> bool:
    """Strict lexicographic order on double arrow points."""
    check_space(Space.DOUBLE_ARROW, a, b)
    return a.t < b.t or (a.t == b.t and a.side < b.side)


def lex_le(a: DoubleArrowPoint, b: DoubleArrowPoint) -> bool:
    return a == b or lex_less(a, b)


def sq_dist(p: NiemytzkiPoint, q: NiemytzkiPoint) -> Scalar:
    """Squared Euclidean distance; exact whenever both points are exact."""
    return sq(p.x - q.x) + sq(p.y - q.y)


def euclid_dist(p: NiemytzkiPoint, q: NiemytzkiPoint) -> Scalar:
    """Euclidean distance between two upper-half-plane points.

    Stays exact when the squared distance is a perfect rational square
    (e.g. 3-4-5 configurations); otherwise returns binary64.
    """
    check_space(Space.NIEMYTZKI, p, q)
    return sqrt_scalar(sq_dist(p, q))
