"""Dyadic q-indexed open families and the two transforms.

An approximation assigns to each index set U a family q -> U_q of open sets
over the dyadic grid {k/2^m : 0 < k < 2^m}, the finite stand-in for the
rationals of (0, 1).  The two directions:

* from a function family: U_q = {p : f_U(p) > q}.  For the named families on
  base sets these superlevel sets have closed forms -- Sorgenfrey components
  shrink on the right to [a, b-q), double arrow components survive whole or
  drop out, interior discs shrink concentrically to radius r-q, and tangent
  discs shrink to an exactly decidable lens (rational inequality
  r^2 (x-a)^2 < (r-q)^2 (2yr - y^2) below the diameter).
* back to a function family: the reconstructed value at p is the smallest
  grid q with p outside U_q (1 when no such q, 0 when p is in no U_q).  On a
  dense index set both readings of the supremum agree; on the finite grid
  this one is exact at grid values and at 0/1, and within one grid step
  everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .basesets import (
    ExtremeSingleton,
    HalfOpen,
    InteriorDisc,
    TangentDisc,
    basic_closure_member,
    basic_member,
)
from .families import SetLike, Stratification, LABEL_USER, set_space
from .numerics import Scalar, eq, le, lt, sq
from .rosets import RegularOpenSet, validate_regular_open
from .spaces import NiemytzkiPoint, Point, Space, sq_dist


@dataclass(frozen=True)
class QGrid:
    """All dyadic rationals k/2^depth strictly inside (0, 1)."""

    depth: int = 10

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("grid depth must be positive")

    @property
    def step(self) -> Fraction:
        return Fraction(1, 2**self.depth)

    @property
    def values(self) -> tuple[Fraction, ...]:
        d = 2**self.depth
        return tuple(Fraction(k, d) for k in range(1, d))


@dataclass(frozen=True)
class TangentLens:
    """Superlevel set {f > q} of a tangent-disc value function, q < r.

    Membership and closure membership are exact rational predicates: below
    the horizontal diameter the defining inequality clears to
    r^2 (x-a)^2 <> (r-q)^2 (2yr - y^2).
    """

    a: Scalar
    r: Scalar
    q: Scalar

    space = Space.NIEMYTZKI

    def __post_init__(self):
        if not lt(self.q, self.r):
            raise ValueError("lens requires q < r")

    def member(self, p: NiemytzkiPoint) -> bool:
        if p.on_axis:
            return eq(p.x, self.a)
        gap = self.r - self.q
        if le(self.r, p.y):
            return lt(sq_dist(p, NiemytzkiPoint(self.a, self.r)), sq(gap))
        return lt(
            sq(self.r) * sq(p.x - self.a), sq(gap) * (2 * p.y * self.r - sq(p.y))
        )

    def closure_member(self, p: NiemytzkiPoint) -> bool:
        if p.on_axis:
            return eq(p.x, self.a)
        gap = self.r - self.q
        if le(self.r, p.y):
            return le(sq_dist(p, NiemytzkiPoint(self.a, self.r)), sq(gap))
        return le(
            sq(self.r) * sq(p.x - self.a), sq(gap) * (2 * p.y * self.r - sq(p.y))
        )


@dataclass(frozen=True)
class RealizedSet:
    """A superlevel set with decidable membership and closure membership."""

    member_fn: Callable[[Point], bool]
    closure_fn: Callable[[Point], bool]
    description: str = ""

    def member(self, p: Point) -> bool:
        return self.member_fn(p)

    def closure_member(self, p: Point) -> bool:
        return self.closure_fn(p)


def _empty_realized(desc: str = "empty") -> RealizedSet:
    return RealizedSet(lambda p: False, lambda p: False, desc)


def realize_sublevel(family_label: str, U: SetLike, q: Fraction) -> Optional[RealizedSet]:
    """Closed-form superlevel set {f_U > q} for a named family, when it exists.

    Returns None when no closed form is available (multi-component Niemytzki
    unions, user-supplied families); callers fall back to sampled closures.
    """
    space = set_space(U)
    if family_label == LABEL_USER:
        return None
    if space is Space.SORGENFREY:
        comps = U.components if isinstance(U, RegularOpenSet) else (U,)
        kept = []
        for c in comps:
            top = c.b - q
            if lt(c.a, top):
                kept.append(HalfOpen(c.a, min(top, c.b)))
        ro = validate_regular_open(space, kept)
        return RealizedSet(
            lambda p, s=ro: any(basic_member(c, p) for c in s.components),
            lambda p, s=ro: any(basic_closure_member(c, p) for c in s.components),
            f"sorgenfrey sublevel q={q}",
        )
    if space is Space.DOUBLE_ARROW:
        comps = U.components if isinstance(U, RegularOpenSet) else (U,)
        kept = []
        for c in comps:
            if isinstance(c, ExtremeSingleton):
                kept.append(c)
                continue
            if lt(q, c.b - c.a):
                kept.append(c)
            else:
                if c.include_left_extreme:
                    kept.append(ExtremeSingleton(0))
                if c.include_right_extreme:
                    kept.append(ExtremeSingleton(1))
        ro = validate_regular_open(space, kept)
        return RealizedSet(
            lambda p, s=ro: any(basic_member(c, p) for c in s.components),
            lambda p, s=ro: any(basic_closure_member(c, p) for c in s.components),
            f"double arrow sublevel q={q}",
        )
    # Niemytzki
    comps = U.components if isinstance(U, RegularOpenSet) else (U,)
    if len(comps) != 1:
        return None
    c = comps[0]
    if isinstance(c, InteriorDisc):
        if not lt(q, c.r):
            return _empty_realized()
        inner = InteriorDisc(c.cx, c.cy, c.r - q)
        return RealizedSet(
            lambda p, s=inner: basic_member(s, p),
            lambda p, s=inner: basic_closure_member(s, p),
            f"disc sublevel q={q}",
        )
    if isinstance(c, TangentDisc):
        if not lt(q, c.r):
            return _empty_realized()
        lens = TangentLens(c.a, c.r, q)
        return RealizedSet(lens.member, lens.closure_member, f"lens sublevel q={q}")
    return None


@dataclass(frozen=True)
class Approximation:
    """A q-indexed open family per index set.

    ``contains(U, q, p)`` is the membership predicate of U_q;
    ``realize(U, q)`` returns the closed-form superlevel set when one exists.
    ``monotone_in_q`` marks families where q < q' implies U_{q'} inside U_q,
    enabling binary search in the reconstruction.
    """

    space: Space
    grid: QGrid
    contains: Callable[[SetLike, Fraction, Point], bool]
    realize: Callable[[SetLike, Fraction], Optional[RealizedSet]]
    monotone_in_q: bool = False


def stratification_to_approximation(S: Stratification, grid: QGrid) -> Approximation:
    """U_q = {p : f_U(p) > q}: always an approximation when f is a family."""

    def contains(U: SetLike, q: Fraction, p: Point) -> bool:
        return lt(q, S.value(U, p))

    def realize(U: SetLike, q: Fraction) -> Optional[RealizedSet]:
        return realize_sublevel(S.label, U, q)

    return Approximation(S.space, grid, contains, realize, monotone_in_q=True)


def approximation_to_stratification(A: Approximation, grid: QGrid) -> Stratification:
    """Reconstruct a function family from a q-indexed one.

    The value at p is the smallest grid q outside whose U_q the point falls
    (equivalently one grid step above the largest q still containing p): 0
    when no U_q contains p, 1 when all do.  Exact whenever the underlying
    value is a grid value or 0/1; within one grid step otherwise.
    """
    values = grid.values

    def evaluate(U: SetLike, p: Point) -> Fraction:
        if A.monotone_in_q:
            lo, hi = 0, len(values)  # values[:k] contain p, values[k:] do not
            while lo < hi:
                mid = (lo + hi) // 2
                if A.contains(U, values[mid], p):
                    lo = mid + 1
                else:
                    hi = mid
            k = lo
            if k == 0:
                return Fraction(0)
            if k == len(values):
                return Fraction(1)
            return values[k]
        included = [q for q in values if A.contains(U, q, p)]
        if not included:
            return Fraction(0)
        top = max(included)
        above = [q for q in values if q > top]
        return above[0] if above else Fraction(1)

    return Stratification(A.space, LABEL_USER, evaluator=evaluate)
