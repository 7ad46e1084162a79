"""Canonical finite unions of base sets, regular-openness validation, chains.

A ``RegularOpenSet`` is a finite union of base elements in canonical order
together with a certificate describing how its regular openness (the set
equals the interior of its own closure) was established:

* Sorgenfrey: after merging overlapping/adjacent intervals every canonical
  component must be left-closed.  A left-open canonical component (a, b)
  witnesses failure at a: the closure contains [a, b), so a is interior to
  the closure but outside the set.
* Double arrow: any finite union of clopen intervals merges into pairwise
  disjoint clopen intervals with nonempty gaps; clopen sets are always
  regular open.
* Niemytzki: finite unions of base discs are regular open unless some
  interior disc touches the axis (r = cy) at a tangency point the union does
  not contain; that tangency point is then interior to the closure (every
  tangent-disc neighborhood of it sits inside the closed disc) but outside
  the union.  Boundary-circle crossing points never become interior (the two
  closed discs leave an uncovered wedge), so no other failures exist.
  See docs/derivations.md.

Chains are parametric families n -> set, evaluated to a truncation depth and
extrapolated exactly: parameters are expressed as c0 + c1/(n+s) + c2/(n+s)^2,
whose limit is the constant term, or supplied as plain callables, in which
case a dyadic-tail power-law fit recovers the limit (exact for pure power
decays in rational arithmetic).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .basesets import (
    BasicOpenSet,
    ClopenInterval,
    ExtremeSingleton,
    HalfOpen,
    InteriorDisc,
    OpenInterval,
    TangentDisc,
    basic_closure_member,
    basic_member,
)
from .numerics import Scalar, as_scalar, eq, le, lt, sq
from .spaces import NiemytzkiPoint, Point, SorgenfreyPoint, Space, SpaceMismatchError, sq_dist


class NotRegularOpenError(ValueError):
    """Rejection of a candidate union, carrying an explicit witness point.

    The witness lies in the interior of the closure of the union but not in
    the union itself.
    """

    def __init__(self, message: str, witness: Point):
        super().__init__(message)
        self.witness = witness


class NonMonotoneChainError(ValueError):
    """A chain failed its inclusion checks at some evaluated index."""


class MalformedChainError(ValueError):
    """A chain whose parameters do not converge (e.g. oscillating centers)."""


@dataclass(frozen=True)
class Certificate:
    method: str  # "exact" | "sampled"
    n_samples: int = 0

    def __post_init__(self):
        if self.method not in ("exact", "sampled"):
            raise ValueError(f"unknown certificate method {self.method!r}")


VALIDATED_EXACT = Certificate("exact")


@dataclass(frozen=True)
class RegularOpenSet:
    space: Space
    components: tuple[BasicOpenSet, ...]
    certificate: Certificate = VALIDATED_EXACT

    @property
    def is_empty(self) -> bool:
        return not self.components


def member(s: RegularOpenSet, p: Point) -> bool:
    """Membership: the union of the component predicates."""
    if s.space is not p.space:
        raise SpaceMismatchError(f"set in {s.space}, point in {p.space}")
    return any(basic_member(c, p) for c in s.components)


def closure_member(s: RegularOpenSet, p: Point) -> bool:
    """Membership in the closure: closures of finite unions are unions of closures."""
    if s.space is not p.space:
        raise SpaceMismatchError(f"set in {s.space}, point in {p.space}")
    return any(basic_closure_member(c, p) for c in s.components)


# ---------------------------------------------------------------------------
# exact containment between base elements


def basic_subset(inner: BasicOpenSet, outer: BasicOpenSet) -> bool:
    """Exact decision of inner <= outer for same-space base elements."""
    if inner.space is not outer.space:
        raise SpaceMismatchError("containment across spaces")
    if isinstance(inner, (HalfOpen, OpenInterval)):
        if isinstance(outer, HalfOpen):
            return le(outer.a, inner.a) and le(inner.b, outer.b)
        if isinstance(outer, OpenInterval):
            left_ok = lt(outer.a, inner.a) if isinstance(inner, HalfOpen) else le(outer.a, inner.a)
            return left_ok and le(inner.b, outer.b)
        return False
    if isinstance(inner, ClopenInterval):
        if not isinstance(outer, ClopenInterval):
            return False
        if inner.include_left_extreme and not outer.include_left_extreme:
            return False
        if inner.include_right_extreme and not outer.include_right_extreme:
            return False
        return le(outer.a, inner.a) and le(inner.b, outer.b)
    if isinstance(inner, ExtremeSingleton):
        if isinstance(outer, ExtremeSingleton):
            return inner.side == outer.side
        if isinstance(outer, ClopenInterval):
            if inner.side == 0:
                return outer.include_left_extreme
            return outer.include_right_extreme
        return False
    if isinstance(inner, InteriorDisc):
        if isinstance(outer, InteriorDisc):
            gap = outer.r - inner.r
            return le(0, gap) and le(sq_dist(inner.center, outer.center), sq(gap))
        if isinstance(outer, TangentDisc):
            gap = outer.r - inner.r
            return le(0, gap) and le(sq_dist(inner.center, outer.center), sq(gap))
        return False
    if isinstance(inner, TangentDisc):
        if isinstance(outer, TangentDisc):
            return eq(inner.a, outer.a) and le(inner.r, outer.r)
        return False  # a tangent disc owns an axis point no interior disc has
    raise TypeError(f"unknown base set {inner!r}")


# ---------------------------------------------------------------------------
# canonicalization and validation


def _sort_key(c: BasicOpenSet):
    if isinstance(c, (HalfOpen, OpenInterval)):
        return (0, c.a, isinstance(c, OpenInterval), c.b)
    if isinstance(c, ExtremeSingleton):
        return (c.side * 2, Fraction(c.side), False, Fraction(c.side))
    if isinstance(c, ClopenInterval):
        return (1, c.a, False, c.b)
    if isinstance(c, TangentDisc):
        return (0, c.a, c.r, c.r)
    if isinstance(c, InteriorDisc):
        return (1, c.cx, c.cy, c.r)
    raise TypeError(f"unknown base set {c!r}")


def _canonical_sorgenfrey(components: Sequence[BasicOpenSet]) -> list[BasicOpenSet]:
    items = []  # (left, left_closed, right)
    for c in components:
        if isinstance(c, HalfOpen):
            items.append([c.a, True, c.b])
        elif isinstance(c, OpenInterval):
            items.append([c.a, False, c.b])
        else:
            raise TypeError(f"{c!r} is not a Sorgenfrey base set")
    items.sort(key=lambda it: (it[0], not it[1]))
    merged: list[list] = []
    for it in items:
        if merged:
            cur = merged[-1]
            touches = it[0] < cur[2] or (it[0] == cur[2] and it[1])
            if touches:
                cur[2] = max(cur[2], it[2])
                continue
        merged.append(list(it))
    out: list[BasicOpenSet] = []
    for left, closed, right in merged:
        if closed:
            out.append(HalfOpen(left, right))
        else:
            raise NotRegularOpenError(
                f"canonical component ({left}, {right}) is left-open: "
                f"{left} lies in the interior of the closure but not in the set",
                SorgenfreyPoint(left),
            )
    return out


def _canonical_double_arrow(components: Sequence[BasicOpenSet]) -> list[BasicOpenSet]:
    intervals = []
    left_single = right_single = False
    for c in components:
        if isinstance(c, ClopenInterval):
            intervals.append([c.a, c.b, c.include_left_extreme, c.include_right_extreme])
        elif isinstance(c, ExtremeSingleton):
            if c.side == 0:
                left_single = True
            else:
                right_single = True
        else:
            raise TypeError(f"{c!r} is not a double arrow base set")
    intervals.sort(key=lambda it: (it[0], it[1]))
    merged: list[list] = []
    for it in intervals:
        if merged and it[0] <= merged[-1][1]:
            cur = merged[-1]
            cur[1] = max(cur[1], it[1])
            cur[2] = cur[2] or it[2]
            cur[3] = cur[3] or it[3]
        else:
            merged.append(list(it))
    if left_single:
        if merged and merged[0][0] == 0:
            merged[0][2] = True
            left_single = False
    if right_single:
        if merged and merged[-1][1] == 1:
            merged[-1][3] = True
            right_single = False
    out: list[BasicOpenSet] = []
    if left_single:
        out.append(ExtremeSingleton(0))
    out.extend(ClopenInterval(a, b, fl, fr) for a, b, fl, fr in merged)
    if right_single:
        out.append(ExtremeSingleton(1))
    return out


def _canonical_niemytzki(components: Sequence[BasicOpenSet]) -> list[BasicOpenSet]:
    for c in components:
        if not isinstance(c, (InteriorDisc, TangentDisc)):
            raise TypeError(f"{c!r} is not a Niemytzki base set")
    kept: list[BasicOpenSet] = []
    for c in sorted(components, key=_sort_key):
        if any(basic_subset(c, k) for k in kept):
            continue
        kept = [k for k in kept if not basic_subset(k, c)]
        kept.append(c)
    kept.sort(key=_sort_key)
    # An axis-tangent interior disc adds its tangency point to the interior
    # of the closure; the union must already own that point.
    for c in kept:
        if isinstance(c, InteriorDisc) and c.axis_tangent:
            tangency = NiemytzkiPoint(c.cx, c.cy * 0)
            if not any(
                isinstance(k, TangentDisc) and eq(k.a, c.cx) for k in kept
            ):
                raise NotRegularOpenError(
                    f"tangency point ({c.cx}, 0) of {c!r} is interior to the "
                    "closure but not in the union",
                    tangency,
                )
    return kept


def validate_regular_open(
    space: Space, components: Sequence[BasicOpenSet]
) -> RegularOpenSet:
    """Canonicalize a finite union and certify its regular openness.

    Raises ``NotRegularOpenError`` (with a witness point in int cl S minus S)
    when the union is provably not regular open.
    """
    for c in components:
        if c.space is not space:
            raise SpaceMismatchError(f"component {c!r} not in {space}")
    if space is Space.SORGENFREY:
        canon = _canonical_sorgenfrey(components)
    elif space is Space.DOUBLE_ARROW:
        canon = _canonical_double_arrow(components)
    elif space is Space.NIEMYTZKI:
        canon = _canonical_niemytzki(components)
    else:
        raise ValueError(f"unknown space {space}")
    return RegularOpenSet(space, tuple(canon), VALIDATED_EXACT)


def empty_set(space: Space) -> RegularOpenSet:
    return RegularOpenSet(space, (), VALIDATED_EXACT)


def roset_subset(inner: RegularOpenSet, outer: RegularOpenSet) -> bool:
    """Sufficient exact containment: every inner component inside some outer one.

    For Sorgenfrey and double arrow canonical unions this is also necessary;
    for Niemytzki unions a component may straddle several discs, so a False
    here does not prove non-containment.
    """
    return all(
        any(basic_subset(ci, co) for co in outer.components) for ci in inner.components
    )


# ---------------------------------------------------------------------------
# parametric chains


@dataclass(frozen=True)
class ParamValue:
    """Parameter trajectory c0 + c1/(n+shift) + c2/(n+shift)^2 with limit c0."""

    const: Scalar
    over_n: Scalar = Fraction(0)
    over_n2: Scalar = Fraction(0)
    shift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "const", as_scalar(self.const))
        object.__setattr__(self, "over_n", as_scalar(self.over_n))
        object.__setattr__(self, "over_n2", as_scalar(self.over_n2))

    def at(self, n: int) -> Scalar:
        d = n + self.shift
        if d <= 0:
            raise ValueError(f"parameter index {n} with shift {self.shift} not positive")
        return self.const + self.over_n / d + self.over_n2 / (d * d)

    def limit(self) -> Scalar:
        return self.const


def const_param(value) -> ParamValue:
    return ParamValue(as_scalar(value))


_PARAM_FIELDS = {
    "half_open": ("a", "b"),
    "open_interval": ("a", "b"),
    "clopen_interval": ("a", "b"),
    "interior_disc": ("cx", "cy", "r"),
    "tangent_disc": ("a", "r"),
}

_KIND_TO_CLS = {
    "half_open": HalfOpen,
    "open_interval": OpenInterval,
    "clopen_interval": ClopenInterval,
    "interior_disc": InteriorDisc,
    "tangent_disc": TangentDisc,
}


@dataclass(frozen=True)
class ParametricBasicSet:
    """A base element whose parameters are functions of the chain index."""

    kind: str
    params: dict
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _PARAM_FIELDS:
            raise ValueError(f"unknown parametric kind {self.kind!r}")
        expected = _PARAM_FIELDS[self.kind]
        if set(self.params) != set(expected):
            raise ValueError(f"{self.kind} needs params {expected}, got {set(self.params)}")

    def at(self, n: int) -> BasicOpenSet:
        values = {name: pv.at(n) for name, pv in self.params.items()}
        return _KIND_TO_CLS[self.kind](**values, **self.flags)

    def limit_values(self) -> dict:
        return {name: pv.limit() for name, pv in self.params.items()}

    def at_limit(self) -> BasicOpenSet:
        return _KIND_TO_CLS[self.kind](**self.limit_values(), **self.flags)


@dataclass(frozen=True)
class DecreasingChain:
    """A decreasing parametric family of regular open sets.

    Component k of element n+1 must be contained in component k of element n
    (checked exactly up to the truncation depth).  For Niemytzki chains with
    several components the depth-1 components must have pairwise disjoint
    closed hulls, so that the intersection distributes over the component
    lanes.
    """

    space: Space
    components: tuple[ParametricBasicSet, ...]
    depth: int = 64

    def at(self, n: int) -> RegularOpenSet:
        return validate_regular_open(self.space, [c.at(n) for c in self.components])

    def element_sets(self) -> list[RegularOpenSet]:
        return [self.at(n) for n in range(1, self.depth + 1)]

    def validate(self) -> None:
        for comp in self.components:
            prev = None
            for n in range(1, self.depth + 1):
                cur = comp.at(n)
                if prev is not None and not basic_subset(cur, prev):
                    raise NonMonotoneChainError(
                        f"component {comp.kind} not decreasing at n={n}"
                    )
                prev = cur
        if self.space is Space.NIEMYTZKI and len(self.components) > 1:
            first = [c.at(1) for c in self.components]
            for i in range(len(first)):
                for j in range(i + 1, len(first)):
                    if not _disjoint_closed_hulls(first[i], first[j]):
                        raise MalformedChainError(
                            "multi-component Niemytzki chains need pairwise "
                            "disjoint component lanes"
                        )
        if self.space is Space.NIEMYTZKI:
            for comp in self.components:
                if comp.kind == "tangent_disc":
                    a0 = comp.params["a"].at(1)
                    if not all(
                        eq(comp.params["a"].at(n), a0) for n in range(2, self.depth + 1)
                    ):
                        raise MalformedChainError(
                            "a decreasing tangent-disc chain must keep its "
                            "tangency point fixed"
                        )


def _disjoint_closed_hulls(a: BasicOpenSet, b: BasicOpenSet) -> bool:
    ca = a.center
    cb = b.center
    gap = sq_dist(ca, cb)
    return lt(sq(a.r + b.r), gap)


def decreasing_chain_interior(chain: DecreasingChain) -> RegularOpenSet:
    """Interior of the intersection of a decreasing chain, in closed form.

    Per component lane: Sorgenfrey [a_n, b_n) gives [sup a_n, inf b_n) or
    nothing; double arrow clopen intervals give the clopen interval on the
    limit endpoints (with extreme points kept only when every element keeps
    them); Niemytzki tangent discs keep their tangency point and shrink to
    the limit radius; Niemytzki interior discs shrink to the limit disc.
    Empty lanes are dropped; the result may be the empty set.
    """
    chain.validate()
    out: list[BasicOpenSet] = []
    for comp in chain.components:
        lim = comp.limit_values()
        if comp.kind == "half_open":
            a, b = lim["a"], lim["b"]
            if lt(a, b):
                out.append(HalfOpen(a, b))
        elif comp.kind == "open_interval":
            raise MalformedChainError("open intervals are not regular open chain elements")
        elif comp.kind == "clopen_interval":
            a, b = lim["a"], lim["b"]
            keep_left = chain_keeps_left_extreme(comp, chain.depth)
            keep_right = chain_keeps_right_extreme(comp, chain.depth)
            if lt(a, b):
                out.append(ClopenInterval(a, b, keep_left, keep_right))
            else:
                if keep_left:
                    out.append(ExtremeSingleton(0))
                if keep_right:
                    out.append(ExtremeSingleton(1))
        elif comp.kind == "tangent_disc":
            a, r = lim["a"], lim["r"]
            if lt(0, r):
                out.append(TangentDisc(a, r))
        elif comp.kind == "interior_disc":
            cx, cy, r = lim["cx"], lim["cy"], lim["r"]
            if lt(0, r):
                if eq(r, cy):
                    # impossible for nested strictly-interior discs; see module doc
                    raise MalformedChainError(
                        "interior-disc chain converged onto the axis"
                    )
                out.append(InteriorDisc(cx, cy, r))
        else:
            raise ValueError(f"unknown chain component {comp.kind}")
    return validate_regular_open(chain.space, out)


def chain_keeps_left_extreme(comp: ParametricBasicSet, depth: int) -> bool:
    return bool(comp.flags.get("include_left_extreme")) and all(
        eq(comp.params["a"].at(n), 0) for n in range(1, depth + 1)
    )


def chain_keeps_right_extreme(comp: ParametricBasicSet, depth: int) -> bool:
    return bool(comp.flags.get("include_right_extreme")) and all(
        eq(comp.params["b"].at(n), 1) for n in range(1, depth + 1)
    )


# ---------------------------------------------------------------------------
# increasing unions (Niemytzki base elements)


def _tail_limit(value_at: Callable[[int], Scalar], depth: int) -> Scalar:
    """Limit of a parameter tail from dyadic samples.

    A shifted-hyperbola fit L - c/(n+s) is solved exactly from three samples
    and accepted when it also predicts the fourth; trajectories outside that
    model fall back to a deep evaluation (within ~2^-24 of the limit).
    """
    n1, n2, n3, n4 = depth, 2 * depth, 4 * depth, 8 * depth
    v1, v2, v3, v4 = value_at(n1), value_at(n2), value_at(n3), value_at(n4)
    d1, d2 = v2 - v1, v3 - v2
    if d1 == 0 and d2 == 0 and v4 == v3:
        return v4
    if d1 != 0 and d2 != 0 and (2 * d1 - d2) != 0:
        s = 2 * n1 * (2 * d2 - d1) / (2 * d1 - d2)
        if s > -n1:
            c = d1 * (n1 + s) * (n2 + s) / n1
            limit = v1 + c / (n1 + s)
            predicted = limit - c / (n4 + s)
            if isinstance(v4, Fraction) and isinstance(predicted, Fraction):
                if predicted == v4:
                    return limit
            elif abs(float(predicted) - float(v4)) < 1e-12:
                return limit
    return value_at(depth * (1 << 24))


def increasing_union_limit(
    chain: ParametricBasicSet | Callable[[int], BasicOpenSet], depth: int = 64
) -> BasicOpenSet:
    """Limit base element of an increasing Niemytzki chain.

    The union of an increasing sequence of base discs is again a base disc
    (radii converge; two distinct center limits would force one disc with two
    centers), and an increasing tangent-disc chain keeps its tangency point.
    The returned element contains every evaluated chain member and carries
    the supremum parameters.
    """
    if isinstance(chain, ParametricBasicSet):
        elements = [chain.at(n) for n in range(1, depth + 1)]
        limit_el = chain.at_limit()
    else:
        elements = [chain(n) for n in range(1, depth + 1)]
        first = elements[0]
        if isinstance(first, TangentDisc):
            a = _tail_limit(lambda n: chain(n).a, depth)
            r = _tail_limit(lambda n: chain(n).r, depth)
            limit_el = TangentDisc(a, r)
        elif isinstance(first, InteriorDisc):
            cx = _tail_limit(lambda n: chain(n).cx, depth)
            cy = _tail_limit(lambda n: chain(n).cy, depth)
            r = _tail_limit(lambda n: chain(n).r, depth)
            limit_el = InteriorDisc(cx, cy, r)
        else:
            raise TypeError("increasing unions are defined for Niemytzki base sets")
    shapes = {type(e) for e in elements}
    if len(shapes) != 1:
        raise MalformedChainError("chain mixes interior and tangent discs")
    for prev, cur in zip(elements, elements[1:]):
        if not basic_subset(prev, cur):
            raise NonMonotoneChainError("chain is not increasing under inclusion")
    for e in elements:
        if not basic_subset(e, limit_el):
            raise MalformedChainError(
                f"element {e!r} escapes the extrapolated limit {limit_el!r}; "
                "centers oscillate beyond tolerance"
            )
    return limit_el
