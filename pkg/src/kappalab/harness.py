"""Seeded property checks for the family axioms, with replayable reports.

The four family conditions and the four approximation conditions:

1. support: U = {p : f_U(p) > 0};
2. monotonicity: U <= V implies f_U <= f_V pointwise;
3. continuity along certified convergent sequences;
4. chain infimum: f at the interior of a decreasing chain's intersection
   equals the infimum of the chain values;
(a) every index set is the union of its q-indexed family;
(b) the q-indexed family is monotone in the index set;
(c) closures nest strictly across grid indices: cl(U_q) <= U_p for p < q;
(d) chain closures stay inside the chain-interior's family:
    the intersection of cl(U^n_q) lies in (int of the intersection)_p.

Every check consumes a ``SamplePlan`` (seeded, fully deterministic) and
returns a ``CheckReport``; a failing report carries concrete witnesses that
``replay_witness`` re-evaluates standalone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .approximations import Approximation, QGrid, stratification_to_approximation
from .basesets import (
    BasicOpenSet,
    ClopenInterval,
    ExtremeSingleton,
    HalfOpen,
    InteriorDisc,
    TangentDisc,
    basic_member,
    basic_neighborhood,
)
from .convergence import ConvergenceCertificate, verify_convergence
from .families import (
    LABEL_DOUBLE_ARROW,
    LABEL_G,
    LABEL_NIEMYTZKI,
    LABEL_SORGENFREY,
    LABEL_USER,
    SetLike,
    Stratification,
    double_arrow_ro,
    niemytzki_kappa,
    pairwise_separated,
    set_member,
    sorgenfrey_kappa,
)
from .numerics import Scalar, eq, is_zero, le, lt, sq, sqrt_scalar
from .rosets import (
    DecreasingChain,
    ParametricBasicSet,
    RegularOpenSet,
    decreasing_chain_interior,
    member,
)
from .sampling import (
    TAIL_START,
    rand_dyadic,
    sample_nested_pair,
    sample_niemytzki_set_separated,
    sample_point,
    sample_point_near_set,
    sample_set,
)
from .serialize import (
    dumps_canonical,
    encode_basic_set,
    encode_chain,
    encode_point,
    encode_roset,
    encode_scalar,
)
from .spaces import (
    DoubleArrowPoint,
    NiemytzkiPoint,
    Point,
    SorgenfreyPoint,
    Space,
    sq_dist,
)

TOL_CONT = 1e-3
TOL_INF = 1e-3
TOL_SUP = 1e-4
#: slack for comparisons where one side comes from the union search
SEARCH_SLACK = 1e-4


@dataclass(frozen=True)
class SamplePlan:
    """Deterministic sampling budget; the seed pins every stream."""

    seed: int = 0
    n_points: int = 400
    n_set_pairs: int = 120
    n_sequences: int = 24
    grid_m: int = 10
    chain_depth: int = 64

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    def payload(self) -> dict:
        return {
            "seed": self.seed,
            "n_points": self.n_points,
            "n_set_pairs": self.n_set_pairs,
            "n_sequences": self.n_sequences,
            "grid_m": self.grid_m,
            "chain_depth": self.chain_depth,
        }


@dataclass
class CheckReport:
    check_id: str
    family: str
    space: str
    passed: bool
    counts: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def payload(self) -> dict:
        return {
            "check_id": self.check_id,
            "family": self.family,
            "space": self.space,
            "passed": self.passed,
            "counts": self.counts,
            "tolerances": self.tolerances,
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return dumps_canonical(self.payload())

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict}  {self.check_id} [{self.family}/{self.space}] {self.counts}"


def _encode_set(U: SetLike) -> dict:
    if isinstance(U, RegularOpenSet):
        return encode_roset(U)
    return encode_basic_set(U)


def _family_by_label(label: str) -> Stratification:
    if label == LABEL_SORGENFREY:
        return sorgenfrey_kappa()
    if label == LABEL_DOUBLE_ARROW:
        return double_arrow_ro()
    if label == LABEL_NIEMYTZKI:
        return niemytzki_kappa()
    if label == LABEL_G:
        from .families import g_stratification

        return g_stratification()
    raise ValueError(f"cannot rebuild family {label!r} for replay")


# ---------------------------------------------------------------------------
# family-aware sampling


def sample_family_set(S: Stratification, rng: random.Random) -> SetLike:
    if S.label == LABEL_G:
        a = rand_dyadic(rng, Fraction(-3), Fraction(3))
        r = rand_dyadic(rng, Fraction(1, 16), Fraction(1))
        return TangentDisc(a, r)
    if S.space is Space.NIEMYTZKI:
        roll = rng.random()
        if roll < 0.45:
            return sample_set(S.space, rng, max_components=1)
        if roll < 0.999:
            return sample_niemytzki_set_separated(rng)
        return sample_set(S.space, rng)  # occasionally a free-form union
    return sample_set(S.space, rng)


def sample_family_pair(
    S: Stratification, rng: random.Random
) -> tuple[SetLike, SetLike]:
    if S.label == LABEL_G:
        a = rand_dyadic(rng, Fraction(-3), Fraction(3))
        r_small = rand_dyadic(rng, Fraction(1, 16), Fraction(1, 2))
        r_big = r_small + rand_dyadic(rng, Fraction(0), Fraction(1, 2))
        return TangentDisc(a, r_small), TangentDisc(a, r_big)
    if S.space is Space.NIEMYTZKI:
        V = sample_family_set(S, rng)
        if isinstance(V, RegularOpenSet) and len(V.components) > 1 and rng.random() < 0.5:
            keep = [c for c in V.components if rng.random() < 0.7] or [V.components[0]]
            from .rosets import validate_regular_open

            return validate_regular_open(S.space, keep), V
    return sample_nested_pair(S.space, rng)


def _value_is_searched(S: Stratification, U: SetLike) -> bool:
    return (
        S.space is Space.NIEMYTZKI
        and isinstance(U, RegularOpenSet)
        and len(U.components) > 1
        and not pairwise_separated(U)
    )


# ---------------------------------------------------------------------------
# conditions (1) and (2)


def check_condition_1(
    S: Stratification, plan: SamplePlan, sets: Optional[Sequence[SetLike]] = None
) -> CheckReport:
    """Support identity: membership iff strictly positive value."""
    rng = plan.rng("condition_1")
    witnesses = []
    n = 0
    if sets is None:
        # a pool amortizes set construction; points still vary per sample
        pool_size = max(1, min(plan.n_points, plan.n_points // 12 + 1))
        sets = [sample_family_set(S, rng) for _ in range(pool_size)]
    for i in range(plan.n_points):
        U = sets[i % len(sets)]
        p = (
            sample_point_near_set(U, rng)
            if isinstance(U, RegularOpenSet)
            else sample_point_near_set(RegularOpenSet(U.space, (U,)), rng)
        )
        v = S.value(U, p)
        inside = set_member(U, p)
        positive = lt(0, v)
        n += 1
        if inside != positive:
            witnesses.append(
                {
                    "kind": "condition_1",
                    "family": S.label,
                    "set": _encode_set(U),
                    "point": encode_point(p),
                    "value": encode_scalar(v),
                    "member": inside,
                }
            )
            if len(witnesses) >= 10:
                break
    return CheckReport(
        check_id="condition_1",
        family=S.label,
        space=S.space.value,
        passed=not witnesses,
        counts={"samples": n, "violations": len(witnesses)},
        tolerances={},
        witnesses=witnesses,
    )


def check_condition_2(S: Stratification, plan: SamplePlan) -> CheckReport:
    """Monotonicity in the index set on constructed nested pairs."""
    rng = plan.rng("condition_2")
    witnesses = []
    n = 0
    points_per_pair = max(1, plan.n_points // max(1, plan.n_set_pairs))
    for _ in range(plan.n_set_pairs):
        U, V = sample_family_pair(S, rng)
        searched = _value_is_searched(S, U) or _value_is_searched(S, V)
        for _ in range(points_per_pair):
            big = V if isinstance(V, RegularOpenSet) else RegularOpenSet(V.space, (V,))
            p = sample_point_near_set(big, rng)
            vu, vv = S.value(U, p), S.value(V, p)
            n += 1
            ok = (
                le(vu, vv)
                if not searched
                else float(vu) <= float(vv) + SEARCH_SLACK
            )
            if not ok:
                witnesses.append(
                    {
                        "kind": "condition_2",
                        "family": S.label,
                        "small_set": _encode_set(U),
                        "big_set": _encode_set(V),
                        "point": encode_point(p),
                        "small_value": encode_scalar(vu),
                        "big_value": encode_scalar(vv),
                    }
                )
                if len(witnesses) >= 10:
                    return _report_2(S, n, witnesses)
    return _report_2(S, n, witnesses)


def _report_2(S, n, witnesses) -> CheckReport:
    return CheckReport(
        check_id="condition_2",
        family=S.label,
        space=S.space.value,
        passed=not witnesses,
        counts={"samples": n, "violations": len(witnesses)},
        tolerances={"search_slack": SEARCH_SLACK},
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# condition (3): continuity along certificates


def check_condition_3(
    S: Stratification,
    pairs: Sequence[tuple[SetLike, ConvergenceCertificate]],
    tol: float = TOL_CONT,
    tail_start: int = TAIL_START,
) -> CheckReport:
    """Tail deviation of the family values along certified sequences."""
    witnesses = []
    n = 0
    for U, cert in pairs:
        if not verify_convergence(cert):
            raise ValueError("certificate failed verification; refuse to test continuity")
        f_lim = float(S.value(U, cert.limit))
        tail = cert.sequence[tail_start - 1 :]
        devs = [abs(float(S.value(U, s)) - f_lim) for s in tail]
        max_dev = max(devs) if devs else 0.0
        n += 1
        if max_dev > tol:
            k = devs.index(max_dev)
            witnesses.append(
                {
                    "kind": "condition_3",
                    "family": S.label,
                    "set": _encode_set(U),
                    "limit": encode_point(cert.limit),
                    "worst_point": encode_point(tail[k]),
                    "limit_value": float(f_lim),
                    "worst_value": float(S.value(U, tail[k])),
                    "deviation": max_dev,
                    "tail_start": tail_start,
                }
            )
            if len(witnesses) >= 10:
                break
    return CheckReport(
        check_id="condition_3",
        family=S.label,
        space=S.space.value,
        passed=not witnesses,
        counts={"sequences": n, "violations": len(witnesses)},
        tolerances={"tol_cont": tol, "tail_start": tail_start},
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# condition (4): chain infimum


def _param_strictly_above_limit(pv, depth: int) -> bool:
    """Whether c1/(n+s) + c2/(n+s)^2 > 0 for every n >= 1 (exact)."""
    c1, c2, s = pv.over_n, pv.over_n2, pv.shift
    if c1 > 0:
        return c1 * (1 + s) + c2 > 0
    if c1 == 0:
        return c2 > 0
    return False


def _param_strictly_below_limit(pv, depth: int) -> bool:
    c1, c2, s = pv.over_n, pv.over_n2, pv.shift
    if c1 < 0:
        return c1 * (1 + s) + c2 < 0
    if c1 == 0:
        return c2 < 0
    return False


def _lane_limit_value(label: str, comp: ParametricBasicSet, depth: int, p: Point):
    """Exact limit of the lane's family values along the chain at p.

    Interval and disc formulas are continuous in their parameters (the value
    vanishes as the point leaves), so the limit is the formula at the limit
    parameters; only the double arrow family jumps at component endpoints and
    needs the strict-approach analysis.
    """
    lim = comp.limit_values()
    if comp.kind == "half_open":
        a, b = lim["a"], lim["b"]
        if p.x >= a:
            return max(Fraction(0), min(b - p.x, Fraction(1)))
        return Fraction(0)
    if comp.kind == "clopen_interval":
        a, b = lim["a"], lim["b"]
        left_strict = _param_strictly_below_limit(comp.params["a"], depth)
        right_strict = _param_strictly_above_limit(comp.params["b"], depth)
        if (p.t, p.side) == (0, 0):
            return Fraction(1) if comp.flags.get("include_left_extreme") else Fraction(0)
        if (p.t, p.side) == (1, 1):
            return Fraction(1) if comp.flags.get("include_right_extreme") else Fraction(0)
        left_ok = p.t > a or (p.t == a and (p.side == 1 or left_strict))
        right_ok = p.t < b or (p.t == b and (p.side == 0 or right_strict))
        if left_ok and right_ok and a < b:
            return b - a
        return Fraction(0)
    if comp.kind == "tangent_disc":
        a, r = lim["a"], lim["r"]
        if r <= 0:
            return Fraction(0)
        if p.on_axis:
            return r if eq(p.x, a) else Fraction(0)
        if le(r, p.y):
            d2 = sq_dist(p, NiemytzkiPoint(a, r))
            if le(sq(r), d2):
                return Fraction(0)
            return r - sqrt_scalar(d2)
        radicand = 2 * p.y * r - sq(p.y)
        if le(radicand, 0):
            return Fraction(0)
        val = r - r * abs(p.x - a) / sqrt_scalar(radicand)
        return val if float(val) > 0 else Fraction(0)
    if comp.kind == "interior_disc":
        cx, cy, r = lim["cx"], lim["cy"], lim["r"]
        if r <= 0 or p.on_axis:
            return Fraction(0)
        d2 = sq_dist(p, NiemytzkiPoint(cx, cy))
        if le(sq(r), d2):
            return Fraction(0)
        return r - sqrt_scalar(d2)
    raise ValueError(f"no chain limit rule for {comp.kind}")


def chain_limit_value(label: str, chain: DecreasingChain, p: Point):
    """inf over the whole (infinite) chain of the named family values at p."""
    if label not in (LABEL_SORGENFREY, LABEL_DOUBLE_ARROW, LABEL_NIEMYTZKI):
        return None
    values = [_lane_limit_value(label, comp, chain.depth, p) for comp in chain.components]
    return max(values, key=float) if values else Fraction(0)


def check_condition_4(
    S: Stratification,
    chain: DecreasingChain,
    points: Sequence[Point],
    plan: SamplePlan,
    tol: float = TOL_INF,
) -> CheckReport:
    """f at the chain interior against the chain's value infimum."""
    chain.validate()
    W = decreasing_chain_interior(chain)
    witnesses = []
    n = 0
    elements = [chain.at(k) for k in range(1, chain.depth + 1)]
    for p in points:
        f_w = S.value(W, p)
        evaluated = [float(S.value(U, p)) for U in elements]
        ev_min = min(evaluated)
        exact_inf = chain_limit_value(S.label, chain, p)
        if exact_inf is not None:
            inf_est = float(exact_inf)
            tol_here = tol
        else:
            slope = max(0.0, evaluated[-2] - evaluated[-1]) if len(evaluated) > 1 else 0.0
            inf_est = ev_min
            tol_here = tol + chain.depth * slope
        deviation = abs(float(f_w) - inf_est)
        n += 1
        if deviation > tol_here:
            witnesses.append(
                {
                    "kind": "condition_4",
                    "family": S.label,
                    "chain": encode_chain(chain),
                    "point": encode_point(p),
                    "interior_value": float(f_w),
                    "inf_estimate": inf_est,
                    "evaluated_min": ev_min,
                    "deviation": deviation,
                }
            )
            if len(witnesses) >= 10:
                break
    return CheckReport(
        check_id="condition_4",
        family=S.label,
        space=S.space.value,
        passed=not witnesses,
        counts={"points": n, "violations": len(witnesses)},
        tolerances={"tol_inf": tol},
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# conditions (a), (b), (c)


def sampled_closure_member(
    pred: Callable[[Point], bool], p: Point, depth: int = 8, per_level: int = 24
) -> bool:
    """Closure membership for black-box predicates: every canonical shrinking
    neighborhood of p must contain a predicate point."""
    for k in range(1, depth + 1):
        hood = basic_neighborhood(p, k)
        if not any(pred(q) for q in _points_inside(hood, per_level)):
            return False
    return True


def _points_inside(hood: BasicOpenSet, per_level: int) -> Iterable[Point]:
    if isinstance(hood, HalfOpen):
        width = hood.b - hood.a
        yield SorgenfreyPoint(hood.a)
        for j in range(1, per_level):
            yield SorgenfreyPoint(hood.a + width * Fraction(j, per_level + 1))
    elif isinstance(hood, ClopenInterval):
        yield DoubleArrowPoint(hood.a, 1)
        yield DoubleArrowPoint(hood.b, 0)
        width = hood.b - hood.a
        for j in range(1, per_level - 1):
            t = hood.a + width * Fraction(j, per_level)
            yield DoubleArrowPoint(t, j % 2)
    elif isinstance(hood, ExtremeSingleton):
        yield hood.point
    elif isinstance(hood, TangentDisc):
        yield NiemytzkiPoint(hood.a, hood.a * 0)
        for j in range(1, per_level):
            yield NiemytzkiPoint(hood.a, 2 * hood.r * Fraction(j, per_level + 1))
    elif isinstance(hood, InteriorDisc):
        yield NiemytzkiPoint(hood.cx, hood.cy)
        for j in range(1, per_level):
            frac = Fraction(j, per_level + 1)
            yield NiemytzkiPoint(hood.cx + hood.r * frac / 2, hood.cy)
            yield NiemytzkiPoint(hood.cx, hood.cy + hood.r * frac / 2)
    else:
        raise TypeError(f"unknown neighborhood {hood!r}")


def check_conditions_abc(
    A: Approximation,
    sets: Sequence[SetLike],
    plan: SamplePlan,
    member_fn: Callable[[SetLike, Point], bool] = set_member,
    nested_pairs: Optional[Sequence[tuple[SetLike, SetLike]]] = None,
) -> CheckReport:
    """Sampled verification of the three approximation conditions."""
    rng = plan.rng("conditions_abc")
    grid = QGrid(plan.grid_m)
    values = grid.values
    deep_probe = Fraction(1, 2 ** (plan.grid_m + 20))
    witnesses = []
    counts = {"a_samples": 0, "b_samples": 0, "c_samples": 0}

    for U in sets:
        big = U if isinstance(U, RegularOpenSet) else RegularOpenSet(U.space, (U,))
        for _ in range(max(1, plan.n_points // max(1, len(sets)))):
            p = sample_point_near_set(big, rng)
            counts["a_samples"] += 1
            inside = member_fn(U, p)
            probed = A.contains(U, deep_probe, p)
            if inside != probed:
                witnesses.append(
                    {
                        "kind": "condition_a",
                        "set": _encode_set(U),
                        "point": encode_point(p),
                        "member": inside,
                        "in_union_of_q": probed,
                    }
                )
            for q in (values[0], values[len(values) // 2], values[-1]):
                if A.contains(U, q, p) and not probed:
                    witnesses.append(
                        {
                            "kind": "condition_a",
                            "set": _encode_set(U),
                            "point": encode_point(p),
                            "member": inside,
                            "in_union_of_q": True,
                        }
                    )

    if nested_pairs:
        for U, V in nested_pairs:
            bigV = V if isinstance(V, RegularOpenSet) else RegularOpenSet(V.space, (V,))
            for _ in range(4):
                p = sample_point_near_set(bigV, rng)
                q = values[rng.randrange(len(values))]
                counts["b_samples"] += 1
                if A.contains(U, q, p) and not A.contains(V, q, p):
                    witnesses.append(
                        {
                            "kind": "condition_b",
                            "small_set": _encode_set(U),
                            "big_set": _encode_set(V),
                            "point": encode_point(p),
                            "q": encode_scalar(q),
                        }
                    )

    qs = [values[len(values) // 8], values[len(values) // 2], values[-len(values) // 8]]
    for U in sets:
        big = U if isinstance(U, RegularOpenSet) else RegularOpenSet(U.space, (U,))
        for q in qs:
            p_idx = max(0, values.index(q) - max(1, len(values) // 16))
            p_val = values[p_idx]
            if not p_val < q:
                continue
            realized = A.realize(U, q)
            for _ in range(6):
                x = sample_point_near_set(big, rng)
                counts["c_samples"] += 1
                if realized is not None:
                    in_closure = realized.closure_member(x)
                else:
                    in_closure = sampled_closure_member(
                        lambda z: A.contains(U, q, z), x
                    )
                if in_closure and not A.contains(U, p_val, x):
                    witnesses.append(
                        {
                            "kind": "condition_c",
                            "set": _encode_set(U),
                            "point": encode_point(x),
                            "p": encode_scalar(p_val),
                            "q": encode_scalar(q),
                        }
                    )

    return CheckReport(
        check_id="conditions_abc",
        family=getattr(A, "family_label", "approximation"),
        space=A.space.value,
        passed=not witnesses,
        counts=counts,
        tolerances={"grid_m": plan.grid_m},
        witnesses=witnesses[:10],
    )


# ---------------------------------------------------------------------------
# condition (d)


def _chain_sublevel_closure_all(
    comp: ParametricBasicSet, q: Fraction, depth: int, x: Point
) -> bool:
    """x in the intersection over all n of cl((U^n)_q), decided exactly.

    The superlevel sets are closed-form for base-set lanes; their closures
    decrease along the chain, and the intersection is the closure at the
    limit parameters, except for the endpoint/boundary cases where a strict
    parameter approach keeps the threshold point inside every element.
    """
    lim = comp.limit_values()
    if comp.kind == "half_open":
        a, b = lim["a"], lim["b"]
        top = b - q
        if not x.x >= a:
            return False
        b_strict = _param_strictly_above_limit(comp.params["b"], depth)
        return x.x < top or (x.x == top and b_strict)
    if comp.kind == "clopen_interval":
        a, b = lim["a"], lim["b"]
        length = b - a
        if (x.t, x.side) == (0, 0):
            return bool(comp.flags.get("include_left_extreme"))
        if (x.t, x.side) == (1, 1):
            return bool(comp.flags.get("include_right_extreme"))
        len_strict = _param_strictly_above_limit(
            comp.params["b"], depth
        ) or _param_strictly_below_limit(comp.params["a"], depth)
        if not (q < length or (q == length and len_strict)):
            return False
        left_strict = _param_strictly_below_limit(comp.params["a"], depth)
        right_strict = _param_strictly_above_limit(comp.params["b"], depth)
        left_ok = x.t > a or (x.t == a and (x.side == 1 or left_strict))
        right_ok = x.t < b or (x.t == b and (x.side == 0 or right_strict))
        return left_ok and right_ok
    if comp.kind == "tangent_disc":
        a, r = lim["a"], lim["r"]
        r_strict = _param_strictly_above_limit(comp.params["r"], depth)
        if q < r:
            from .approximations import TangentLens

            return TangentLens(a, r, q).closure_member(x)
        if q == r and r_strict:
            # the lens pinches onto the vertical segment through the tangency
            return eq(x.x, a) and le(x.y, r)
        return False
    if comp.kind == "interior_disc":
        cx, cy, r = lim["cx"], lim["cy"], lim["r"]
        r_strict = _param_strictly_above_limit(comp.params["r"], depth)
        center = NiemytzkiPoint(cx, cy)
        if q < r:
            return le(sq_dist(x, center), sq(r - q))
        if q == r and r_strict:
            return eq(sq_dist(x, center), 0)
        return False
    raise ValueError(f"no closure rule for {comp.kind}")


def check_condition_d(
    A: Approximation,
    chain: DecreasingChain,
    grid_pairs: Sequence[tuple[Fraction, Fraction]],
    points: Sequence[Point],
    plan: SamplePlan,
) -> CheckReport:
    """Chain closures against the chain-interior's family."""
    chain.validate()
    W = decreasing_chain_interior(chain)
    witnesses = []
    n = 0
    for p_val, q_val in grid_pairs:
        if not p_val < q_val:
            raise ValueError("grid pairs must satisfy p < q")
        for x in points:
            n += 1
            in_all_closures = any(
                _chain_sublevel_closure_all(comp, q_val, chain.depth, x)
                for comp in chain.components
            )
            if in_all_closures and not A.contains(W, p_val, x):
                witnesses.append(
                    {
                        "kind": "condition_d",
                        "chain": encode_chain(chain),
                        "point": encode_point(x),
                        "p": encode_scalar(p_val),
                        "q": encode_scalar(q_val),
                    }
                )
                if len(witnesses) >= 10:
                    break
        if len(witnesses) >= 10:
            break
    return CheckReport(
        check_id="condition_d",
        family=getattr(A, "family_label", "approximation"),
        space=A.space.value,
        passed=not witnesses,
        counts={"samples": n, "violations": len(witnesses)},
        tolerances={"grid_m": plan.grid_m},
        witnesses=witnesses,
    )


def chain_check_points(chain: DecreasingChain, plan: SamplePlan) -> list[Point]:
    """Sample points for chain checks: near the chain and at its limit edges."""
    rng = plan.rng("chain_points")
    first = chain.at(1)
    pts = [sample_point_near_set(first, rng) for _ in range(12)]
    for comp in chain.components:
        lim = comp.limit_values()
        if comp.kind == "half_open":
            pts.append(SorgenfreyPoint(lim["a"]))
            pts.append(SorgenfreyPoint(lim["b"]))
            pts.append(SorgenfreyPoint((lim["a"] + lim["b"]) / 2))
        elif comp.kind == "clopen_interval":
            pts.append(DoubleArrowPoint(lim["a"], 0))
            pts.append(DoubleArrowPoint(lim["a"], 1))
            pts.append(DoubleArrowPoint(lim["b"], 0))
            pts.append(DoubleArrowPoint(lim["b"], 1))
        elif comp.kind == "tangent_disc":
            pts.append(NiemytzkiPoint(lim["a"], Fraction(0)))
            if lim["r"] > 0:
                pts.append(NiemytzkiPoint(lim["a"], lim["r"]))
        elif comp.kind == "interior_disc":
            pts.append(NiemytzkiPoint(lim["cx"], lim["cy"]))
            if lim["r"] > 0:
                pts.append(NiemytzkiPoint(lim["cx"], lim["cy"] - lim["r"] / 2))
    return pts


def bridge_4_iff_d(
    S: Stratification, chain: DecreasingChain, plan: SamplePlan
) -> tuple[CheckReport, CheckReport, bool]:
    """Verdict agreement between the chain-infimum and chain-closure checks."""
    points = chain_check_points(chain, plan)
    report4 = check_condition_4(S, chain, points, plan)
    A = stratification_to_approximation(S, QGrid(plan.grid_m))
    grid = QGrid(plan.grid_m).values
    pairs = [
        (grid[len(grid) // 16], grid[len(grid) // 12]),
        (grid[len(grid) // 20], grid[len(grid) // 15]),
        (grid[len(grid) // 3], grid[len(grid) // 2]),
    ]
    pairs = [(p, q) for p, q in pairs if p < q]
    report_d = check_condition_d(A, chain, pairs, points, plan)
    return report4, report_d, report4.passed == report_d.passed


# ---------------------------------------------------------------------------
# separations


@dataclass
class HausdorffWitness:
    threshold: Scalar
    upper: Callable[[Point], bool]  # contains the inside point
    lower: Callable[[Point], bool]  # contains the outside point


def hausdorff_witness(
    S: Stratification, x: Point, y: Point, U: SetLike
) -> HausdorffWitness:
    """Disjoint value-threshold neighborhoods splitting x in U from y off U."""
    fx = S.value(U, x)
    fy = S.value(U, y)
    if not lt(0, fx):
        raise ValueError(f"need a positive value at the inside point, got {fx}")
    if not is_zero(fy):
        raise ValueError(f"need value 0 at the outside point, got {fy}")
    t = fx / 2
    upper = lambda p: lt(t, S.value(U, p))
    lower = lambda p: lt(S.value(U, p), t)
    if not upper(x) or not lower(y):
        raise AssertionError("threshold neighborhoods failed to split the pair")
    return HausdorffWitness(t, upper, lower)


@dataclass
class SeparationResult:
    low_side: Callable[[Point], bool]  # h < 1/2, contains the zero set of f
    high_side: Callable[[Point], bool]  # h > 1/2, contains the zero set of g
    f_side_count: int
    g_side_count: int


def separate_regular_closed(
    f: Callable[[Point], Scalar],
    g: Callable[[Point], Scalar],
    samples: Sequence[Point],
) -> SeparationResult:
    """Split the zero sets of f and g by thresholding h = f / (f + g)."""
    f_side = []
    g_side = []
    for p in samples:
        fv, gv = f(p), g(p)
        if is_zero(fv) and is_zero(gv):
            raise ValueError(f"f and g both vanish at {p!r}: zero sets not disjoint")
        if is_zero(fv):
            f_side.append(p)
        elif is_zero(gv):
            g_side.append(p)

    def h(p: Point) -> float:
        fv, gv = float(f(p)), float(g(p))
        return fv / (fv + gv)

    low = lambda p: h(p) < 0.5
    high = lambda p: h(p) > 0.5
    for p in f_side:
        if not low(p):
            raise AssertionError(f"zero point of f landed on the high side: {p!r}")
        if high(p):
            raise AssertionError(f"sides overlap at {p!r}")
    for p in g_side:
        if not high(p):
            raise AssertionError(f"zero point of g landed on the low side: {p!r}")
        if low(p):
            raise AssertionError(f"sides overlap at {p!r}")
    return SeparationResult(low, high, len(f_side), len(g_side))


def check_separations(S: Stratification, plan: SamplePlan) -> CheckReport:
    """Sampled separation constructions: point-vs-set and set-vs-set.

    Point-vs-set: an inside point and an outside point are split by the
    half-value threshold neighborhoods.  Set-vs-set: for two index sets with
    separated hulls, the ratio f/(f+g) splits their zero sets across 1/2 on
    every sample drawn from the union.
    """
    rng = plan.rng("separations")
    witnesses = []
    n_hausdorff = 0
    n_ratio = 0
    target = max(4, plan.n_points // 4)
    guard = 0
    while n_hausdorff < target and guard < 50 * target:
        guard += 1
        U = sample_family_set(S, rng)
        big = U if isinstance(U, RegularOpenSet) else RegularOpenSet(U.space, (U,))
        if big.is_empty:
            continue
        x = sample_point_near_set(big, rng)
        y = sample_point(S.space, rng)
        if not set_member(U, x) or set_member(U, y):
            continue
        try:
            hausdorff_witness(S, x, y, U)
        except ValueError:
            continue  # precondition not met; resample the configuration
        except AssertionError:
            n_hausdorff += 1
            witnesses.append(
                {
                    "kind": "hausdorff",
                    "set": _encode_set(U),
                    "x": encode_point(x),
                    "y": encode_point(y),
                }
            )
            continue
        n_hausdorff += 1
    guard = 0
    while n_ratio < target and guard < 50 * target:
        guard += 1
        U1 = sample_family_set(S, rng)
        U2 = sample_family_set(S, rng)
        b1 = U1 if isinstance(U1, RegularOpenSet) else RegularOpenSet(U1.space, (U1,))
        b2 = U2 if isinstance(U2, RegularOpenSet) else RegularOpenSet(U2.space, (U2,))
        if b1.is_empty or b2.is_empty:
            continue
        pts1 = [sample_point_near_set(b1, rng) for _ in range(4)]
        pts2 = [sample_point_near_set(b2, rng) for _ in range(4)]
        samples = [p for p in pts1 if set_member(U1, p) and not set_member(U2, p)]
        samples += [p for p in pts2 if set_member(U2, p) and not set_member(U1, p)]
        if not samples:
            continue
        f = lambda p: S.value(U1, p)
        g = lambda p: S.value(U2, p)
        try:
            separate_regular_closed(f, g, samples)
        except (ValueError, AssertionError) as exc:
            if isinstance(exc, AssertionError):
                witnesses.append(
                    {
                        "kind": "ratio_separation",
                        "set_f": _encode_set(U1),
                        "set_g": _encode_set(U2),
                        "error": str(exc),
                    }
                )
            continue
        n_ratio += 1
    return CheckReport(
        check_id="separations",
        family=S.label,
        space=S.space.value,
        passed=not witnesses,
        counts={"hausdorff_configs": n_hausdorff, "ratio_configs": n_ratio},
        tolerances={},
        witnesses=witnesses[:10],
    )


def continuity_negative_control() -> tuple[Stratification, list]:
    """The classic discontinuous family: indicators of open intervals.

    The indicator of (0, 1) is 1 along 1/n^2 -> 0 (a right approach, so the
    sequence converges) but 0 at the limit; the continuity check must fail.
    """
    from .basesets import OpenInterval
    from .sampling import sorgenfrey_certificate

    def chi(U, p):
        return Fraction(1) if basic_member(U, p) else Fraction(0)

    from .families import user_supplied

    S = user_supplied(Space.SORGENFREY, chi)
    U = OpenInterval(Fraction(0), Fraction(1))
    cert = sorgenfrey_certificate(Fraction(0), Fraction(1, 4))
    return S, [(U, cert)]


# ---------------------------------------------------------------------------
# witness replay


def replay_witness(witness: dict) -> bool:
    """Re-evaluate a fail witness standalone; True when it still violates."""
    from .serialize import decode_basic_set, decode_chain, decode_point, decode_roset

    kind = witness["kind"]

    def load_set(obj):
        if "components" in obj:
            return decode_roset(obj)
        return decode_basic_set(obj)

    if kind == "condition_1":
        S = _family_by_label(witness["family"])
        U = load_set(witness["set"])
        p = decode_point(witness["point"])
        v = S.value(U, p)
        return set_member(U, p) != lt(0, v)
    if kind == "condition_2":
        S = _family_by_label(witness["family"])
        U = load_set(witness["small_set"])
        V = load_set(witness["big_set"])
        p = decode_point(witness["point"])
        return float(S.value(U, p)) > float(S.value(V, p)) + SEARCH_SLACK
    if kind == "condition_3":
        S = _family_by_label(witness["family"]) if witness["family"] != LABEL_USER else None
        if S is None:
            return abs(witness["worst_value"] - witness["limit_value"]) > TOL_CONT
        U = load_set(witness["set"])
        lim = decode_point(witness["limit"])
        worst = decode_point(witness["worst_point"])
        return abs(float(S.value(U, worst)) - float(S.value(U, lim))) > TOL_CONT
    if kind == "condition_4":
        S = _family_by_label(witness["family"])
        chain = decode_chain(witness["chain"])
        p = decode_point(witness["point"])
        W = decreasing_chain_interior(chain)
        inf_exact = chain_limit_value(S.label, chain, p)
        return abs(float(S.value(W, p)) - float(inf_exact)) > TOL_INF
    if kind == "condition_d":
        chain = decode_chain(witness["chain"])
        x = decode_point(witness["point"])
        from .serialize import decode_scalar

        p_val = decode_scalar(witness["p"])
        q_val = decode_scalar(witness["q"])
        label = {
            Space.SORGENFREY: LABEL_SORGENFREY,
            Space.DOUBLE_ARROW: LABEL_DOUBLE_ARROW,
            Space.NIEMYTZKI: LABEL_NIEMYTZKI,
        }[chain.space]
        S = _family_by_label(label)
        A = stratification_to_approximation(S, QGrid(10))
        W = decreasing_chain_interior(chain)
        in_all = any(
            _chain_sublevel_closure_all(comp, q_val, chain.depth, x)
            for comp in chain.components
        )
        return in_all and not A.contains(W, p_val, x)
    raise ValueError(f"cannot replay witness kind {kind!r}")
