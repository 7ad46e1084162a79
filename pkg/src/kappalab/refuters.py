"""Executable negative results: witness searches that re-verify exactly.

Each refuter renders a non-existence argument as a finite witness bundle:
a list of typed assertions (memberships, exact values, strict inequalities,
convergence certificates) that ``reverify_bundle`` replays one by one in
exact rational arithmetic.  A refuter never reports "consistent": when its
search fails at the given budget it returns ``NOT_FOUND`` -- absence of a
witness at a finite budget proves nothing.

The four targets:

* no function family over the half-open unit intervals together with the
  rational open intervals can satisfy all three family conditions on the
  Sorgenfrey line (a density/category search produces a right-approaching
  rational sequence whose values stay above a threshold while the limit
  value is 0);
* the double arrow space violates the chain-closure condition: the clopen
  chain [(x_k,1), (1/5,0)] with x_k increasing to x keeps (x,0) in every
  element's closure while the chain interior excludes it;
* the Niemytzki plane admits no family over all open sets: tangent unit
  discs pin value 1 along a sequence converging to an axis point that the
  punctured plane must score 0;
* the axis-normalized tangent-disc family cannot extend to the open half
  plane x > 0: the point (1/(3n), 1/(6n)) scores above 1/2 inside it while
  continuity at (0,0) forces 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .basesets import HalfOpen, TangentDisc, basic_member
from .convergence import ConvergenceCertificate, verify_convergence
from .numerics import eq, le, lt
from .rosets import (
    DecreasingChain,
    ParametricBasicSet,
    ParamValue,
    decreasing_chain_interior,
    member,
)
from .sampling import double_arrow_pinch_chain
from .serialize import (
    decode_basic_set,
    decode_chain,
    decode_point,
    decode_scalar,
    encode_basic_set,
    encode_chain,
    encode_point,
    encode_scalar,
)
from .spaces import DoubleArrowPoint, NiemytzkiPoint, SorgenfreyPoint, Space

REFUTED = "refuted"
NOT_FOUND = "not_found_at_budget"


@dataclass
class RefutationResult:
    claim: str
    verdict: str
    assertions: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTED

    def payload(self) -> dict:
        return {
            "claim": self.claim,
            "verdict": self.verdict,
            "assertions": self.assertions,
            "detail": self.detail,
        }


# ---------------------------------------------------------------------------
# assertion bundle replay


def _check_assertion(a: dict, candidate=None) -> bool:
    kind = a["kind"]
    if kind == "member":
        return basic_member(decode_basic_set(a["set"]), decode_point(a["point"])) is bool(
            a["expect"]
        )
    if kind == "value_eq":
        from .families import g_family, niemytzki_basic_f

        U = decode_basic_set(a["set"])
        p = decode_point(a["point"])
        fn = g_family if a["family"] == "g_family" else niemytzki_basic_f
        return eq(fn(U, p), decode_scalar(a["value"]))
    if kind == "value_gt":
        from .families import g_family, niemytzki_basic_f

        U = decode_basic_set(a["set"])
        p = decode_point(a["point"])
        fn = g_family if a["family"] == "g_family" else niemytzki_basic_f
        return lt(decode_scalar(a["threshold"]), fn(U, p))
    if kind == "certificate":
        cert = _decode_certificate(a["certificate"])
        return verify_convergence(cert)
    if kind == "halfplane_subset":
        disc = decode_basic_set(a["set"])
        return lt(0, disc.a) and le(disc.r, disc.a)
    if kind == "chain_interior_excludes":
        chain = decode_chain(a["chain"])
        W = decreasing_chain_interior(chain)
        return not member(W, decode_point(a["point"]))
    if kind == "chain_element_contains":
        chain = decode_chain(a["chain"])
        p = decode_point(a["point"])
        return all(member(chain.at(k), p) for k in range(1, chain.depth + 1))
    if kind == "candidate_value_gt":
        threshold = decode_scalar(a["threshold"])
        if candidate is not None:
            value = _candidate_eval(candidate, a)
            return lt(threshold, value)
        return lt(threshold, decode_scalar(a["value"]))
    if kind == "candidate_value_eq":
        expected = decode_scalar(a["value"])
        if candidate is not None:
            return eq(_candidate_eval(candidate, a), expected)
        return True
    raise ValueError(f"unknown assertion kind {kind!r}")


def _candidate_eval(candidate, a: dict):
    if a["set_kind"] == "half_open_unit":
        return candidate.half_open_value(decode_scalar(a["x"]), decode_scalar(a["t"]))
    return candidate.open_value(
        decode_scalar(a["a"]), decode_scalar(a["b"]), decode_scalar(a["t"])
    )


def reverify_bundle(result: RefutationResult, candidate=None) -> bool:
    """Replay every assertion of a refuted bundle; True when all hold."""
    if not result.refuted:
        return False
    return all(_check_assertion(a, candidate) for a in result.assertions)


def _encode_certificate(cert: ConvergenceCertificate) -> dict:
    return {
        "space": cert.space.value,
        "sequence": [encode_point(p) for p in cert.sequence],
        "limit": encode_point(cert.limit),
        "witnesses": [encode_basic_set(w) for w in cert.witnesses],
    }


def _decode_certificate(obj: dict) -> ConvergenceCertificate:
    space = Space(obj["space"])
    return ConvergenceCertificate(
        space,
        tuple(decode_point(p) for p in obj["sequence"]),
        decode_point(obj["limit"]),
        tuple(decode_basic_set(w) for w in obj["witnesses"]),
    )


# ---------------------------------------------------------------------------
# Sorgenfrey candidate families over half-open unit intervals + open intervals


@dataclass
class SorgenfreyCandidate:
    """A candidate family over {[x, x+1)} and the rational open intervals.

    ``half_open_value(x, t)`` evaluates the function indexed by [x, x+1) at
    t; ``open_value(a, b, t)`` the one indexed by (a, b).  A clopen-only
    candidate leaves ``open_value`` as None.
    """

    half_open_value: Callable[[Fraction, Fraction], Fraction]
    open_value: Optional[Callable[[Fraction, Fraction, Fraction], Fraction]] = None
    name: str = "candidate"


def characteristic_candidate() -> SorgenfreyCandidate:
    """Indicator functions of the index sets (discontinuous at open left ends)."""
    return SorgenfreyCandidate(
        half_open_value=lambda x, t: Fraction(1) if x <= t < x + 1 else Fraction(0),
        open_value=lambda a, b, t: Fraction(1) if a < t < b else Fraction(0),
        name="characteristic",
    )


def right_gap_candidate() -> SorgenfreyCandidate:
    """Capped distance to the complement on the right (continuous upward)."""
    return SorgenfreyCandidate(
        half_open_value=lambda x, t: (
            min(Fraction(1), x + 1 - t) if x <= t < x + 1 else Fraction(0)
        ),
        open_value=lambda a, b, t: (
            min(Fraction(1), b - t) if a < t < b else Fraction(0)
        ),
        name="right_gap",
    )


def clopen_only_candidate() -> SorgenfreyCandidate:
    """Sound on the half-open unit intervals alone; no open-interval functions."""
    return SorgenfreyCandidate(
        half_open_value=lambda x, t: Fraction(1) if x <= t < x + 1 else Fraction(0),
        open_value=None,
        name="clopen_only",
    )


def _condition1_violation(cand: SorgenfreyCandidate, rng: random.Random) -> Optional[dict]:
    for _ in range(64):
        x = Fraction(rng.randrange(-64, 64), 32)
        inside = [x, x + Fraction(1, 2), x + 1 - Fraction(1, 1024)]
        outside = [x - Fraction(1, 64), x + 1, x + Fraction(3, 2)]
        for t in inside:
            if not lt(0, cand.half_open_value(x, t)):
                return {"set_kind": "half_open_unit", "x": x, "t": t, "expect": "positive"}
        for t in outside:
            if not eq(cand.half_open_value(x, t), 0):
                return {"set_kind": "half_open_unit", "x": x, "t": t, "expect": "zero"}
        if cand.open_value is not None:
            a, b = x - Fraction(1, 4), x + Fraction(5, 4)
            for t, expect in ((a, "zero"), (b, "zero"), (x, "positive")):
                v = cand.open_value(a, b, t)
                ok = eq(v, 0) if expect == "zero" else lt(0, v)
                if not ok:
                    return {"set_kind": "open", "a": a, "b": b, "t": t, "expect": expect}
    return None


def _condition2_violation(cand: SorgenfreyCandidate, rng: random.Random) -> Optional[dict]:
    if cand.open_value is None:
        return None
    for _ in range(64):
        x = Fraction(rng.randrange(-32, 32), 16)
        a = x - Fraction(rng.randrange(1, 16), 16)
        b = x + 1 + Fraction(rng.randrange(0, 16), 16)
        for t in (x, x + Fraction(1, 2), x + Fraction(15, 16)):
            small = cand.half_open_value(x, t)
            big = cand.open_value(a, b, t)
            if lt(big, small):
                return {
                    "x": x,
                    "a": a,
                    "b": b,
                    "t": t,
                    "small": small,
                    "big": big,
                }
    return None


def refute_sorgenfrey_A(
    cand: SorgenfreyCandidate,
    budget_grid_pow: int = 12,
    budget_chain: int = 16,
    seed: int = 0,
) -> RefutationResult:
    """Search for a witness that the candidate breaks one of the conditions.

    Cheap support/monotonicity violations are reported first.  Otherwise the
    density search runs on (0, 2): bucket grid points by the threshold their
    self-value clears, locate a dyadic subinterval where one bucket is dense,
    and descend to a rational x with bucket points x_k approaching it from
    the right.  The assembled chain -- open-interval values above the
    threshold arbitrarily close to x, value 0 at x -- is a continuity
    violation at a rational left endpoint.
    """
    claim = f"sorgenfrey_A_stratification[{cand.name}]"
    rng = random.Random(seed)
    c1 = _condition1_violation(cand, rng)
    if c1 is not None:
        return RefutationResult(
            claim,
            REFUTED,
            assertions=[],
            detail={"stage": "condition_1", "sample": _enc_detail(c1)},
        )
    c2 = _condition2_violation(cand, rng)
    if c2 is not None:
        return RefutationResult(
            claim,
            REFUTED,
            assertions=[],
            detail={"stage": "condition_2", "sample": _enc_detail(c2)},
        )
    if cand.open_value is None:
        return RefutationResult(
            claim,
            NOT_FOUND,
            detail={"reason": "no open-interval functions to run the density search on"},
        )

    # density search on (0, 2)
    denom = 2**budget_grid_pow
    for n in (2, 3, 4, 8, 16):
        threshold = Fraction(1, n)
        # dyadic subintervals of (0, 1) at scale 1/16
        for j in range(16):
            lo = Fraction(j, 16)
            hits = 0
            total = 0
            step = Fraction(1, 256)
            t = lo + step
            while t < lo + Fraction(1, 16):
                total += 1
                if lt(threshold, cand.half_open_value(t, t)):
                    hits += 1
                t += step
            if total == 0 or Fraction(hits, total) < Fraction(9, 10):
                continue
            x = lo + Fraction(1, 64)  # rational limit inside the dense window
            xs = []
            for depth in range(1, budget_chain + 1):
                found = None
                for off_num in (1, 3, 5, 7):
                    t_try = x + Fraction(off_num, 2 ** (6 + depth))
                    if t_try >= lo + Fraction(1, 16):
                        continue
                    if lt(threshold, cand.half_open_value(t_try, t_try)):
                        found = t_try
                        break
                if found is None:
                    break
                if xs and found >= xs[-1]:
                    continue
                xs.append(found)
            if len(xs) < budget_chain // 2:
                continue
            return _assemble_sorgenfrey_bundle(cand, claim, x, xs, threshold)
    return RefutationResult(claim, NOT_FOUND, detail={"reason": "density search exhausted"})


def _enc_detail(d: dict) -> dict:
    return {k: (encode_scalar(v) if isinstance(v, Fraction) else v) for k, v in d.items()}


def _assemble_sorgenfrey_bundle(
    cand: SorgenfreyCandidate, claim: str, x: Fraction, xs: list, threshold: Fraction
) -> RefutationResult:
    b_end = Fraction(2)
    assertions = []
    for x_k in xs:
        v_half = cand.half_open_value(x_k, x_k)
        v_open = cand.open_value(x, b_end, x_k)
        if lt(v_open, v_half):
            # monotonicity breaks on the nested pair [x_k, x_k+1) in (x, 2)
            return RefutationResult(
                claim,
                REFUTED,
                assertions=[],
                detail={
                    "stage": "condition_2",
                    "sample": _enc_detail(
                        {"x": x_k, "a": x, "b": b_end, "t": x_k, "small": v_half, "big": v_open}
                    ),
                },
            )
        assertions.append(
            {
                "kind": "candidate_value_gt",
                "set_kind": "open",
                "a": encode_scalar(x),
                "b": encode_scalar(b_end),
                "t": encode_scalar(x_k),
                "threshold": encode_scalar(threshold),
                "value": encode_scalar(v_open),
            }
        )
    v_at_limit = cand.open_value(x, b_end, x)
    if not eq(v_at_limit, 0):
        return RefutationResult(
            claim,
            REFUTED,
            assertions=[],
            detail={
                "stage": "condition_1",
                "sample": _enc_detail({"a": x, "b": b_end, "t": x, "expect": "zero"}),
            },
        )
    assertions.append(
        {
            "kind": "candidate_value_eq",
            "set_kind": "open",
            "a": encode_scalar(x),
            "b": encode_scalar(b_end),
            "t": encode_scalar(x),
            "value": encode_scalar(Fraction(0)),
        }
    )
    seq = tuple(SorgenfreyPoint(t) for t in xs)
    wits = tuple(HalfOpen(x, x + 2 * (t - x)) for t in xs)
    cert = ConvergenceCertificate(Space.SORGENFREY, seq, SorgenfreyPoint(x), wits)
    assert verify_convergence(cert)
    assertions.append({"kind": "certificate", "certificate": _encode_certificate(cert)})
    return RefutationResult(
        claim,
        REFUTED,
        assertions=assertions,
        detail={
            "stage": "continuity_chain",
            "limit": encode_point(SorgenfreyPoint(x)),
            "threshold": encode_scalar(threshold),
            "note": "values stay above the threshold on a right-approaching "
            "rational sequence whose limit value is 0",
        },
    )


# ---------------------------------------------------------------------------
# double arrow chain violation


def doublearrow_not_kappa(
    x_seq: ParamValue,
    p: Fraction,
    q: Fraction,
    depth: int = 64,
) -> RefutationResult:
    """The clopen chain [(x_k,1),(1/5,0)] against the chain-closure condition.

    Requires 0 <= x_k <= x <= 1/10 (x the limit of the sequence) and
    p < q < 1/5 - x.  A strictly increasing approach yields the witness
    (x, 0): it lies in every element (all of which equal their own closures
    and their own q-superlevels), yet the chain interior [(x,1),(1/5,0)]
    excludes it.
    """
    claim = "double_arrow_chain_closure"
    x = x_seq.limit()
    b = Fraction(1, 5)
    if not (0 <= x <= Fraction(1, 10)):
        raise ValueError("the limit must lie in [0, 1/10]")
    if not (p < q):
        raise ValueError("need p < q")
    if not (q < b - x):
        raise ValueError("need q < 1/5 - x")
    values = [x_seq.at(k) for k in range(1, depth + 1)]
    if any(v < 0 or v > x for v in values):
        raise ValueError("sequence must stay in [0, x]")
    strictly_increasing = all(v < x for v in values) and all(
        values[i] < values[i + 1] for i in range(len(values) - 1)
    )
    if not strictly_increasing:
        return RefutationResult(
            claim,
            NOT_FOUND,
            detail={"reason": "degenerate chain: no strictly increasing approach"},
        )
    comp = ParametricBasicSet(
        "clopen_interval", {"a": x_seq, "b": ParamValue(b)}
    )
    chain = DecreasingChain(Space.DOUBLE_ARROW, (comp,), depth)
    witness = DoubleArrowPoint(x, 0)
    for k in range(1, depth + 1):
        assert member(chain.at(k), witness)  # closure of a clopen element is itself
        assert q < b - values[k - 1]  # the q-superlevel is the whole element
    W = decreasing_chain_interior(chain)
    assert not member(W, witness)
    assertions = [
        {"kind": "chain_element_contains", "chain": encode_chain(chain), "point": encode_point(witness)},
        {"kind": "chain_interior_excludes", "chain": encode_chain(chain), "point": encode_point(witness)},
    ]
    return RefutationResult(
        claim,
        REFUTED,
        assertions=assertions,
        detail={
            "witness": encode_point(witness),
            "p": encode_scalar(p),
            "q": encode_scalar(q),
            "interior": [encode_basic_set(c) for c in W.components],
        },
    )


def doublearrow_not_kappa_default(depth: int = 64) -> RefutationResult:
    chain = double_arrow_pinch_chain(depth)
    x_seq = chain.components[0].params["a"]
    return doublearrow_not_kappa(x_seq, Fraction(1, 20), Fraction(1, 15), depth)


# ---------------------------------------------------------------------------
# Niemytzki plane is not stratifiable over all open sets


def niemytzki_not_stratifiable(
    a, n: int = 2, m: int = 10, K: int = 50
) -> RefutationResult:
    """Pin value 1 along a sequence converging to (a, 0).

    The tangent unit discs centered over x_k = a + 1/(3k) score exactly 1 at
    (x_k, 1/(6k)) (the point sits on the disc's vertical axis).  Any family
    over all open sets satisfying support and monotonicity conditions is
    then >= 1 > 1/n on the punctured plane along a sequence that converges
    to (a, 0), where the support condition forces value 0: continuity fails.
    """
    claim = "niemytzki_stratifiable"
    if K <= 0:
        return RefutationResult(claim, NOT_FOUND, detail={"reason": "no sequence requested"})
    threshold = Fraction(1, n)
    if not threshold < 1:
        return RefutationResult(
            claim, NOT_FOUND, detail={"reason": "threshold 1/n must be below the pinned value 1"}
        )
    exact = isinstance(a, (int, Fraction, str))
    if exact:
        a_val = Fraction(a)
        num = lambda v: Fraction(v)
    else:
        a_val = float(a)
        num = float
    zero = num(0)
    k0 = max(1, m // 6 + 1)
    ks = list(range(k0, k0 + K))
    assertions = []
    seq = []
    wits = []
    for k in ks:
        xk = a_val + num(Fraction(1, 3 * k))
        ck = num(Fraction(1, 6 * k))
        pk = NiemytzkiPoint(xk, ck)
        disc = TangentDisc(xk, num(1))
        assert basic_member(disc, pk)
        assert ck < Fraction(1, m)
        assertions.append(
            {
                "kind": "value_eq",
                "family": "niemytzki_kappa",
                "set": encode_basic_set(disc),
                "point": encode_point(pk),
                "value": encode_scalar(num(1)),
            }
        )
        assertions.append(
            {
                "kind": "member",
                "set": encode_basic_set(TangentDisc(a_val, num(Fraction(1, k)))),
                "point": encode_point(pk),
                "expect": True,
            }
        )
        # the tangent disc misses (a, 0): its only axis point is (x_k, 0)
        assertions.append(
            {
                "kind": "member",
                "set": encode_basic_set(disc),
                "point": encode_point(NiemytzkiPoint(a_val, zero)),
                "expect": False,
            }
        )
        seq.append(pk)
        wits.append(TangentDisc(a_val, num(Fraction(1, k))))
    cert = ConvergenceCertificate(
        Space.NIEMYTZKI, tuple(seq), NiemytzkiPoint(a_val, zero), tuple(wits)
    )
    if not verify_convergence(cert):
        return RefutationResult(claim, NOT_FOUND, detail={"reason": "certificate failed"})
    assertions.append({"kind": "certificate", "certificate": _encode_certificate(cert)})
    return RefutationResult(
        claim,
        REFUTED,
        assertions=assertions,
        detail={
            "threshold": encode_scalar(threshold),
            "pinned_value": encode_scalar(num(1)),
            "limit": encode_point(NiemytzkiPoint(a_val, zero)),
            "note": "monotonicity pins the punctured-plane value above the "
            "threshold along the certified sequence; support forces 0 at the limit",
        },
    )


# ---------------------------------------------------------------------------
# the axis-normalized family does not extend


def g_family_not_extendable(n: int = 1) -> RefutationResult:
    """Exact-rational witness that the normalized family cannot extend.

    With r = 1/(3n): the probe point (r, r/2) lies in both B*(0, 1/n) and
    B*(r, r); the latter sits inside the open half plane x > 0; the family
    value there is (r+1)/2 = 1/2 + 1/(6n) > 1/2; and the probe points
    converge to (0,0), where any extension must vanish.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    claim = "g_family_extends_to_half_plane"
    r = Fraction(1, 3 * n)
    probe = NiemytzkiPoint(r, r / 2)
    outer = TangentDisc(Fraction(0), Fraction(1, n))
    inner = TangentDisc(r, r)
    assert basic_member(outer, probe)  # squared form: 29/36 < 1 (scaled by 1/n^2)
    assert basic_member(inner, probe)  # squared form: 1/36 < 4/36 (scaled)
    assert probe.y < inner.r  # the below-diameter case is the one that fires
    g_val = Fraction(1, 2) + Fraction(1, 6 * n)
    assertions = [
        {"kind": "member", "set": encode_basic_set(outer), "point": encode_point(probe), "expect": True},
        {"kind": "member", "set": encode_basic_set(inner), "point": encode_point(probe), "expect": True},
        {"kind": "halfplane_subset", "set": encode_basic_set(inner)},
        {
            "kind": "value_eq",
            "family": "g_family",
            "set": encode_basic_set(inner),
            "point": encode_point(probe),
            "value": encode_scalar(g_val),
        },
        {
            "kind": "value_gt",
            "family": "g_family",
            "set": encode_basic_set(inner),
            "point": encode_point(probe),
            "threshold": encode_scalar(Fraction(1, 2)),
        },
    ]
    seq = []
    wits = []
    for j in range(n, n + 40):
        rj = Fraction(1, 3 * j)
        seq.append(NiemytzkiPoint(rj, rj / 2))
        wits.append(TangentDisc(Fraction(0), Fraction(1, j)))
    cert = ConvergenceCertificate(
        Space.NIEMYTZKI, tuple(seq), NiemytzkiPoint(Fraction(0), Fraction(0)), tuple(wits)
    )
    assert verify_convergence(cert)
    assertions.append({"kind": "certificate", "certificate": _encode_certificate(cert)})
    return RefutationResult(
        claim,
        REFUTED,
        assertions=assertions,
        detail={
            "n": n,
            "probe": encode_point(probe),
            "value": encode_scalar(g_val),
            "note": "a half-plane extension would exceed 1/2 arbitrarily close "
            "to (0,0) while vanishing there",
        },
    )
