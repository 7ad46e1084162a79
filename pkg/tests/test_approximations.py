"""q-indexed families and the two transforms."""

import random
from fractions import Fraction as F

import pytest

from kappalab import (
    ClopenInterval,
    DoubleArrowPoint,
    HalfOpen,
    InteriorDisc,
    NiemytzkiPoint,
    QGrid,
    SorgenfreyPoint,
    Space,
    TangentDisc,
    approximation_to_stratification,
    basic_closure_member,
    basic_member,
    double_arrow_ro,
    niemytzki_kappa,
    realize_sublevel,
    sorgenfrey_kappa,
    stratification_to_approximation,
    validate_regular_open,
)
from kappalab.approximations import Approximation, TangentLens
from kappalab.families import niemytzki_basic_f
from kappalab.sampling import rand_dyadic, sample_point_near_set, sample_set


def test_qgrid():
    g = QGrid(4)
    assert g.values == tuple(F(k, 16) for k in range(1, 16))
    assert g.step == F(1, 16)


def test_superlevel_membership_threshold():
    S = sorgenfrey_kappa()
    A = stratification_to_approximation(S, QGrid(10))
    U = validate_regular_open(Space.SORGENFREY, [HalfOpen(F(0), F(1))])
    p = SorgenfreyPoint(F(3, 10))  # value 7/10
    assert A.contains(U, F(1, 2), p)  # 0.7 > 0.5
    assert not A.contains(U, F(3, 4), p)
    q_any = [q for q in QGrid(4).values if A.contains(U, q, SorgenfreyPoint(F(2)))]
    assert q_any == []  # value 0: in no superlevel


def test_disc_superlevel_is_concentric():
    realized = realize_sublevel("niemytzki_kappa", InteriorDisc(F(0), F(2), F(1)), F(1, 4))
    inner = InteriorDisc(F(0), F(2), F(3, 4))
    rng = random.Random(3)
    for _ in range(200):
        p = NiemytzkiPoint(rand_dyadic(rng, F(-2), F(2)), rand_dyadic(rng, F(0), F(4)))
        assert realized.member(p) == basic_member(inner, p)
        assert realized.closure_member(p) == basic_closure_member(inner, p)


def test_disc_superlevel_closure_nesting_exact():
    # cl B((0,2), 1-q) inside B((0,2), 1-p) for p < q: the radius algebra
    for p_val, q_val in ((F(1, 8), F(1, 4)), (F(1, 3), F(1, 2))):
        outer = realize_sublevel("niemytzki_kappa", InteriorDisc(F(0), F(2), F(1)), p_val)
        inner = realize_sublevel("niemytzki_kappa", InteriorDisc(F(0), F(2), F(1)), q_val)
        # boundary points of the inner closure, exactly on the circle
        for dx, dy in ((1 - q_val, 0), (-(1 - q_val), 0), (0, 1 - q_val), (0, -(1 - q_val))):
            x = NiemytzkiPoint(F(0) + dx, F(2) + dy)
            assert inner.closure_member(x)
            assert outer.member(x)


def test_tangent_lens_exact_predicates():
    U = TangentDisc(F(0), F(1))
    lens = TangentLens(F(0), F(1), F(1, 2))
    rng = random.Random(5)
    for _ in range(300):
        x = rand_dyadic(rng, F(-2), F(2), depth=9)
        y = rand_dyadic(rng, F(0), F(5, 2), depth=9)
        p = NiemytzkiPoint(x, y)
        v = niemytzki_basic_f(U, p)
        assert lens.member(p) == (v > F(1, 2)), (p, v)
    # axis behaviour: only the tangency point adheres
    assert lens.member(NiemytzkiPoint(F(0), F(0)))
    assert lens.closure_member(NiemytzkiPoint(F(0), F(0)))
    assert not lens.closure_member(NiemytzkiPoint(F(1, 4), F(0)))


def test_double_arrow_superlevel_drops_short_components():
    S = double_arrow_ro()
    U = validate_regular_open(
        Space.DOUBLE_ARROW,
        [ClopenInterval(F(0), F(1, 8), include_left_extreme=True), ClopenInterval(F(1, 2), F(1))],
    )
    realized = realize_sublevel(S.label, U, F(1, 4))
    # the short component survives only through its extreme point (value 1)
    assert realized.member(DoubleArrowPoint(F(0), 0))
    assert not realized.member(DoubleArrowPoint(F(1, 16), 0))
    assert realized.member(DoubleArrowPoint(F(3, 4), 0))


def test_prop3_reconstruction_sup_semantics():
    # U_q = U for q < 1/4 and empty otherwise: the dense-index supremum is 1/4
    space = Space.SORGENFREY
    U = validate_regular_open(space, [HalfOpen(F(0), F(1))])

    def contains(_U, q, p):
        return q < F(1, 4) and basic_member(_U.components[0], p)

    A = Approximation(space, QGrid(10), contains, lambda U, q: None, monotone_in_q=True)
    S2 = approximation_to_stratification(A, QGrid(10))
    v = S2.value(U, SorgenfreyPoint(F(1, 2)))
    assert abs(v - F(1, 4)) <= F(1, 2**10)
    assert S2.value(U, SorgenfreyPoint(F(2))) == 0


@pytest.mark.parametrize(
    "family,space",
    [
        (sorgenfrey_kappa, Space.SORGENFREY),
        (double_arrow_ro, Space.DOUBLE_ARROW),
        (niemytzki_kappa, Space.NIEMYTZKI),
    ],
)
def test_roundtrip_within_grid_step(family, space):
    S = family()
    grid = QGrid(10)
    S2 = approximation_to_stratification(stratification_to_approximation(S, grid), grid)
    rng = random.Random(17)
    from kappalab.sampling import sample_niemytzki_set_separated

    for _ in range(40):
        U = (
            sample_niemytzki_set_separated(rng)
            if space is Space.NIEMYTZKI
            else sample_set(space, rng)
        )
        for _ in range(5):
            p = sample_point_near_set(U, rng)
            v = S.value(U, p)
            v2 = S2.value(U, p)
            assert abs(float(v2) - float(v)) <= float(grid.step) + 1e-12, (U, p, v, v2)
            # dyadic values on the grid (and 0, 1) reconstruct exactly
            if isinstance(v, F) and (v == 0 or v == 1 or (0 < v < 1 and (v * 2**10).denominator == 1)):
                assert v2 == v


def test_roundtrip_exactness_on_grid_values():
    S = sorgenfrey_kappa()
    grid = QGrid(10)
    S2 = approximation_to_stratification(stratification_to_approximation(S, grid), grid)
    # value 1/4 (a grid value): exact; value 1: exact; value 0: exact
    U = validate_regular_open(Space.SORGENFREY, [HalfOpen(F(0), F(1, 4))])
    assert S2.value(U, SorgenfreyPoint(F(0))) == F(1, 4)
    U1 = validate_regular_open(Space.SORGENFREY, [HalfOpen(F(0), F(2))])
    assert S2.value(U1, SorgenfreyPoint(F(0))) == 1
    assert S2.value(U1, SorgenfreyPoint(F(3))) == 0
