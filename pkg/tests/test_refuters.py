"""The four executable negative results."""

from fractions import Fraction as F

import pytest

from kappalab import (
    NOT_FOUND,
    REFUTED,
    ParamValue,
    SorgenfreyCandidate,
    characteristic_candidate,
    clopen_only_candidate,
    doublearrow_not_kappa,
    doublearrow_not_kappa_default,
    g_family_not_extendable,
    niemytzki_not_stratifiable,
    refute_sorgenfrey_A,
    reverify_bundle,
    right_gap_candidate,
)


def test_characteristic_candidate_refuted():
    res = refute_sorgenfrey_A(characteristic_candidate())
    assert res.verdict == REFUTED
    assert res.detail["stage"] == "continuity_chain"
    assert reverify_bundle(res, characteristic_candidate())


def test_right_gap_candidate_refuted_by_chain():
    res = refute_sorgenfrey_A(right_gap_candidate())
    assert res.verdict == REFUTED
    assert res.detail["stage"] == "continuity_chain"
    # the bundle's values stay above the threshold while the limit scores 0
    assert reverify_bundle(res, right_gap_candidate())


def test_clopen_only_control_not_found():
    res = refute_sorgenfrey_A(clopen_only_candidate())
    assert res.verdict == NOT_FOUND


def test_condition_1_violator_caught_early():
    bad = SorgenfreyCandidate(
        half_open_value=lambda x, t: F(0),  # vanishes on its own set
        open_value=lambda a, b, t: F(1) if a < t < b else F(0),
        name="zero_half",
    )
    res = refute_sorgenfrey_A(bad)
    assert res.verdict == REFUTED
    assert res.detail["stage"] == "condition_1"


def test_condition_2_violator_caught_early():
    bad = SorgenfreyCandidate(
        half_open_value=lambda x, t: F(1) if x <= t < x + 1 else F(0),
        open_value=lambda a, b, t: F(1, 100) if a < t < b else F(0),
        name="shrunk_open",
    )
    res = refute_sorgenfrey_A(bad)
    assert res.verdict == REFUTED
    assert res.detail["stage"] == "condition_2"


def test_doublearrow_refuter_default():
    res = doublearrow_not_kappa_default()
    assert res.verdict == REFUTED
    assert res.detail["witness"] == {"space": "double_arrow", "t": "1/10", "side": 0}
    assert reverify_bundle(res)


def test_doublearrow_refuter_depth_invariance():
    shallow = doublearrow_not_kappa_default(depth=16)
    deep = doublearrow_not_kappa_default(depth=128)
    assert shallow.verdict == deep.verdict == REFUTED
    assert shallow.detail["witness"] == deep.detail["witness"]


def test_doublearrow_refuter_constant_chain_not_found():
    res = doublearrow_not_kappa(ParamValue(F(1, 10)), F(1, 20), F(1, 15))
    assert res.verdict == NOT_FOUND


def test_doublearrow_refuter_precondition_errors():
    with pytest.raises(ValueError):
        doublearrow_not_kappa(
            ParamValue(F(1, 10), F(-1, 10), F(0), 1), F(1, 20), F(1, 5)
        )  # q too large: needs q < 1/5 - x
    with pytest.raises(ValueError):
        doublearrow_not_kappa(
            ParamValue(F(1, 10), F(-1, 10), F(0), 1), F(1, 15), F(1, 20)
        )  # p > q


def test_niemytzki_not_stratifiable():
    res = niemytzki_not_stratifiable(0, 2, 10, 50)
    assert res.verdict == REFUTED
    assert reverify_bundle(res)
    # the pinned values are exactly 1 along the whole sequence
    values = [a for a in res.assertions if a["kind"] == "value_eq"]
    assert len(values) == 50
    assert all(a["value"] == "1" for a in values)


def test_niemytzki_not_stratifiable_float_mode():
    res = niemytzki_not_stratifiable(0.25, 2, 10, 30)
    assert res.verdict == REFUTED
    assert reverify_bundle(res)


def test_niemytzki_not_stratifiable_zero_budget():
    assert niemytzki_not_stratifiable(0, 2, 10, 0).verdict == NOT_FOUND


def test_g_extendability_n1_exact_numbers():
    res = g_family_not_extendable(1)
    assert res.verdict == REFUTED
    assert res.detail["value"] == "2/3"
    assert reverify_bundle(res)
    # the probe point memberships clear as 29/36 < 1 and 1/36 < 4/36, scaled
    probe = res.detail["probe"]
    assert probe == {"space": "niemytzki", "x": "1/3", "y": "1/6"}


def test_g_extendability_n10():
    res = g_family_not_extendable(10)
    assert res.detail["value"] == "31/60"  # 1/2 + 1/60
    assert reverify_bundle(res)


def test_g_extendability_case_selection():
    # the probe always sits below the diameter: y = r/2 < r
    for n in (1, 3, 7):
        r = F(1, 3 * n)
        assert r / 2 < r
        assert g_family_not_extendable(n).verdict == REFUTED


def test_bundles_fail_closed_on_tampering():
    res = g_family_not_extendable(1)
    res.assertions[0]["expect"] = False  # claim the probe is NOT in the disc
    assert not reverify_bundle(res)
