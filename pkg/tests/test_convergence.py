"""Certified convergence in the three topologies."""

from fractions import Fraction as F

import pytest

from kappalab import (
    ConvergenceCertificate,
    HalfOpen,
    InteriorDisc,
    MalformedWitnessError,
    NiemytzkiPoint,
    SorgenfreyPoint,
    Space,
    TangentDisc,
    basic_member,
    verify_convergence,
)
from kappalab.sampling import (
    double_arrow_certificate,
    niemytzki_axis_certificate,
    niemytzki_interior_certificate,
    sorgenfrey_certificate,
)


def test_niemytzki_axis_sequence():
    # (1/(3n), 1/(6n)) -> (0,0); membership in B*(0,1/n) is 29/36 < 1 scaled
    seq = tuple(NiemytzkiPoint(F(1, 3 * n), F(1, 6 * n)) for n in range(1, 60))
    wits = tuple(TangentDisc(F(0), F(1, n)) for n in range(1, 60))
    cert = ConvergenceCertificate(
        Space.NIEMYTZKI, seq, NiemytzkiPoint(F(0), F(0)), wits
    )
    assert verify_convergence(cert)
    # the defining inequality, exactly
    assert F(1, 9) + F(25, 36) == F(29, 36) < 1


def test_sorgenfrey_right_approach():
    x = F(3, 7)
    seq = tuple(SorgenfreyPoint(x + F(1, n)) for n in range(1, 40))
    wits = tuple(HalfOpen(x, x + F(2, n)) for n in range(1, 40))
    cert = ConvergenceCertificate(Space.SORGENFREY, seq, SorgenfreyPoint(x), wits)
    assert verify_convergence(cert)


def test_sorgenfrey_left_approach_fails():
    x = F(1)
    seq = tuple(SorgenfreyPoint(x - F(1, n)) for n in range(1, 40))
    wits = tuple(HalfOpen(x, x + F(2, n)) for n in range(1, 40))
    cert = ConvergenceCertificate(Space.SORGENFREY, seq, SorgenfreyPoint(x), wits)
    assert not verify_convergence(cert)


def test_malformed_witness_shapes():
    seq = (NiemytzkiPoint(F(0), F(1, 2)),)
    bad = (InteriorDisc(F(0), F(1), F(1, 2)),)  # axis limit needs tangent discs
    cert = ConvergenceCertificate(
        Space.NIEMYTZKI, seq, NiemytzkiPoint(F(0), F(0)), bad
    )
    with pytest.raises(MalformedWitnessError):
        verify_convergence(cert)
    # non-shrinking witnesses are malformed too
    wits = (TangentDisc(F(0), F(1, 2)), TangentDisc(F(0), F(1, 2)))
    cert2 = ConvergenceCertificate(
        Space.NIEMYTZKI,
        (NiemytzkiPoint(F(0), F(1, 8)),) * 2,
        NiemytzkiPoint(F(0), F(0)),
        wits,
    )
    with pytest.raises(MalformedWitnessError):
        verify_convergence(cert2)


def test_double_arrow_left_and_right_approaches():
    left = double_arrow_certificate(F(1, 2), 0, F(1, 8), length=40)
    right = double_arrow_certificate(F(1, 2), 1, F(1, 8), length=40)
    assert verify_convergence(left)
    assert verify_convergence(right)


def test_generator_certificates_verify():
    assert verify_convergence(sorgenfrey_certificate(F(-1, 3), F(1, 5)))
    assert verify_convergence(niemytzki_axis_certificate(F(1, 2), F(1, 40), F(1, 8)))
    assert verify_convergence(niemytzki_interior_certificate(F(0), F(1), F(1, 8)))


def test_tail_property_against_witness_family():
    """A verified certificate's tails really sit inside every witness."""
    cert = niemytzki_axis_certificate(F(0), F(1, 20), F(1, 8), length=48)
    assert verify_convergence(cert)
    for n, w in enumerate(cert.witnesses):
        for p in cert.sequence[n:]:
            assert basic_member(w, p)
