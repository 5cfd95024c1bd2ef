"""Exact field arithmetic and the elliptic-curve group law."""

import random

import pytest
from fractions import Fraction

from ellmotive.curves import (
    CurveError,
    CurvePoint,
    EllipticCurve,
    ec_add,
    ec_neg,
    ec_scalar_mul,
    enumerate_points,
    full_two_torsion,
    is_two_torsion,
)
from ellmotive.fields import FieldError, PrimeField, RationalField, field_from_tag
from ellmotive.fixtures import generator, rank_one_curve, two_torsion_curve_f11


def test_prime_field_ops():
    F = PrimeField(11)
    assert F.add(7, 8) == 4
    assert F.mul(7, 8) == 1
    assert F.div(1, 7) == 8
    assert F.coerce(Fraction(1, 7)) == 8
    with pytest.raises(FieldError):
        F.div(3, 0)
    with pytest.raises(FieldError):
        PrimeField(10)
    with pytest.raises(FieldError):
        PrimeField(2)


def test_field_tags():
    assert isinstance(field_from_tag("rational"), RationalField)
    assert field_from_tag("prime:11").p == 11
    with pytest.raises(FieldError):
        field_from_tag("complex")


def test_singular_curve_rejected():
    with pytest.raises(CurveError):
        EllipticCurve.from_coeffs(RationalField(), 0, 0, 0, 0, 0)


def test_group_law_examples():
    # on y^2 + y = x^3 - x: 2(0,0) = (1,0), 3(0,0) = (-1,-1), -(0,0) = (0,-1)
    E = rank_one_curve()
    P = generator(E)
    assert ec_add(P, P) == CurvePoint.affine(E, 1, 0)
    assert ec_scalar_mul(2, P) == CurvePoint.affine(E, 1, 0)
    assert ec_scalar_mul(3, P) == CurvePoint.affine(E, -1, -1)
    assert ec_neg(P) == CurvePoint.affine(E, 0, -1)
    assert ec_scalar_mul(1, P) == P
    assert ec_scalar_mul(0, P).infinity


def test_identity_and_inverse():
    E = rank_one_curve()
    P = generator(E)
    O = CurvePoint.at_infinity(E)
    assert ec_add(P, O) == P
    assert ec_add(O, P) == P
    assert ec_add(P, ec_neg(P)).infinity
    assert ec_neg(O) == O
    # inverse pair from the divisor recipes: (0,0) + (0,-1) = 0
    assert ec_add(P, CurvePoint.affine(E, 0, -1)).infinity


def test_short_weierstrass_negation_symmetry():
    E = two_torsion_curve_f11()  # a1 = a3 = 0
    P = CurvePoint.affine(E, 1, 2)
    assert ec_neg(P) == CurvePoint.affine(E, 1, -2)


def test_mismatched_curves():
    E1, E2 = rank_one_curve(), two_torsion_curve_f11()
    with pytest.raises(CurveError):
        ec_add(generator(E1), CurvePoint.at_infinity(E2))


def test_off_curve_point_rejected():
    with pytest.raises(CurveError):
        CurvePoint.affine(rank_one_curve(), 5, 5)


def test_two_torsion_f11():
    E = two_torsion_curve_f11()
    tors = full_two_torsion(E)
    keys = {t.key() for t in tors}
    assert keys == {"(0,0)", "(2,0)", "(5,0)"}
    u, v, w = tors
    assert ec_add(u, v) in tors
    for t in tors:
        assert ec_add(t, t).infinity


def test_two_torsion_rational_empty():
    # the cubic 4x^3 - 4x + 1 has no rational root
    assert full_two_torsion(rank_one_curve()) == []


def test_group_law_properties_random():
    from ellmotive.fixtures import two_torsion_curve_f101

    for E in (two_torsion_curve_f11(), two_torsion_curve_f101()):
        pts = enumerate_points(E)
        rng = random.Random(7)
        for _ in range(60):
            P, Q, R = (rng.choice(pts) for _ in range(3))
            assert ec_add(ec_add(P, Q), R) == ec_add(P, ec_add(Q, R))
            assert ec_add(P, Q) == ec_add(Q, P)
            assert ec_add(P, ec_neg(P)).infinity
            S = ec_add(P, Q)
            if not S.infinity:
                assert E.contains(S.x, S.y)


def test_order_annihilates():
    for make in (two_torsion_curve_f11,):
        E = make()
        pts = enumerate_points(E)
        order = len(pts)
        for P in pts:
            assert ec_scalar_mul(order, P).infinity


def test_point_enumeration_only_prime_fields():
    with pytest.raises(CurveError):
        enumerate_points(rank_one_curve())


def test_is_two_torsion_includes_identity():
    E = rank_one_curve()
    assert is_two_torsion(CurvePoint.at_infinity(E))
    assert not is_two_torsion(generator(E))
