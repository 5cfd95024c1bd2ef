"""Divisor recipes, fiber restriction, principality, the alternating projection."""

import random

import pytest
from fractions import Fraction

from ellmotive.curves import CurvePoint, ec_add, ec_neg, enumerate_points, full_two_torsion
from ellmotive.divisors import (
    DegeneracyError,
    DivisorError,
    FormalDivisor,
    ProductDivisorClass,
    SymPoint,
    alt_project_square,
    is_principal,
    make_fbar_divisor,
    make_fn_divisor,
    make_hn_divisor,
    restrict_to_fiber,
    swap_factors_square,
)
from ellmotive.fixtures import (
    generator,
    rank_one_curve,
    standard_functions,
    two_torsion_curve_f11,
    two_torsion_curve_f101,
)


@pytest.fixture(scope="module")
def E():
    return rank_one_curve()


@pytest.fixture(scope="module")
def torsion():
    E11 = two_torsion_curve_f11()
    u, v, w = full_two_torsion(E11)
    return E11, u, v, w


def zero(E):
    return CurvePoint.at_infinity(E)


def test_fbar2_display(E):
    cls = make_fbar_divisor(E, 2)
    assert cls.coeff(("Delta", 1, 2)) == 1
    assert cls.coeff(("Psi", 1, 2)) == 1
    assert cls.coeff(("D", 1, zero(E))) == -2
    assert cls.coeff(("D", 2, zero(E))) == -2
    assert len(cls.terms) == 4


def test_fbar3_display(E):
    cls = make_fbar_divisor(E, 3)
    for i in range(1, 4):
        assert cls.coeff(("D", i, zero(E))) == -3
    for i, j in ((1, 2), (1, 3), (2, 3)):
        assert cls.coeff(("Delta", i, j)) == 1
    assert cls.coeff(("Dsum", zero(E))) == 1


def test_fbar2_swap_invariant(E):
    cls = make_fbar_divisor(E, 2)
    assert swap_factors_square(cls).terms == cls.terms


def test_fbar_requires_n_at_least_2(E):
    with pytest.raises(DivisorError):
        make_fbar_divisor(E, 1)


def test_hn_divisors(torsion):
    E11, u, v, w = torsion
    h2 = make_hn_divisor(2, u, v)
    assert h2.coeff(u) == 2 and h2.coeff(zero(E11)) == -2
    h3 = make_hn_divisor(3, u, v)
    assert h3.coeff(u) == 1 and h3.coeff(v) == 1 and h3.coeff(w) == 1
    assert h3.coeff(zero(E11)) == -3
    for n in (2, 3, 4, 5):
        d = make_hn_divisor(n, u, v)
        assert d.degree() == 0
        assert is_principal(d)


def test_hn_rejects_bad_torsion(torsion):
    E11, u, v, _ = torsion
    P = CurvePoint.affine(E11, 1, 2)
    with pytest.raises(DivisorError):
        make_hn_divisor(2, P, v)
    with pytest.raises(DivisorError):
        make_hn_divisor(2, u, u)


def test_fn_divisor_both_readings(torsion):
    E11, u, v, _ = torsion
    rep = make_fn_divisor(E11, 2, u, v)
    # product reading: Delta + Psi - 2 D1(0) - 2 D2(u)
    assert rep.product.coeff(("D", 1, zero(E11))) == -2
    assert rep.product.coeff(("D", 2, u)) == -2
    assert rep.product.coeff(("Delta", 1, 2)) == 1
    assert rep.product.coeff(("Psi", 1, 2)) == 1
    # displayed reading: -2 D1(u) - 2 D2(u) + Delta + D3(0) (= Psi on E^2)
    assert rep.displayed.coeff(("D", 1, u)) == -2
    assert rep.displayed.coeff(("D", 2, u)) == -2
    assert rep.displayed.coeff(("Psi", 1, 2)) == 1
    assert rep.difference  # the diff report is nonempty


def test_fn_odd_case(torsion):
    E11, u, v, w = torsion
    rep = make_fn_divisor(E11, 3, u, v)
    assert rep.displayed.coeff(("D", 2, u)) == -1
    assert rep.displayed.coeff(("D", 2, v)) == -1
    assert rep.displayed.coeff(("D", 2, w)) == -1
    # the product reading keeps coordinate 1 poles at 0
    assert rep.product.coeff(("D", 1, zero(E11))) == -3
    assert rep.product.coeff(("D", 1, u)) == 0


def test_restrict_fbar2_generic(E):
    cls = make_fbar_divisor(E, 2)
    q = SymPoint.generic(E, "q")
    sym = restrict_to_fiber(cls, 1, {2: q})
    # (q) + (-q) - 2(0): degree 0, sum 0
    assert sym.degree() == 0
    P = generator(E)
    conc = sym.evaluate({"q": P})
    assert conc.coeff(P) == 1
    assert conc.coeff(ec_neg(P)) == 1
    assert conc.coeff(zero(E)) == -2
    assert is_principal(conc)


def test_restrict_fbar3_generic(E):
    cls = make_fbar_divisor(E, 3)
    fixed = {2: SymPoint.generic(E, "q2"), 3: SymPoint.generic(E, "q3")}
    sym = restrict_to_fiber(cls, 1, fixed)
    assert sym.degree() == 0
    P = generator(E)
    Q = ec_add(P, P)
    conc = sym.evaluate({"q2": P, "q3": Q})
    assert conc.coeff(zero(E)) == -3
    assert conc.coeff(P) == 1
    assert conc.coeff(Q) == 1
    assert conc.coeff(ec_neg(ec_add(P, Q))) == 1
    assert is_principal(conc)


def test_restrict_disjoint_fiber(E):
    P = generator(E)
    cls = ProductDivisorClass.of(E, 2, [(("D", 2, P), 1)])
    sym = restrict_to_fiber(cls, 1, {2: SymPoint.generic(E, "q")})
    assert not sym.terms


def test_restrict_degeneracy_named(E):
    P = generator(E)
    cls = ProductDivisorClass.of(E, 2, [(("D", 2, P), 1)])
    with pytest.raises(DegeneracyError):
        restrict_to_fiber(cls, 1, {2: SymPoint.constant(P)})


def test_fiberwise_principality_random_f101():
    E = two_torsion_curve_f101()
    pts = [p for p in enumerate_points(E) if not p.infinity]
    rng = random.Random(0)
    for n in (2, 3, 4):
        cls = make_fbar_divisor(E, n)
        for i in range(1, n + 1):
            done = 0
            while done < 5:
                fixed = {j: SymPoint.generic(E, f"q{j}") for j in range(1, n + 1) if j != i}
                values = {f"q{j}": rng.choice(pts) for j in range(1, n + 1) if j != i}
                try:
                    conc = restrict_to_fiber(cls, i, fixed).evaluate(values)
                except DegeneracyError:
                    continue
                done += 1
                assert conc.degree() == 0
                assert is_principal(conc)


def test_is_principal_examples(E):
    P = generator(E)
    assert not is_principal(FormalDivisor.of(E, [(P, 1), (ec_neg(P), -1)]))
    assert is_principal(FormalDivisor.of(E, []))
    E11, u, v, _ = two_torsion_curve_f11(), *full_two_torsion(two_torsion_curve_f11())
    assert is_principal(FormalDivisor.of(E11, [(u, 2), (zero(E11), -2)]))
    with pytest.raises(DivisorError):
        is_principal(FormalDivisor.of(E, [(P, Fraction(1, 2))]))


def test_alt_project_square_identities(E):
    delta = ProductDivisorClass.of(E, 2, [(("Delta", 1, 2), 1)])
    psi = ProductDivisorClass.of(E, 2, [(("Psi", 1, 2), 1)])
    assert alt_project_square(delta).terms == (delta.scale(2) - psi.scale(2)).terms
    assert alt_project_square(psi).terms == (psi.scale(2) - delta.scale(2)).terms
    d0 = ProductDivisorClass.of(E, 2, [(("D", 1, zero(E)), 1)])
    assert not alt_project_square(d0).terms
    P = generator(E)
    dP = ProductDivisorClass.of(E, 2, [(("D", 1, P), 1)])
    assert not alt_project_square(dP).terms
    # idempotent up to the group order
    alt = alt_project_square(delta)
    assert alt_project_square(alt).terms == alt.scale(4).terms
    # swap commutes
    mixed = delta + dP.scale(3)
    assert (
        alt_project_square(swap_factors_square(mixed)).terms
        == swap_factors_square(alt_project_square(mixed)).terms
    )
    with pytest.raises(DivisorError):
        alt_project_square(make_fbar_divisor(E, 3))


def test_dsum_normalizes_to_psi_on_square(E):
    cls = ProductDivisorClass.of(E, 2, [(("Dsum", zero(E)), 1)])
    assert cls.coeff(("Psi", 1, 2)) == 1


def test_divisor_serialization_roundtrip(E):
    curve, gs = standard_functions(1)
    payload = gs[0].divisor.serialize()
    assert all(set(t) == {"point", "coeff"} for t in payload)
    assert sum(Fraction(t["coeff"]) for t in payload) == 0
