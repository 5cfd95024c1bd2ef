"""The symbolic cycle engine: families, canonical forms, boundary, products."""

import pytest
from fractions import Fraction

from ellmotive.curves import CurvePoint, ec_add, ec_neg, ec_scalar_mul
from ellmotive.cycles import (
    AdmissibilityError,
    CycleSum,
    ParamCycle,
    PointExpr,
    UserFunction,
    boundary,
    build_family,
    canonicalize,
    check_admissible,
    cube_swap,
    decorate,
    external_product,
)
from ellmotive.divisors import DegeneracyError, FormalDivisor
from ellmotive.fixtures import fixed_points, generator, rank_one_curve, standard_functions
from ellmotive.gl2 import PureMotive


@pytest.fixture(scope="module")
def setup():
    curve, gs = standard_functions(3)
    return curve, gs, fixed_points(2)


def test_family_shapes(setup):
    curve, gs, afix = setup
    X = build_family("X", curve, 1, gs[:1])
    assert (X.b, X.c, X.codim) == (3, 2, 3)
    X2 = build_family("X", curve, 2, gs[:2], fixed=(afix[0],))
    assert (X2.b, X2.c, X2.codim) == (4, 3, 4)
    Y = build_family("Y", curve, 1, gs[:1], fixed=(afix[0],))
    assert (Y.b, Y.c, Y.codim) == (2, 1, 2)
    Z = build_family("Z", curve, 1, gs[:1], j=1, b1=afix[0], b2=afix[1])
    assert (Z.b, Z.c, Z.codim) == (2, 1, 2)
    # Z's j-th cube coordinate is the constant g_j(b2)
    from ellmotive.cycles import ConstCoord

    assert isinstance(Z.qcoords[0], ConstCoord)
    assert Z.qcoords[0].point == afix[1]


def test_admissibility(setup):
    curve, gs, _ = setup
    assert check_admissible(gs).passed
    # support containing the identity, and an even function, both flagged
    P = generator(curve)
    even = UserFunction(
        "ev",
        FormalDivisor.of(
            curve, [(P, 1), (ec_neg(P), 1), (CurvePoint.at_infinity(curve), -2)]
        ),
    )
    rep = check_admissible([even])
    assert not rep.passed
    assert any("excluded points" in v for v in rep.violations)
    assert any("even" in v for v in rep.violations)
    # point-count shortfall: n = 3 with only one function's four points
    rep = check_admissible(gs[:1], n=3)
    assert not rep.passed
    assert any("distinct support points" in v for v in rep.violations)
    # overlapping supports
    rep = check_admissible([gs[0], gs[0]])
    assert any("overlap" in v for v in rep.violations)


def test_inadmissible_input_raises(setup):
    curve, gs, afix = setup
    with pytest.raises(AdmissibilityError):
        build_family("X", curve, 1, gs[:1], fixed=(CurvePoint.at_infinity(curve),))
    with pytest.raises(AdmissibilityError):
        # b2 inside the divisor of g_j makes the constant coordinate degenerate
        build_family("Z", curve, 1, gs[:1], j=1, b1=afix[0], b2=gs[0].divisor.support()[0])


def test_canonicalize_merges_relabeled_copies(setup):
    curve, gs, _ = setup
    X = build_family("X", curve, 1, gs[:1])
    relabeled = X.rename_params({"x": "a", "y1": "b"})
    s = CycleSum.of([(1, X), (-1, relabeled)])
    assert s.is_zero()
    s = CycleSum.of([(1, X), (1, relabeled)])
    assert len(s.terms) == 1 and s.terms[0][0] == 2


def test_canonicalize_negation_and_swap(setup):
    curve, gs, _ = setup
    X = build_family("X", curve, 1, gs[:1])
    # negating one E-coordinate costs a sign
    negd = X.negate_ecoord(1)
    s = CycleSum.of([(1, X), (1, negd)])
    assert s.is_zero()
    # a term plus its own negation is empty
    assert CycleSum.of([(1, X), (-1, X)]).is_zero()


def test_cube_swap_alternating(setup):
    curve, gs, afix = setup
    Z = build_family("Z", curve, 2, gs[:2], j=1, b1=afix[0], b2=afix[1])
    s = CycleSum.single(Z)
    swapped = cube_swap(s, 1, 2)
    # Z minus its cube swap canonicalizes to 2 * (one term); the swap itself
    # folds to -Z, so the symmetrized combination dies
    diff = s - swapped
    assert len(diff.terms) == 1
    assert abs(diff.terms[0][0]) == 2
    assert (s + swapped).is_zero()


def test_eta_point_and_boundary(setup):
    curve, _, _ = setup
    P = generator(curve)
    eta = decorate("eta_point", P)
    assert eta.motives == (PureMotive(1, 0),)
    assert len(eta.terms) == 1 and abs(eta.terms[0][0]) == 2  # (p) - (-p) folds
    assert boundary(eta).is_zero()
    # at 2-torsion the class degenerates to zero
    from ellmotive.fixtures import two_torsion_curve_f11
    from ellmotive.curves import full_two_torsion

    E11 = two_torsion_curve_f11()
    u = full_two_torsion(E11)[0]
    assert CycleSum.of(
        [(1, ParamCycle(E11, (), (PointExpr.constant(u),), ()))]
    ).is_zero()


def test_boundary_of_Y_matches_display(setup):
    curve, gs, afix = setup
    a = afix[0]
    Y = build_family("Y", curve, 1, gs[:1], fixed=(a,))
    B = boundary(CycleSum.single(Y))
    # one point-pair family per divisor point: (-q - a, q)
    assert len(B.terms) == len(gs[0].divisor.terms)
    for coeff, cyc in B.terms:
        assert cyc.b == 2 and cyc.c == 0 and cyc.dim == 0
    # and the multiplicities carry through with the face sign
    mults = sorted(abs(c) for c, _ in B.terms)
    assert mults == [1, 1, 1, 1]


def test_boundary_squares_to_zero(setup):
    curve, gs, afix = setup
    for n, r in ((1, 0), (1, 2), (2, 1)):
        X = build_family("X", curve, n, gs[:n], fixed=tuple(afix[:r]))
        eta = decorate("eta", X, n=n)
        assert boundary(boundary(eta)).is_zero()
    Y = build_family("Y", curve, 2, gs[:2], fixed=(afix[0],))
    assert boundary(boundary(decorate("mu", Y, n=2))).is_zero()
    Z = build_family("Z", curve, 2, gs[:2], j=2, b1=afix[0], b2=afix[1])
    assert boundary(boundary(decorate("nu", Z, n=2))).is_zero()


def test_face_counts(setup):
    # each unary cube coordinate with divisor of positive degree d contributes
    # d zero faces and d pole faces, before cancellation
    curve, gs, afix = setup
    from ellmotive.cycles import term_faces

    Y = build_family("Y", curve, 2, gs[:2], fixed=(afix[0],))
    faces = term_faces(Y)
    # two functions, each with 2 zeros and 2 poles
    assert len(faces) == 8
    zero_faces = [f for c, f in faces if c > 0]
    assert len(zero_faces) == 4


def test_projector_quasi_idempotent_on_cycles(setup):
    curve, gs, _ = setup
    from ellmotive.cycles import apply_projector_signed
    from ellmotive.symgrp import YoungShape, transpose_projector

    X = build_family("X", curve, 1, gs[:1])
    element = transpose_projector(YoungShape.standard((2, 1), "tabloid"))
    once = apply_projector_signed(CycleSum.single(X), element)
    twice = apply_projector_signed(once, element)
    # the 2-term signed projector squares to twice itself
    assert twice.terms == once.scale(2).terms


def test_boundary_commutes_with_projector(setup):
    curve, gs, _ = setup
    from ellmotive.cycles import apply_projector_signed
    from ellmotive.symgrp import YoungShape, transpose_projector

    X = build_family("X", curve, 2, gs[:2])
    element = transpose_projector(YoungShape.standard((3, 1), "tabloid"))
    s = CycleSum.single(X)
    left = boundary(apply_projector_signed(s, element))
    right = apply_projector_signed(boundary(s), element)
    assert (left - right).is_zero()


def test_external_product(setup):
    curve, gs, _ = setup
    P = generator(curve)
    Q = ec_scalar_mul(5, P)
    a = decorate("eta_point", P)
    b = decorate("eta_point", Q)
    prod = external_product(a, b)
    for _, cyc in prod.terms:
        assert cyc.b == 2 and cyc.c == 0
    assert prod.motives == (PureMotive(1, 0), PureMotive(1, 0))
    # associativity after canonical forms
    c = decorate("eta_point", ec_scalar_mul(7, P))
    left = external_product(external_product(a, b), c)
    right = external_product(a, external_product(b, c))
    assert (left - right).is_zero()
    # the product is a graded map: (b, c) degrees add
    curve2, gs = standard_functions(2)
    Y = CycleSum.single(build_family("Y", curve2, 1, gs[:1], fixed=(ec_scalar_mul(13, P),)))
    py = external_product(Y, a)
    for _, cyc in py.terms:
        assert cyc.b == 3 and cyc.c == 1
    # decoration projection onto a Clebsch-Gordan component
    projected = external_product(a, b, target=PureMotive(0, 1))
    assert projected.motives == (PureMotive(0, 1),)
    with pytest.raises(Exception):
        external_product(a, b, target=PureMotive(5, 0))


def test_leibniz_rule(setup):
    curve, gs, afix = setup
    Y1 = CycleSum.single(build_family("Y", curve, 1, gs[:1], fixed=(afix[0],)))
    Y2 = CycleSum.single(build_family("Y", curve, 1, gs[1:2], fixed=(afix[1],)))
    lhs = boundary(external_product(Y1, Y2))
    c1 = Y1.terms[0][1].c
    sign = Fraction(-1) if c1 % 2 else Fraction(1)
    rhs = external_product(boundary(Y1), Y2) + external_product(Y1, boundary(Y2)).scale(sign)
    assert (lhs - rhs).is_zero()


def test_degenerate_face_detected(setup):
    curve, gs, _ = setup
    # a function with the identity in its support breaks the F-bar face rules
    P = generator(curve)
    g_bad = UserFunction(
        "bad",
        FormalDivisor.of(
            curve,
            [
                (P, 2),
                (CurvePoint.at_infinity(curve), -1),
                (ec_scalar_mul(2, P), -1),
            ],
        ),
    )
    adm = check_admissible([g_bad])
    assert not adm.passed


def test_canonical_form_orbit_invariance(setup):
    # random words of the signed symmetry group map a term to +-itself
    import random

    from ellmotive.cycles import canonical_term
    from ellmotive.symgrp import Permutation

    curve, gs, afix = setup
    rng = random.Random(5)
    seeds = [
        build_family("X", curve, 2, gs[:2], fixed=(afix[0],)),
        build_family("Y", curve, 2, gs[:2], fixed=(afix[1],)),
        build_family("Z", curve, 2, gs[:2], j=2, b1=afix[0], b2=afix[1]),
    ]
    seeds += [f for _, f in __import__("ellmotive.cycles", fromlist=["term_faces"]).term_faces(seeds[0])[:6]]
    for base in seeds:
        canon, sign = canonical_term(base)
        if canon is None:
            continue
        for _ in range(12):
            moved, acc = base, 1
            for _ in range(rng.randint(1, 4)):
                op = rng.randrange(3)
                if op == 0:
                    images = tuple(rng.sample(range(1, moved.b + 1), moved.b))
                    sigma = Permutation(images)
                    moved = moved.permute_ecoords(sigma)
                    acc *= sigma.sign()
                elif op == 1:
                    i = rng.randint(1, moved.b)
                    moved = moved.negate_ecoord(i)
                    acc *= -1
                else:
                    mapping = {p: f"r{k}_{p}" for k, p in enumerate(moved.params)}
                    moved = moved.rename_params(mapping)
            canon2, sign2 = canonical_term(moved)
            assert canon2 == canon
            assert sign2 == sign * acc


def test_fn_mode_families():
    from ellmotive.curves import full_two_torsion
    from ellmotive.fixtures import two_torsion_curve_f101

    curve = two_torsion_curve_f101()
    u, v, w = full_two_torsion(curve)
    # an admissible function away from 0 and the 2-torsion (P has odd order)
    P = CurvePoint.affine(curve, 1, 2)
    g = UserFunction(
        "g",
        FormalDivisor.of(
            curve,
            [
                (ec_scalar_mul(2, P), 1),
                (ec_scalar_mul(3, P), 1),
                (P, -1),
                (ec_scalar_mul(4, P), -1),
            ],
        ),
    )
    X = build_family("X", curve, 1, [g], mode="fn", uv=(u, v))
    eta = decorate("eta", X, n=1)
    assert boundary(boundary(eta)).is_zero()
