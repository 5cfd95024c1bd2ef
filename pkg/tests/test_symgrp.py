"""Group algebra, Young symmetrizers, tabloids, and the signed group."""

import random
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellmotive.symgrp import (
    GroupAlgebraElement,
    GroupAlgebraError,
    Permutation,
    SignedGroupElement,
    YoungShape,
    action_sign,
    alt_signed_group,
    ga_multiply,
    hook_length_dimension,
    partitions,
    right_act,
    right_act_element,
    signed_antipode,
    standard_tableaux,
    tabloid_row_projector,
    transpose_projector,
    young_symmetrizer,
)


def perm(*images):
    return Permutation(tuple(images))


def unit(b):
    return GroupAlgebraElement.unit(b)


def elem(b, *items):
    return GroupAlgebraElement.of(b, [(p, c) for p, c in items])


def test_composition_right_to_left():
    # (12) * (13) applies (13) first: expect the 3-cycle sending 1->3->2->1
    s12 = Permutation.transposition(3, 1, 2)
    s13 = Permutation.transposition(3, 1, 3)
    prod = s12 * s13
    assert prod(1) == 3 and prod(3) == 2 and prod(2) == 1


def test_annihilating_pair():
    s = Permutation.transposition(2, 1, 2)
    a = elem(2, (Permutation.identity(2), 1), (s, 1))
    b = elem(2, (Permutation.identity(2), 1), (s, -1))
    assert (a * b).is_zero()


def test_unit_multiplication():
    x = elem(3, (perm(2, 3, 1), 3), (perm(1, 3, 2), -2))
    assert unit(3) * x == x
    assert x * unit(3) == x


def test_degree_mismatch():
    with pytest.raises(GroupAlgebraError):
        ga_multiply(unit(2), unit(3))


@given(st.integers(2, 5), st.randoms())
@settings(max_examples=25, deadline=None)
def test_associativity_random(b, rng):
    def rand_elem():
        items = []
        for _ in range(3):
            images = list(range(1, b + 1))
            rng.shuffle(images)
            items.append((Permutation(tuple(images)), rng.randint(-3, 3)))
        return GroupAlgebraElement.of(b, items)

    x, y, z = rand_elem(), rand_elem(), rand_elem()
    assert (x * y) * z == x * (y * z)


def test_associativity_exhaustive_b3():
    import itertools

    perms = [Permutation(p) for p in itertools.permutations((1, 2, 3))]
    singles = [GroupAlgebraElement.of(3, [(p, 1)]) for p in perms]
    for x in singles:
        for y in singles:
            for z in singles:
                assert (x * y) * z == x * (y * z)


def test_young_symmetrizer_examples():
    row2 = young_symmetrizer(YoungShape.standard((2,)))
    assert row2 == elem(2, (Permutation.identity(2), 1), (Permutation.transposition(2, 1, 2), 1))
    col2 = young_symmetrizer(YoungShape.standard((1, 1)))
    assert col2 == elem(2, (Permutation.identity(2), 1), (Permutation.transposition(2, 1, 2), -1))
    hook = young_symmetrizer(YoungShape.standard((2, 1)))
    # (e + (12)) (e - (13)) = e + (12) - (13) - (12)(13)
    expected = elem(
        3,
        (Permutation.identity(3), 1),
        (Permutation.transposition(3, 1, 2), 1),
        (Permutation.transposition(3, 1, 3), -1),
        (Permutation.transposition(3, 1, 2) * Permutation.transposition(3, 1, 3), -1),
    )
    assert hook == expected


def test_tabloid_projectors():
    assert tabloid_row_projector(YoungShape.standard((2,), "tabloid")).term_count() == 2
    rho = tabloid_row_projector(YoungShape.standard((3, 1), "tabloid"))
    assert rho.term_count() == factorial(3) * factorial(1)
    ones = tabloid_row_projector(YoungShape.standard((1, 1, 1), "tabloid"))
    assert ones == unit(3)
    with pytest.raises(GroupAlgebraError):
        tabloid_row_projector(YoungShape.standard((2, 1)))
    with pytest.raises(GroupAlgebraError):
        young_symmetrizer(YoungShape.standard((2, 1), "tabloid"))


def test_transpose_projector():
    # row tableau [1,2] flips to the column, giving the antisymmetrizer
    t = transpose_projector(YoungShape.standard((2,)))
    assert t == elem(2, (Permutation.identity(2), 1), (Permutation.transposition(2, 1, 2), -1))
    # tabloid (n+1, 1) flips to the two-cell row tabloid e + (1, n+2)
    rho_t = transpose_projector(YoungShape.standard((2, 1), "tabloid"))
    assert rho_t == elem(3, (Permutation.identity(3), 1), (Permutation.transposition(3, 1, 3), 1))
    # double transpose returns the original element, all shapes b <= 5
    for b in range(1, 6):
        for rows in partitions(b):
            for mode in ("tableau", "tabloid"):
                shape = YoungShape.standard(rows, mode)
                once = shape.transpose()
                assert once.transpose() == shape
                p = (
                    young_symmetrizer(shape)
                    if mode == "tableau"
                    else tabloid_row_projector(shape)
                )
                back = (
                    young_symmetrizer(once.transpose())
                    if mode == "tableau"
                    else tabloid_row_projector(once.transpose())
                )
                assert back == p


def test_quasi_idempotency_small():
    for b in range(1, 5):
        for rows in partitions(b):
            lam = factorial(b) // hook_length_dimension(rows)
            for shape in standard_tableaux(rows):
                e = young_symmetrizer(shape)
                assert e * e == e.scale(lam)


def test_hook_length_dimensions():
    assert hook_length_dimension((2, 1)) == 2
    assert hook_length_dimension((3, 2)) == 5
    assert hook_length_dimension((5,)) == 1
    assert hook_length_dimension((1, 1, 1, 1)) == 1
    assert sum(hook_length_dimension(r) ** 2 for r in partitions(5)) == factorial(5)


def test_signed_antipode_is_tableau_transpose():
    # the signed antipode of a Young symmetrizer is the flipped symmetrizer
    for rows in ((2, 1), (3, 1), (2, 2)):
        shape = YoungShape.standard(rows)
        assert signed_antipode(young_symmetrizer(shape)) == young_symmetrizer(shape.transpose())


def test_right_action_is_action():
    rng = random.Random(3)
    for _ in range(10):
        b = rng.randint(2, 4)
        v = GroupAlgebraElement.of(
            b, [(Permutation(tuple(rng.sample(range(1, b + 1), b))), rng.randint(1, 3))]
        )
        shape = YoungShape.standard((b - 1, 1) if b > 1 else (1,))
        p = young_symmetrizer(shape)
        assert right_act_element(right_act_element(v, p), p) == right_act_element(v, p * p)


def test_right_action_conventions_differ():
    v = unit(3)
    tau = Permutation.transposition(3, 1, 2)
    assert right_act(v, tau, "parity") == right_act(v, tau, "parity-plus-one").scale(-1)
    assert action_sign(Permutation.identity(3), "parity") == 1
    assert action_sign(Permutation.identity(3), "parity-plus-one") == -1


def test_alt_signed_group():
    assert alt_signed_group(1).term_count() == 2
    assert alt_signed_group(2).term_count() == 8
    for c in (1, 2, 3):
        alt = alt_signed_group(c)
        lam = (2**c) * factorial(c)
        assert alt * alt == alt.scale(lam)


def test_signed_group_law():
    s = SignedGroupElement((1, -1), Permutation.identity(2))
    t = SignedGroupElement((-1, 1), Permutation.transposition(2, 1, 2))
    st_ = s * t
    assert st_.perm == Permutation.transposition(2, 1, 2)
    # sigma(t) permutes the sign vector before multiplying
    assert st_.signs == (1, 1) or st_.signs == (-1, -1)
    assert (s * s).signs == (1, 1)


def test_bad_shapes():
    with pytest.raises(GroupAlgebraError):
        YoungShape((1, 2), ((1,), (2, 3)), "tableau")
    with pytest.raises(GroupAlgebraError):
        YoungShape((2, 1), ((1, 2), (2,)), "tableau")
    with pytest.raises(GroupAlgebraError):
        YoungShape.standard((2, 1), "diagram")
