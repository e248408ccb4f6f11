"""Group enumeration, freeness, eigenvalue statistics and lens labels."""

import math
from fractions import Fraction as F

import pytest

from u2sing.catalog import (CyclicType, Family, GroupSpec, canonical_cyclic,
                            cyclic_equivalent_type, eigenvalue_histogram,
                            enumerate_gamma_prime, enumerate_group,
                            generate_closure, generators_of,
                            is_fixed_point_free)
from u2sing.errors import ClosureOverflow, InvalidParameters, NotCoprime
from u2sing.quaternions import (IDENTITY, ONE, GroupElement, circle, compose,
                                mobius_of, power)


# -- parameter validation ---------------------------------------------------

@pytest.mark.parametrize("bad", [
    GroupSpec.dihedral(2, 2),        # gcd(m, 2n) != 1
    GroupSpec.dihedral(3, 3),
    GroupSpec.tetrahedral(2),
    GroupSpec.tetrahedral(9),
    GroupSpec.octahedral(3),
    GroupSpec.icosahedral(5),
    GroupSpec.index2(3, 2),          # m odd
    GroupSpec.index2(4, 6),          # gcd(m, n) != 1
    GroupSpec.index3(5),             # gcd(m, 6) != 3
    GroupSpec(Family.CYCLIC, q=2, p=4),
])
def test_invalid_parameters(bad):
    with pytest.raises(InvalidParameters):
        bad.validate()


def test_cyclic_factory_normalizes():
    assert GroupSpec.cyclic(-3, 5).q == 2
    assert GroupSpec.cyclic(7, 5).q == 2


# -- enumeration ------------------------------------------------------------

ORDER_CASES = [
    (GroupSpec.tetrahedral(1), 24),
    (GroupSpec.dihedral(1, 2), 8),
    (GroupSpec.cyclic(3, 5), 5),
    (GroupSpec.octahedral(1), 48),
    (GroupSpec.icosahedral(1), 120),
    (GroupSpec.index2(2, 3), 24),
    (GroupSpec.index3(3), 72),
    (GroupSpec.dihedral(3, 4), 48),
    (GroupSpec.tetrahedral(7), 168),
    (GroupSpec.icosahedral(7), 840),
    (GroupSpec.index2(8, 3), 96),
    (GroupSpec.cyclic(1, 200), 200),
]


@pytest.mark.parametrize("spec,order", ORDER_CASES)
def test_orders(spec, order):
    group = enumerate_group(spec)
    assert group.order == order == spec.expected_order()
    assert is_fixed_point_free(group)


def test_group_contains_identity_and_inverses():
    group = enumerate_group(GroupSpec.dihedral(3, 2))
    keys = {g.key() for g in group.elements}
    assert IDENTITY.key() in keys
    for g in group.elements[:10]:
        inv = GroupElement(g.left.conjugate(), g.right.conjugate())
        assert inv.canonical().key() in keys
        assert compose(g, inv).equivalent(IDENTITY)


def test_closure_overflow():
    g = GroupElement(ONE, circle(math.pi / 6))   # order 12
    with pytest.raises(ClosureOverflow):
        generate_closure([g], max_order=5)


def test_complex_reflection_detected():
    # group generated by diag(1, zeta_3): eigenvalue 1 is structural
    g = GroupElement(circle(math.pi / 3), circle(-math.pi / 3))
    group = generate_closure([g], 10)
    assert group.order == 3
    assert not is_fixed_point_free(group)


def test_fiber_subgroup_order_and_triviality():
    for spec in (GroupSpec.dihedral(3, 2), GroupSpec.tetrahedral(7),
                 GroupSpec.index3(9)):
        fiber = generators_of(spec)[0]
        sub = generate_closure([fiber], 4 * spec.m)
        assert sub.order == 2 * spec.m
        assert all(mobius_of(g).is_identity() for g in sub.elements)


def test_gamma_prime_orders():
    # products: the binary polyhedral group; diagonal families: everything
    assert enumerate_gamma_prime(GroupSpec.dihedral(5, 3)).order == 12
    assert enumerate_gamma_prime(GroupSpec.tetrahedral(7)).order == 24
    assert enumerate_gamma_prime(GroupSpec.octahedral(5)).order == 48
    assert enumerate_gamma_prime(GroupSpec.icosahedral(7)).order == 120
    assert enumerate_gamma_prime(GroupSpec.index2(2, 3)).order == 24
    assert enumerate_gamma_prime(GroupSpec.index3(3)).order == 72


# -- degenerate n = 1 specs -------------------------------------------------

@pytest.mark.parametrize("spec", [GroupSpec.dihedral(1, 1),
                                  GroupSpec.dihedral(5, 1),
                                  GroupSpec.index2(2, 1),
                                  GroupSpec.index2(4, 1)])
def test_degenerate_specs_are_cyclic(spec):
    assert spec.is_degenerate_cyclic
    group = enumerate_group(spec)
    t = cyclic_equivalent_type(group)
    assert t is not None and t.beta == group.order
    # single-generator check by brute force
    assert any(
        all(power(g, k).canonical().key() != IDENTITY.key()
            for k in range(1, group.order))
        for g in group.elements)


def test_nondegenerate_not_flagged():
    assert not GroupSpec.dihedral(1, 2).is_degenerate_cyclic
    assert not GroupSpec.tetrahedral(1).is_degenerate_cyclic


# -- eigenvalue histograms (the three exceptional tables) -------------------

def test_histogram_tetrahedral():
    hist = eigenvalue_histogram(enumerate_group(GroupSpec.tetrahedral(1)))
    assert dict(hist) == {
        (F(0), F(0)): 1, (F(1, 2), F(1, 2)): 1, (F(1, 4), F(3, 4)): 6,
        (F(1, 6), F(5, 6)): 8, (F(1, 3), F(2, 3)): 8}


def test_histogram_octahedral():
    hist = eigenvalue_histogram(enumerate_group(GroupSpec.octahedral(1)))
    assert dict(hist) == {
        (F(0), F(0)): 1, (F(1, 2), F(1, 2)): 1, (F(1, 4), F(3, 4)): 18,
        (F(1, 6), F(5, 6)): 8, (F(1, 3), F(2, 3)): 8,
        (F(1, 8), F(7, 8)): 6, (F(3, 8), F(5, 8)): 6}


def test_histogram_icosahedral():
    hist = eigenvalue_histogram(enumerate_group(GroupSpec.icosahedral(1)))
    assert dict(hist) == {
        (F(0), F(0)): 1, (F(1, 2), F(1, 2)): 1, (F(1, 4), F(3, 4)): 30,
        (F(1, 6), F(5, 6)): 20, (F(1, 3), F(2, 3)): 20,
        (F(1, 10), F(9, 10)): 12, (F(1, 5), F(4, 5)): 12,
        (F(3, 10), F(7, 10)): 12, (F(2, 5), F(3, 5)): 12}


# -- lens labels ------------------------------------------------------------

def test_canonical_cyclic_examples():
    assert canonical_cyclic(-3, 5) == CyclicType(5, 2)
    assert canonical_cyclic(1, 2) == CyclicType(2, 1)
    for m in (3, 9, 15):               # 1 - m = 1 (mod 3) when m = 3 (mod 6)
        assert canonical_cyclic(1 - m, 3) == CyclicType(3, 1)
        assert canonical_cyclic(-1 - m, 3) == CyclicType(3, 2)
    assert canonical_cyclic(0, 1).is_trivial


def test_canonical_cyclic_rejects():
    with pytest.raises(NotCoprime):
        canonical_cyclic(2, 4)
    with pytest.raises(NotCoprime):
        canonical_cyclic(0, 3)


def test_cyclic_type_dual_and_conjugate():
    t = canonical_cyclic(2, 5)
    assert t.dual() == CyclicType(5, 3)
    assert t.conjugate() == CyclicType(5, 3)      # 2 * 3 = 6 = 1 (mod 5)
    assert t.conj_key() == (5, 2) == t.conjugate().conj_key()
    assert canonical_cyclic(1, 2).dual() == CyclicType(2, 1)
    assert canonical_cyclic(2, 3).dual() == CyclicType(3, 1)
