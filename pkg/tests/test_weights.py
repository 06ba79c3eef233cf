"""Weight space: form, indices, classification, lattices, the linear map phi."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsl3.weights import (
    ALPHA,
    ALPHA1,
    ALPHA2,
    ALPHA3,
    OMEGA,
    RHO,
    ZERO,
    Weight,
    classify,
    indices,
    irreducible_dim,
    killing,
    lattice_member,
    parse_weight,
    phi,
    phi_inv,
    weyl_group_elements,
    weyl_orbit,
    weyl_reflect,
)

from conftest import TAGS, W, sample_class

rats = st.fractions(min_value=-6, max_value=6, max_denominator=4)
weights = st.tuples(rats, rats).map(lambda t: Weight(*t))


@settings(max_examples=60, deadline=None)
@given(weights, weights, rats)
def test_killing_bilinear_symmetric(a, b, r):
    assert killing(a, b) == killing(b, a)
    assert killing(a + r * b, b) == killing(a, b) + r * killing(b, b)


def test_killing_cartan_normalisation():
    for i in (1, 2, 3):
        assert killing(ALPHA[i], ALPHA[i]) == 2
    assert killing(ALPHA1, ALPHA2) == -1
    assert killing(ALPHA1, ALPHA3) == 1
    assert killing(RHO, RHO) == 2
    # omega_i pairs dually with alpha_j
    assert killing(OMEGA[1], ALPHA1) == 1
    assert killing(OMEGA[1], ALPHA2) == 0


def test_indices_and_pairing():
    lam = W(3, Fraction(1, 2))
    l1, l2, l3 = indices(lam)
    assert (l1, l2) == (4, Fraction(3, 2))
    assert l3 == l1 + l2
    for i in (1, 2, 3):
        assert indices(lam)[i - 1] == killing(lam + RHO, ALPHA[i])


def test_classification_examples():
    assert classify(W(0, 0)).tag == "atyp2-root3-even"  # indices (1,1,2)
    assert classify(W(1, 1)).tag == "typical"           # indices (2,2,4)
    assert classify(W(0, Fraction(-1, 2))).tag == "atyp1"
    assert classify(W(0, Fraction(-1, 2))).i == 1
    assert classify(W(0, 1)).tag == "atyp2-root3-odd"   # indices (1,2,3)
    assert classify(W(0, 1)).i == 1
    assert irreducible_dim(W(1, 1)) == 8
    assert irreducible_dim(W(0, 0)) == 1


@pytest.mark.parametrize("tag,dim", list(zip(TAGS, (8, 4, 3, 1))))
def test_sampler_and_dims(tag, dim):
    for w in sample_class(tag, 25, seed=1, dens=(1, 2, 3)):
        cls = classify(w)
        assert cls.tag == tag and cls.irr_dim == dim


def test_three_odd_indices_impossible():
    # l3 = l1 + l2, so all three odd cannot happen
    for w in sample_class("typical", 50, seed=2, dens=(1, 2, 3)):
        par = classify(w).parities
        assert par.count("odd") == 0
    rng = random.Random(3)
    for _ in range(200):
        w = Weight(Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3))),
                   Fraction(rng.randrange(-9, 10), rng.choice((1, 2, 3))))
        assert classify(w).parities.count("odd") != 3


def test_phi_and_inverse():
    # phi sends the simple roots to twice the fundamental weights
    assert phi(ALPHA1) == 2 * OMEGA[1]
    assert phi(ALPHA2) == 2 * OMEGA[3]
    assert phi(ALPHA3) == 2 * OMEGA[2]
    rng = random.Random(4)
    for _ in range(30):
        w = Weight(Fraction(rng.randrange(-9, 10), 3), Fraction(rng.randrange(-9, 10), 2))
        assert phi_inv(phi(w)) == w
        assert phi(phi_inv(w)) == w


def test_root_coords():
    a1, a2 = ALPHA3.root_coords()
    assert (a1, a2) == (1, 1)
    w = W(Fraction(1, 2), Fraction(1, 3))
    a1, a2 = w.root_coords()
    assert a1 * ALPHA1 + a2 * ALPHA2 == w


def test_lattice_membership():
    assert lattice_member(ALPHA1, "Q")
    assert not lattice_member(OMEGA[1], "Q")
    assert lattice_member(OMEGA[1], "P")
    assert lattice_member(Fraction(1, 2) * ALPHA1, "Q/2")
    assert lattice_member(Fraction(3, 2) * OMEGA[2], "(3/2)P")
    assert not lattice_member(OMEGA[2], "(3/2)P")
    assert lattice_member(3 * OMEGA[1], "3P")
    assert lattice_member(RHO + ALPHA2, "Q", base=RHO)
    with pytest.raises(ValueError):
        lattice_member(ZERO, "X")


def test_weyl_group():
    lam = W(2, 5)
    assert weyl_reflect(lam, 1) == lam - lam.c1 * ALPHA1
    assert weyl_reflect(weyl_reflect(lam, 1), 1) == lam
    orb = weyl_orbit(lam)
    assert len(orb) == 6
    els = weyl_group_elements()
    assert len(els) == 6
    assert sorted(s for _, _, s in els) == [-1, -1, -1, 1, 1, 1]
    for _, f, _s in els:
        assert killing(f(lam), f(lam)) == killing(lam, lam)
        assert f(lam) in orb
    assert weyl_orbit(ZERO) == [ZERO]


def test_parse_weight_round_trip():
    for s in ("[1,2]", "[-3/2,5/7]", "[0,-1/2]"):
        assert repr(parse_weight(s)) == s
    with pytest.raises(ValueError):
        parse_weight("1,2")
    with pytest.raises(ValueError):
        parse_weight("[1]")
