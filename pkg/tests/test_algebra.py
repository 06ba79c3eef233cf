"""Explicit module operations: relations, tensor, dual, sums, sub/quotient."""

from fractions import Fraction

from qsl3.algebra import (
    direct_sum,
    dual_rep,
    omega_tilde_rep,
    quotient_rep,
    relations_ok,
    sub_rep,
    tensor_action,
    verify_relations,
)
from qsl3.repmod import character, hom_space, irreducible, verma
from qsl3.structure import socle_subspace
from qsl3.weights import Weight

from conftest import TAGS, W, sample_class


def test_relations_on_vermas():
    for tag in TAGS:
        for lam in sample_class(tag, 2, seed=10):
            rep = verma(lam)
            report = verify_relations(rep)
            bad = {k: v for k, v in report.items() if not v[0]}
            assert not bad, bad


def test_relations_on_irreducibles_and_duals():
    for tag in TAGS:
        lam = sample_class(tag, 1, seed=11)[0]
        rep = irreducible(lam)
        assert relations_ok(rep)
        assert relations_ok(dual_rep(rep))
        assert relations_ok(omega_tilde_rep(rep))


def test_tensor_action_character_is_product():
    for a, b in [
        (W(1, 1), W(0, Fraction(-1, 2))),
        (W(0, 1), W(1, 0)),
        (W(Fraction(1, 2), Fraction(1, 2)), W(1, Fraction(3, 2))),
    ]:
        ra, rb = irreducible(a), irreducible(b)
        t = tensor_action(ra, rb)
        assert relations_ok(t)
        assert character(t).terms == (character(ra) * character(rb)).terms


def test_dual_preserves_character():
    for tag in TAGS:
        lam = sample_class(tag, 1, seed=12)[0]
        rep = irreducible(lam)
        assert character(dual_rep(rep)).terms == character(rep).terms


def test_direct_sum_and_hom_counts():
    lam = W(1, 1)  # typical: L is projective and 8-dimensional
    rep = irreducible(lam)
    s = direct_sum(rep, rep)
    assert s.dim == 2 * rep.dim
    assert relations_ok(s)
    assert len(hom_space(rep, s)) == 2
    assert len(hom_space(s, s)) == 4


def test_sub_and_quotient_of_reducible_verma():
    lam = W(0, Fraction(-1, 2))  # atyp1: socle 4-dim, head 4-dim
    v = verma(lam)
    soc = socle_subspace(v)
    sub, _ = sub_rep(v, soc)
    quo, _ = quotient_rep(v, soc)
    assert sub.dim == 4 and quo.dim == 4
    assert relations_ok(sub) and relations_ok(quo)
    assert (character(sub) + character(quo)).terms == character(v).terms
    # the quotient is the irreducible head
    assert character(quo).terms == character(irreducible(lam)).terms
