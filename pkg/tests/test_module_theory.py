from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import report_for
from oracles import peel_decompose, sl_character_by_tableaux, tensor_character
from parabolic_ops.lie_core import LieError, Weight, invariant_form, parse_dynkin, simple_reflection
from parabolic_ops.module_theory import (
    MultiplicityError,
    casimir_scalar,
    f_star_weights,
    gamma_coefficient,
    klimyk_decompose,
    levi_character,
    psi_eigenvalue,
    psi_spectrum,
    weyl_dimension,
)
from parabolic_ops.parabolic import Levi


def unit_key(levi):
    form = invariant_form(levi.datum)
    return lambda w: form.pair(w, levi.rho)


@pytest.mark.parametrize("hw", [(1, 0), (2, 1), (3, 3), (0, 4), (1, 0, 2), (2, 1, 1), (1, 1, 1, 1)])
def test_freudenthal_matches_tableaux(hw):
    d = parse_dynkin(f"A{len(hw)}")
    char = levi_character(Weight.of(*hw), Levi.full(d))
    expected = {Weight.of(*w): m for w, m in sl_character_by_tableaux(hw).items()}
    assert char == expected


@pytest.mark.parametrize("algebra,hw", [("B2", (1, 1)), ("C3", (0, 1, 1)), ("G2", (1, 1)), ("B3", (0, 0, 2)),
                                        ("F4", (0, 0, 0, 1)), ("D4", (1, 0, 1, 1))])
def test_character_dimension_matches_weyl_formula(algebra, hw):
    levi = Levi.full(parse_dynkin(algebra))
    lam = Weight.of(*hw)
    char = levi_character(lam, levi)
    assert sum(char.values()) == weyl_dimension(lam, levi)
    # characters are Weyl invariant: reflecting through any simple root permutes weights
    for i in range(levi.datum.rank):
        assert {simple_reflection(w, i, levi.datum): m for w, m in char.items()} == char


def test_known_dimensions():
    g2 = Levi.full(parse_dynkin("G2"))
    assert weyl_dimension(Weight.of(0, 1), g2) == 7
    assert weyl_dimension(Weight.of(1, 0), g2) == 14
    assert weyl_dimension(Weight.of(0, 0, 0, 1), Levi.full(parse_dynkin("F4"))) == 26


def test_a2_adjoint_square():
    levi = Levi.full(parse_dynkin("A2"))
    adj = levi_character(Weight.of(1, 1), levi)
    comps = klimyk_decompose(Weight.of(1, 1), adj, levi)
    got = {c.highest_weight: c.multiplicity for c in comps}
    assert got == {Weight.of(0, 0): 1, Weight.of(1, 1): 2, Weight.of(3, 0): 1, Weight.of(0, 3): 1,
                   Weight.of(2, 2): 1}
    with pytest.raises(MultiplicityError):
        klimyk_decompose(Weight.of(1, 1), adj, levi, multiplicity_free=True)


def test_f_star_is_dual_of_g1():
    rep = report_for("A4", "1,4")
    for node, roots in rep.f_star_components.items():
        weights = f_star_weights(rep, node)
        assert sorted(weights.elements()) == sorted(-rep.datum.root_to_weight(r.coords) for r in roots)
    with pytest.raises(LieError):
        f_star_weights(rep, 2)


def test_levi_character_rejects_nondominant():
    rep = report_for("B3", "1")
    with pytest.raises(LieError):
        levi_character(Weight.of(0, -1, 0), rep)


CASES = [("A2", "1", (0, 0)), ("A2", "1", (-3, 2)), ("B3", "1", (-2, 1, 1)), ("C3", "3", (1, 1, -4)),
         ("G2", "1", (-1, 3)), ("G2", "2", (2, -5)), ("A3", "2", (1, -1, 2)), ("D4", "2", (1, -3, 1, 2)),
         ("F4", "1", (-2, 0, 1, 0)), ("B3", "1,3", (0, 1, -1))]


@pytest.mark.parametrize("algebra,crossed,hw", CASES)
def test_klimyk_matches_character_peeling(algebra, crossed, hw):
    rep = report_for(algebra, crossed)
    lam = Weight.of(*hw)
    for node in rep.parabolic.crossed:
        fstar = f_star_weights(rep, node)
        product = tensor_character(fstar, levi_character(lam, rep))
        oracle = peel_decompose(product, rep.levi, lambda w: levi_character(w, rep), unit_key(rep.levi))
        comps = klimyk_decompose(lam, fstar, rep, multiplicity_free=True)
        assert {c.highest_weight: c.multiplicity for c in comps} == dict(oracle)


@pytest.mark.parametrize("algebra,crossed,hw", CASES)
@pytest.mark.parametrize("scale", [1, -2, Fraction(7, 3)])
def test_psi_eigenvalue_is_casimir_difference(algebra, crossed, hw, scale):
    rep = report_for(algebra, crossed, invariant_form(parse_dynkin(algebra), scale))
    lam = Weight.of(*hw)
    for node in rep.parabolic.crossed:
        neg_beta = -rep.datum.root_to_weight(rep.datum.simple_root(node - 1).coords)
        sp = psi_spectrum(lam, node, rep)
        assert sum(weyl_dimension(c.highest_weight, rep) for c, _ in sp.entries) == \
            weyl_dimension(lam, rep) * weyl_dimension(neg_beta, rep)
        for comp, c in sp.entries:
            mu = comp.highest_weight
            half = (casimir_scalar(mu, rep) - casimir_scalar(lam, rep) - casimir_scalar(neg_beta, rep)) / 2
            assert c == half


def test_psi_scales_linearly():
    d = parse_dynkin("C3")
    lam, mu = Weight.of(1, 2, -4), Weight.of(1, 0, -3)
    base = psi_eigenvalue(lam, mu, invariant_form(d))
    assert psi_eigenvalue(lam, mu, invariant_form(d, Fraction(7, 3))) == Fraction(7, 3) * base


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["A1", "A3", "B2", "C3", "G2", "F4"]), st.integers(1, 6),
       st.sampled_from([1, -2, Fraction(7, 3)]), st.data())
def test_gamma_coefficient_closed_form(name, j, scale, data):
    d = parse_dynkin(name)
    form = invariant_form(d, scale)
    alpha = data.draw(st.sampled_from(d.positive_roots))
    lam = Weight(tuple(Fraction(data.draw(st.integers(-4, 4))) for _ in range(d.rank)))
    rho = Weight.of(*[1] * d.rank)
    value = gamma_coefficient(lam, alpha, j, form)
    assert value == (form.norm2(lam + d.root_to_weight(alpha.coords) * j + rho) - form.norm2(lam + rho)) / 2
    with pytest.raises(LieError):
        gamma_coefficient(lam, alpha, 0, form)


def test_weights_counter_and_iterable_agree():
    rep = report_for("A2", "1")
    fstar = f_star_weights(rep, 1)
    a = klimyk_decompose(Weight.of(-1, 2), fstar, rep)
    b = klimyk_decompose(Weight.of(-1, 2), list(Counter(fstar).elements()), rep)
    assert a == b
