import random
from fractions import Fraction

import pytest

from conftest import report_for
from oracles import bgg_vertices_oracle
from parabolic_ops.classifier import (
    Rejection,
    bgg_vertices,
    classify_all,
    classify_pair,
    hasse_graph,
    telescoping_report,
)
from parabolic_ops.lie_core import LieError, Weight, invariant_form, parse_dynkin, reflect
from parabolic_ops.render import hasse_to_dot


def zero(rep):
    return Weight.of(*[0] * rep.datum.rank)


@pytest.mark.parametrize("k", range(1, 11))
def test_sl2_ladder(k):
    rep = report_for("A1", "1")
    c = classify_pair(Weight.of(-(k + 1)), rep.datum.simple_root(0), rep)
    assert c and c.descriptor.order == k
    assert c.descriptor.target == Weight.of(k - 1)
    assert c.descriptor.constructed
    assert c.descriptor.eigen_ladder == tuple(Fraction(j * (j - k)) for j in range(1, k + 1))


def test_rejection_reasons_g2():
    rep = report_for("G2", "1")
    got = {rep.datum.root_name(c.direction): c.reason for c in classify_all(Weight.of(-3, 1), rep)}
    assert got == {"a1": Rejection.TARGET_NOT_DOMINANT, "a2": Rejection.HEIGHT_NOT_ONE,
                   "a3": Rejection.SHORT_ROOT, "a4": Rejection.SHORT_ROOT,
                   "a5": Rejection.K_NONPOSITIVE, "a6": Rejection.HEIGHT_NOT_ONE}


def test_nonintegral_source_is_refused():
    # integral sources always give integral k, so non-integral ones are refused up front
    rep = report_for("A2", "1,2")
    with pytest.raises(LieError):
        classify_pair(Weight.of(Fraction(-5, 2), 0), rep.datum.simple_root(0), rep)


def test_source_must_be_p_dominant():
    rep = report_for("B3", "1")
    with pytest.raises(LieError):
        classify_pair(Weight.of(0, -1, 0), rep.datum.simple_root(0), rep)
    with pytest.raises(LieError):
        classify_pair(Weight.of(0, 0), rep.datum.simple_root(0), rep)


def test_g2_contact_chain_labels():
    rep = report_for("G2", "1")
    g = hasse_graph(zero(rep), rep)
    assert [rep.datum.root_name(e.label) for e in g.edges] == ["a1", "a3", "a6", "a4", "a5"]
    assert [e.constructed for e in g.edges] == [True, False, False, False, True]
    assert [e.note for e in g.edges] == [None, "first-order", None, "first-order", None]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_odd_conformal_chain(n):
    rep = report_for(f"B{n}", "1")
    g = hasse_graph(zero(rep), rep)
    assert len(g.vertices) == 2 * n and g.level_sizes() == [1] * (2 * n)
    short = [i for i, e in enumerate(g.edges) if not e.label.is_long]
    assert short == [n - 1]
    assert [i for i, e in enumerate(g.edges) if not e.constructed] == short


def _edge_oracle(verts, rep):
    form = invariant_form(rep.datum)
    d = Weight.of(*[1] * rep.datum.rank)
    out = set()
    for lam, ell in verts.items():
        for mu, ell2 in verts.items():
            if ell2 != ell + 1 or form.norm2(Weight(lam) + d) != form.norm2(Weight(mu) + d):
                continue
            diff = rep.datum.weight_to_root_coords(Weight(mu) - Weight(lam))
            for r in rep.datum.positive_roots:
                i = next(i for i, x in enumerate(r.coords) if x)
                t = diff[i] / r.coords[i]
                if t and all(c == t * x for c, x in zip(diff, r.coords)):
                    out.add((lam, mu, r.coords))
    return out


@pytest.mark.parametrize("algebra,crossed", [("G2", "1,2"), ("G2", "1"), ("G2", "2"), ("B2", "1,2"),
                                             ("A3", "1,3"), ("C3", "2"), ("B3", "1,2,3")])
def test_hasse_graph_matches_weyl_group_oracle(algebra, crossed):
    rep = report_for(algebra, crossed)
    g = hasse_graph(zero(rep), rep)
    verts = bgg_vertices_oracle(rep.datum.cartan_matrix, set(rep.parabolic.crossed_index),
                                [0] * rep.datum.rank)
    assert {v.weight.coords: v.length for v in g.vertices} == verts
    edges = {(g.vertices[e.source].weight.coords, g.vertices[e.target].weight.coords, e.label.coords)
             for e in g.edges}
    assert edges == _edge_oracle(verts, rep)


@pytest.mark.parametrize("algebra,crossed", [("G2", "1,2"), ("B3", "1"), ("A3", "2"), ("C3", "1,3")])
def test_constructed_edges_agree_with_classifier(algebra, crossed):
    rep = report_for(algebra, crossed)
    g = hasse_graph(zero(rep), rep)
    for e in g.edges:
        low, high = g.vertices[e.source].weight, g.vertices[e.target].weight
        c = classify_pair(high, e.label, rep)
        assert bool(c) == e.constructed
        if c:
            assert c.descriptor.target == low and c.descriptor.order == e.order
        assert classify_pair(low, e.label, rep).reason in (Rejection.K_NONPOSITIVE, Rejection.SHORT_ROOT,
                                                           Rejection.HEIGHT_NOT_ONE)


def test_g2_borel_rows():
    rep = report_for("G2", "1,2")
    g = hasse_graph(zero(rep), rep)
    assert g.level_sizes() == [1, 2, 2, 2, 2, 2, 1]
    full = {e for e in g.edges if e.constructed}
    assert full == {e for e in g.edges if rep.datum.root_name(e.label) == "a1"}
    dot = hasse_to_dot(g)
    assert dot.startswith("digraph") and dot.count("->") == len(g.edges)
    assert dot.count("dashed") == len(g.edges) - len(full)


def test_nonzero_seed():
    rep = report_for("A2", "1")
    g = hasse_graph(Weight.of(1, 2), rep)
    assert len(g.vertices) == 3
    assert g.vertices[0].weight == Weight.of(1, 2)
    with pytest.raises(LieError):
        bgg_vertices(Weight.of(-1, 0), rep)


@pytest.mark.parametrize("scale", [-2, Fraction(7, 3)])
def test_classification_independent_of_scale(scale):
    for algebra, crossed, lam in [("G2", "1,2", (-4, 1)), ("B3", "1", (-3, 0, 1)), ("C3", "3", (0, 1, -5))]:
        base = report_for(algebra, crossed)
        other = report_for(algebra, crossed, invariant_form(base.datum, scale))
        for a, b in zip(classify_all(Weight.of(*lam), base), classify_all(Weight.of(*lam), other)):
            assert (a.reason, a.order) == (b.reason, b.order)
            if a:
                assert (a.descriptor.target, a.descriptor.order, a.descriptor.constructed) == \
                       (b.descriptor.target, b.descriptor.order, b.descriptor.constructed)
                assert b.descriptor.eigen_ladder == tuple(scale * x for x in a.descriptor.eigen_ladder)


def test_telescoping_random_sample():
    rng = random.Random(7)
    rep = report_for("C3", "1,3")
    found = 0
    for _ in range(200):
        lam = Weight.of(rng.randint(-7, 1), rng.randint(0, 3), rng.randint(-7, 1))
        for c in classify_all(lam, rep):
            if c:
                rec = telescoping_report(c.descriptor, rep.form)
                assert rec.total == 0
                found += 1
    assert found > 20


def test_a1_second_order_steps():
    rep = report_for("A1", "1")
    desc = classify_pair(Weight.of(-3), rep.datum.simple_root(0), rep).descriptor
    assert telescoping_report(desc, rep.form).steps == (-1, 1)


@pytest.mark.parametrize("algebra,crossed,lam", [("G2", "1,2", (-4, 1)), ("B3", "1", (-3, 0, 1)),
                                                 ("C3", "1,3", (-2, 1, -4)), ("A3", "2", (1, -3, 0)),
                                                 ("D4", "1", (-4, 0, 1, 1))])
def test_descriptor_reflection_and_uniqueness(algebra, crossed, lam):
    rep = report_for(algebra, crossed)
    d = Weight.of(*[1] * rep.datum.rank)
    for c in classify_all(Weight.of(*lam), rep):
        if not c:
            continue
        desc = c.descriptor
        assert reflect(desc.source + d, desc.direction, rep.form) == desc.target + d
        others = [b for b in rep.datum.positive_roots
                  if b != desc.direction and reflect(desc.source + d, b, rep.form) == desc.target + d]
        assert others == []


@pytest.mark.parametrize("algebra,crossed", [("G2", "1,2"), ("G2", "1"), ("G2", "2"), ("B3", "1"),
                                             ("A3", "1,3"), ("A4", "1,4")])
def test_inner_vertices_have_in_and_out_edges(algebra, crossed):
    rep = report_for(algebra, crossed)
    g = hasse_graph(zero(rep), rep)
    top = max(v.length for v in g.vertices)
    for i, v in enumerate(g.vertices):
        if 0 < v.length < top:
            assert any(e.target == i for e in g.edges) and any(e.source == i for e in g.edges)
