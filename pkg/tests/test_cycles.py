import logging
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from restricted2m import NotVertexInduced, Variant, WeightedGraph, classify, enumerate_short_cycles
from restricted2m.cycles import (
    DOUBLE_TRIANGLE,
    PROBLEMATIC,
    UNPROBLEMATIC,
    _double_triangle,
    check_classification,
    cycle_potentials,
    double_triangle_profile,
    square_potentials,
    square_potentials_from_weights,
    triangle_potentials,
    verify_vertex_induced,
)
from restricted2m.generate import generate

from conftest import subcubic_graphs


def k4_minus_edge(w=None):
    # a=0, b=1 non-adjacent; c=2, d=3
    w = w or {}
    pairs = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return WeightedGraph(4, [(u, v, w.get((u, v), 1)) for u, v in pairs])


def test_catalog_counts(unit_k4):
    cat = enumerate_short_cycles(unit_k4)
    assert len(cat.triangles) == 4 and len(cat.squares) == 3
    c5 = WeightedGraph(5, [(i, (i + 1) % 5, 1) for i in range(5)])
    assert enumerate_short_cycles(c5).all() == []
    cat = enumerate_short_cycles(k4_minus_edge())
    assert len(cat.triangles) == 2 and len(cat.squares) == 1


def test_catalog_by_edge_is_consistent(unit_k4):
    cat = enumerate_short_cycles(unit_k4)
    for c in cat.all():
        for e in c.native_edges:
            assert c in cat.by_edge[e]
    # each K4 edge lies on two triangles and two squares
    assert all(len(v) == 4 for v in cat.by_edge.values())


def test_rotated():
    cat = enumerate_short_cycles(WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]))
    s = cat.squares[0]
    assert s.rotated(2, 1) == (2, 1, 0, 3)
    assert s.rotated(2, 3) == (2, 3, 0, 1)
    with pytest.raises(ValueError):
        s.rotated(0, 2)


def test_lone_triangle_is_problematic(triangle345):
    g = triangle345
    cls = classify(enumerate_short_cycles(g), g, "triangle-free")
    assert list(cls.labels.values()) == [PROBLEMATIC]
    cls = classify(enumerate_short_cycles(g), g, "square-free")
    assert cls.labels == {}


def test_two_triangles_heavier_is_problematic():
    # triangles {0,2,3} weight 6 and {1,2,3} weight 9 share edge (2,3)
    g = k4_minus_edge({(0, 2): 2, (0, 3): 2, (2, 3): 2, (1, 2): 3.5, (1, 3): 3.5})
    cat = enumerate_short_cycles(g)
    cls = classify(cat, g, "triangle-free")
    by_set = {frozenset(t.vertices): cls.labels[t] for t in cat.triangles}
    assert by_set[frozenset({0, 2, 3})] == UNPROBLEMATIC
    assert by_set[frozenset({1, 2, 3})] == PROBLEMATIC


def test_k4_triangles_all_unproblematic(unit_k4):
    cls = classify(enumerate_short_cycles(unit_k4), unit_k4, "triangle-free")
    assert set(cls.labels.values()) == {UNPROBLEMATIC}
    for c, w in cls.witnesses.items():
        assert w.kind == "triangle" and len(set(c.native_edges) & set(w.native_edges)) == 1


def test_unit_square_problematic(unit_square):
    for variant in ("square-free", "c4-free"):
        cls = classify(enumerate_short_cycles(unit_square), unit_square, variant)
        assert list(cls.labels.values()) == [PROBLEMATIC]


def test_equal_triangles_leave_square_alone():
    # with a weight tie each triangle witnesses the other; only the square is problematic
    g = k4_minus_edge()
    cls = classify(enumerate_short_cycles(g), g, "c4-free")
    assert cls.double_triangles == []
    assert [c.kind for c in cls.problematic()] == ["square"]


def test_c4_free_merges_double_triangle():
    g = k4_minus_edge({(1, 2): 2, (1, 3): 2})
    cls = classify(enumerate_short_cycles(g), g, "c4-free")
    assert len(cls.double_triangles) == 1
    T = cls.double_triangles[0]
    # the heavier triangle {1,2,3} is the problematic one, so a=1 sits in it
    assert (T.a, T.b) == (1, 0) and (T.c, T.d) == (2, 3)
    assert cls.problematic() == []
    assert sum(1 for lab in cls.labels.values() if lab == DOUBLE_TRIANGLE) == 2
    # the other triangle is unproblematic through the one-edge square witness
    assert sum(1 for lab in cls.labels.values() if lab == UNPROBLEMATIC) == 1
    check_classification(cls)


@pytest.mark.parametrize(
    "w, expected",
    [
        ((3, 4, 5), (2, 1, 3)),
        ((1, 1, 1), (Fraction(1, 2),) * 3),
        ((1, 1, 10), (5, -4, 5)),
    ],
)
def test_triangle_potentials(w, expected):
    r = triangle_potentials(*w)
    assert r == tuple(Fraction(x) for x in expected)
    assert (r[0] + r[1], r[1] + r[2], r[2] + r[0]) == w


def test_square_potentials_examples():
    assert square_potentials_from_weights(2, 3, 4, 3) == (1, 1, 2, 2)
    with pytest.raises(NotVertexInduced):
        square_potentials_from_weights(1, 1, 1, 2)


def test_verify_vertex_induced():
    bad = WeightedGraph(4, [(0, 1, 0), (1, 2, 5), (2, 3, 0), (3, 0, 5)])
    cat = enumerate_short_cycles(bad)
    assert [s.vertices for s in verify_vertex_induced(bad, cat)] == [(0, 1, 2, 3)]
    with pytest.raises(NotVertexInduced) as ex:
        square_potentials(cat.squares[0], bad)
    assert ex.value.rule == "vertex-induced"


def test_diagonal_warning_only_with_both_diagonals(unit_k4, caplog):
    g = WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (0, 2, 9)])
    with caplog.at_level(logging.WARNING):
        square_potentials(enumerate_short_cycles(g).squares[0], g)
    assert not caplog.records
    skew = WeightedGraph(4, [(x, y, 5 if (x, y) == (0, 2) else 1) for x in range(4) for y in range(x + 1, 4)])
    s = next(s for s in enumerate_short_cycles(skew).squares if s.vertices == (0, 1, 2, 3))
    with caplog.at_level(logging.WARNING):
        square_potentials(s, skew)
    assert any("diagonal" in r.message for r in caplog.records)


def test_cycle_potentials_are_scaled_integers(triangle345):
    t = enumerate_short_cycles(triangle345).triangles[0]
    r = cycle_potentials(triangle345, t)
    assert r == {0: 4, 1: 2, 2: 6}


def _unit(g):
    sq = enumerate_short_cycles(g).squares[0]
    tri = next(t for t in enumerate_short_cycles(g).triangles if 0 in t.vertices)
    return _double_triangle(g, sq, tri)


def test_profile_unit():
    g = k4_minus_edge()
    T = _unit(g)
    assert (T.a, T.b, T.c, T.d) == (0, 1, 2, 3)
    p = double_triangle_profile(T, g)
    assert (p.m11, p.m21, p.m12) == (6, 6, 6)  # scale 2
    ac, bd, cd = g.edge_id(0, 2), g.edge_id(1, 3), g.edge_id(2, 3)
    assert p.witnesses[(1, 1)] == tuple(sorted((ac, bd, cd)))


def test_profile_heavy_cd():
    g = k4_minus_edge({(2, 3): 10})
    T = _unit(g)
    p = double_triangle_profile(T, g)
    assert (g.unscale(p.m11), g.unscale(p.m21), g.unscale(p.m12)) == (12, 3, 3)
    assert g.edge_id(2, 3) in p.witnesses[(1, 1)]


@pytest.mark.parametrize("mode", ["subcubic", "planted-triangles", "planted-squares", "planted-double-triangles"])
@pytest.mark.parametrize("variant", list(Variant))
def test_classification_disjoint_on_generated(mode, variant):
    for seed in range(15):
        g = generate(30, seed, mode)
        cls = classify(enumerate_short_cycles(g), g, variant)
        check_classification(cls)
        for c, lab in cls.labels.items():
            assert (lab == UNPROBLEMATIC) == (c in cls.witnesses)


@given(subcubic_graphs(max_n=12), st.sampled_from(list(Variant)))
def test_classification_invariants(g, variant):
    cat = enumerate_short_cycles(g)
    cls = classify(cat, g, variant)
    check_classification(cls)
    assert set(cls.labels) == set(cat.relevant(variant))
    for c, w in cls.witnesses.items():
        assert set(c.native_edges) & set(w.native_edges)
    if variant is not Variant.C4_FREE:
        assert not cls.double_triangles


def test_triangle_potentials_random():
    rng = random.Random(3)
    for _ in range(200):
        w = [Fraction(rng.randint(0, 40), rng.choice([1, 2, 4])) for _ in range(3)]
        ra, rb, rc = triangle_potentials(*w)
        assert (ra + rb, rb + rc, rc + ra) == tuple(w)
