from fractions import Fraction
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from restricted2m import (
    DegreeExceeded,
    EdgeSet,
    LoopEdge,
    NegativeWeight,
    ParallelEdge,
    Variant,
    WeightedGraph,
    enumerate_short_cycles,
    forbidden_cycles,
    is_restricted_2matching,
    set_weight,
    validate_input,
)

from conftest import subcubic_graphs


def test_validate_accepts_triangle(triangle345):
    validate_input(triangle345)


def test_validate_rejects_star_center():
    g = WeightedGraph(5, [(0, i, 1) for i in range(1, 5)])
    with pytest.raises(DegreeExceeded) as ex:
        validate_input(g)
    assert ex.value.vertex == 0 and ex.value.rule == "subcubic"


def test_validate_rejects_negative_weight():
    with pytest.raises(NegativeWeight) as ex:
        validate_input(WeightedGraph(2, [(0, 1, -1)]))
    assert ex.value.edge == 0 and ex.value.rule == "nonnegative"


def test_validate_rejects_loop_and_parallel():
    with pytest.raises(LoopEdge):
        validate_input(WeightedGraph(2, [(1, 1, 1)]))
    with pytest.raises(ParallelEdge) as ex:
        validate_input(WeightedGraph(2, [(0, 1, 1), (1, 0, 2)]))
    assert ex.value.rule == "simple"


def test_scaling_keeps_potentials_integral():
    g = WeightedGraph(3, [(0, 1, "0.25"), (1, 2, 1), (0, 2, Fraction(1, 3))])
    assert g.scale == 24
    assert g.scaled == (6, 24, 8)
    assert g.unscale(sum(g.scaled)) == Fraction(1, 4) + 1 + Fraction(1, 3)


def test_float_weights_use_shortest_repr():
    g = WeightedGraph(2, [(0, 1, 0.1)])
    assert g.weights[0] == Fraction(1, 10)


@pytest.mark.parametrize(
    "variant, expected",
    [("triangle-free", [(0, 1, 2)]), ("square-free", []), ("c4-free", [(0, 1, 2)])],
)
def test_forbidden_cycles_triangle(variant, expected):
    g = WeightedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    assert forbidden_cycles(g, range(3), variant) == expected


def test_forbidden_cycles_square(unit_square):
    assert forbidden_cycles(unit_square, range(4), Variant.C4_FREE) == [(0, 1, 2, 3)]
    assert forbidden_cycles(unit_square, range(4), Variant.TRIANGLE_FREE) == []


def test_is_restricted_examples(triangle345):
    path = WeightedGraph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    assert is_restricted_2matching(path, [], "c4-free")
    assert is_restricted_2matching(path, [0, 1, 2], "c4-free")
    assert not is_restricted_2matching(triangle345, [0, 1, 2], "triangle-free")
    star = WeightedGraph(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1)])
    assert not is_restricted_2matching(star, [0, 1, 2], "square-free")


def test_set_weight_examples(triangle345):
    assert set_weight(triangle345, []) == 0
    assert set_weight(WeightedGraph(2, [(0, 1, 5)]), [0]) == 5
    assert set_weight(triangle345, [0, 1, 2]) == 12


def test_edgeset_degree_bookkeeping(triangle345):
    s = EdgeSet(triangle345, [0, 2])
    assert list(s.degree) == [2, 1, 1]
    with pytest.raises(ValueError):
        s.add(0)
    s.discard(0)
    s.discard(0)
    assert list(s.degree) == [1, 0, 1] and len(s) == 1 and 2 in s
    t = s.copy()
    t.add(1)
    assert t != s and s == EdgeSet(triangle345, [2])


def _brute_cycles(g, edge_ids, variant):
    chosen = {g.edges[e] for e in edge_ids}
    out = set()
    if variant.forbids_triangles:
        for tri in combinations(range(g.n), 3):
            if all(p in chosen for p in combinations(tri, 2)):
                out.add(frozenset(tri))
    if variant.forbids_squares:
        for quad in combinations(range(g.n), 4):
            a = quad[0]
            for b, c, d in ((quad[1], quad[2], quad[3]), (quad[1], quad[3], quad[2]), (quad[2], quad[1], quad[3])):
                cyc = [(a, b), (b, c), (c, d), (d, a)]
                if all(tuple(sorted(p)) in chosen for p in cyc):
                    out.add((a, b, c, d) if b < d else (a, d, c, b))
    return out


@given(subcubic_graphs(max_n=9), st.sampled_from(list(Variant)), st.data())
def test_forbidden_cycles_match_brute_force(g, variant, data):
    ids = data.draw(st.sets(st.sampled_from(range(g.m)))) if g.m else set()
    found = forbidden_cycles(g, ids, variant)
    normal = {frozenset(c) if len(c) == 3 else c for c in found}
    assert len(normal) == len(found)
    assert normal == _brute_cycles(g, ids, variant)


@given(subcubic_graphs(max_n=10))
def test_forbidden_cycles_of_full_graph_match_catalog(g):
    cat = enumerate_short_cycles(g)
    for variant in Variant:
        expected = sorted((c.vertices for c in cat.relevant(variant)), key=lambda c: (len(c), c))
        assert forbidden_cycles(g, range(g.m), variant) == expected


@given(subcubic_graphs(max_n=10))
def test_short_cycles_match_networkx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    ref = {frozenset(c) for c in nx.simple_cycles(G, length_bound=4)}
    cat = enumerate_short_cycles(g)
    assert {frozenset(c.vertices) for c in cat.triangles} == {c for c in ref if len(c) == 3}
    # distinct squares may share a vertex set only in K4
    assert len(cat.squares) == sum(1 for c in nx.simple_cycles(G, length_bound=4) if len(c) == 4)


@given(subcubic_graphs(max_n=8), st.data())
def test_degree_violations_never_repaired_by_additions(g, data):
    if not g.m:
        return
    ids = data.draw(st.sets(st.sampled_from(range(g.m))))
    s = EdgeSet(g, ids)
    if s.max_degree() > 2:
        for e in range(g.m):
            if e not in s:
                t = s.copy()
                t.add(e)
                assert not is_restricted_2matching(g, t, "triangle-free")


@given(subcubic_graphs(max_n=8))
def test_set_weight_nonnegative_on_valid_graphs(g):
    validate_input(g)
    assert set_weight(g, range(g.m)) >= 0
