import random

import pytest
from hypothesis import given, strategies as st

from restricted2m import (
    Variant,
    WeightedGraph,
    build_auxiliary,
    check_feasibility,
    classify,
    enumerate_short_cycles,
)
from restricted2m.cycles import _double_triangle, double_triangle_profile
from restricted2m.gadgets import (
    AuxBuilder,
    OverlappingGadget,
    build_double_triangle_gadget,
    build_triangle_gadget,
    check_capacities,
    check_size_bound,
    dump_auxiliary,
    erase_gadgets,
)
from restricted2m.generate import MODES, generate

from conftest import random_subcubic


def aux_of(g, variant):
    variant = Variant.parse(variant)
    return build_auxiliary(g, variant, classify(enumerate_short_cycles(g), g, variant))


def k4_minus_edge(w=None, n=4, extra=()):
    w = w or {}
    pairs = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return WeightedGraph(n, [(u, v, w.get((u, v), 1)) for u, v in pairs] + list(extra))


def test_triangle_halves(triangle345):
    aux = aux_of(triangle345, "triangle-free")
    inst, g = aux.instance, triangle345
    halves = {}
    for e, s in aux.gadget_map.splits.items():
        halves[(s.p, s.q)] = (g.unscale(inst.weights[s.half_p]), g.unscale(inst.weights[s.half_q]))
        assert inst.weights[s.elim] == 0
    assert halves == {(0, 1): (2, 1), (1, 2): (1, 3), (2, 0): (3, 2)}


def test_lone_triangle_sizes(triangle345):
    aux = aux_of(triangle345, "triangle-free")
    assert aux.instance.n == 13 and aux.active_vertices == 13
    # 6 half-edges, 3 eliminators, 6 subdivision-global and 3 hub edges
    assert aux.instance.m == 18
    tg = aux.gadget_map.triangles[0]
    assert len(tg.glob_edges) == 6 and len(tg.hub_edges) == 3
    check_capacities(aux)


def test_square_gadget_shape(unit_square):
    aux = aux_of(unit_square, "square-free")
    assert aux.instance.n == 4 + 10
    sg = aux.gadget_map.squares[0]
    inst = aux.instance
    deg = [0] * inst.n
    for u, v in inst.edges:
        deg[u] += 1
        deg[v] += 1
    assert deg[sg.u1] == 4 and deg[sg.u2] == 4
    pots = sg.potentials
    a, b, c, d = sg.cycle.vertices
    assert pots[a] == unit_square.scaled[0] // 2


def test_square_gadget_vertex_induced_example():
    g = WeightedGraph(4, [(0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 0, 3)])
    sg = aux_of(g, "square-free").gadget_map.squares[0]
    assert {v: g.unscale(r) for v, r in sg.potentials.items()} == {0: 1, 1: 1, 2: 2, 3: 2}


def test_double_triangle_weights_unit():
    g = k4_minus_edge()
    cat = enumerate_short_cycles(g)
    T = _double_triangle(g, cat.squares[0], next(t for t in cat.triangles if 0 in t.vertices))
    b = AuxBuilder(g)
    D = build_double_triangle_gadget(T, double_triangle_profile(T, g), b)
    assert [g.unscale(b.weights[k]) for k in (D.e_v, D.e_a, D.e_b)] == [3, 0, 0]


def test_double_triangle_weights_heavy_cd():
    g = k4_minus_edge({(2, 3): 10})
    cat = enumerate_short_cycles(g)
    T = _double_triangle(g, cat.squares[0], next(t for t in cat.triangles if 0 in t.vertices))
    b = AuxBuilder(g)
    D = build_double_triangle_gadget(T, double_triangle_profile(T, g), b)
    assert [g.unscale(b.weights[k]) for k in (D.e_v, D.e_a, D.e_b)] == [12, -9, -9]
    assert b.removed[2] and b.removed[3]
    assert (b.upper[0], b.upper[1]) == (1, 1)


def test_double_triangle_with_pendants():
    # unequal triangles so the unit is a genuine double triangle
    g = k4_minus_edge({(1, 2): 2, (1, 3): 2}, n=6, extra=[(0, 4, 1), (1, 5, 1)])
    aux = aux_of(g, "c4-free")
    assert len(aux.gadget_map.doubles) == 1 and aux.gadget_map.gadget_count == 0
    assert aux.active_vertices == g.n - 2 + 3
    check_capacities(aux)
    check_size_bound(aux)


def test_no_gadgets_keeps_graph():
    g = WeightedGraph(5, [(i, (i + 1) % 5, i + 1) for i in range(5)])
    aux = aux_of(g, "c4-free")
    assert aux.instance.n == 5 and aux.instance.edges == list(g.edges)
    assert aux.instance.weights == list(g.scaled)


def test_overlap_rejected(triangle345):
    b = AuxBuilder(triangle345)
    t = enumerate_short_cycles(triangle345).triangles[0]
    pots = {0: 4, 1: 2, 2: 6}
    build_triangle_gadget(t, pots, b)
    with pytest.raises(OverlappingGadget):
        build_triangle_gadget(t, pots, b)


def test_bad_potentials_rejected(triangle345):
    t = enumerate_short_cycles(triangle345).triangles[0]
    with pytest.raises(ValueError):
        build_triangle_gadget(t, {0: 1, 1: 1, 2: 1}, AuxBuilder(triangle345))


def test_dump_format(triangle345):
    text = dump_auxiliary(aux_of(triangle345, "triangle-free"))
    lines = text.splitlines()
    assert lines[1] == "p 2match 13 18"
    assert "b 1 0 2" in lines and "b 13 1 1" in lines
    assert sum(1 for ln in lines if ln.startswith("e ")) == 18


def test_dump_marks_removed_vertices():
    g = k4_minus_edge({(1, 2): 2, (1, 3): 2})
    text = dump_auxiliary(aux_of(g, "c4-free"))
    assert "c removed 3" in text and "b 3 0 0" in text and "b 4 0 0" in text


# random weights are only usable where squares are not gadgetized
_CASES = [
    (v, m)
    for v in Variant
    for m in MODES
    if not (v.forbids_squares and m in ("subcubic", "planted-triangles"))
]


@pytest.mark.parametrize("variant, mode", _CASES)
def test_generated_instances_build_cleanly(variant, mode):
    for seed in range(8):
        g = generate(40, seed, mode)
        aux = aux_of(g, variant)
        check_capacities(aux)
        check_size_bound(aux)
        assert erase_gadgets(aux).edges == g.edges
        assert erase_gadgets(aux).weights == g.weights
        assert check_feasibility(aux.instance)


@given(st.integers(0, 2**32 - 1), st.integers(3, 14))
def test_triangle_free_round_trip(seed, n):
    g = random_subcubic(random.Random(seed), n, 3 * n)
    aux = aux_of(g, "triangle-free")
    check_capacities(aux)
    rebuilt = erase_gadgets(aux)
    assert rebuilt.edges == g.edges and rebuilt.weights == g.weights
    assert aux.active_vertices <= g.n + 10 * aux.gadget_map.gadget_count
    assert check_feasibility(aux.instance)
    # half-edges of each split sum back to the original weight
    for e, s in aux.gadget_map.splits.items():
        assert aux.instance.weights[s.half_p] + aux.instance.weights[s.half_q] == g.scaled[e]
