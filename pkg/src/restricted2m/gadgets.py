"""Auxiliary capacitated instance with gadgets for problematic short cycles.

Every problematic triangle or square has its native edges split into two
weighted half-edges joined by a zero-weight eliminator, and the resulting
subdivision vertices are tied to fresh global vertices.  Every double
triangle (K4 minus an edge, C4-free only) is replaced by a three-vertex
gadget carrying the weights of its best degree profiles.  The
:class:`GadgetMap` records every new element by role, so the original
graph can be rebuilt and matchings translated in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .cycles import (
    SQUARE,
    TRIANGLE,
    Classification,
    DoubleTriangle,
    DoubleTriangleProfile,
    ShortCycle,
    check_classification,
    cycle_potentials,
    double_triangle_profile,
)
from .graph import Variant, WeightedGraph
from .io import format_weight
from .lu_solver import CapacitatedInstance

__all__ = [
    "OverlappingGadget",
    "SplitEdge",
    "TriangleGadget",
    "SquareGadget",
    "DoubleTriangleGadget",
    "GadgetMap",
    "AuxiliaryInstance",
    "AuxBuilder",
    "build_triangle_gadget",
    "build_square_gadget",
    "build_double_triangle_gadget",
    "build_auxiliary",
    "erase_gadgets",
    "check_size_bound",
    "check_capacities",
    "dump_auxiliary",
]


class OverlappingGadget(ValueError):
    def __init__(self, vertices, taken):
        super().__init__(f"gadget on {tuple(vertices)} overlaps installed gadget vertices {sorted(taken)}")


@dataclass(frozen=True)
class SplitEdge:
    """Original edge ``(p, q)`` split as ``p - vp - vq - q``.

    ``vp`` is the subdivision vertex adjacent to ``p`` (v^p_q), ``vq`` the one
    adjacent to ``q``.  ``half_p``, ``half_q`` and ``elim`` are G' edge ids.
    """

    edge: int
    p: int
    q: int
    vp: int
    vq: int
    half_p: int
    half_q: int
    elim: int

    def sub_at(self, v: int) -> int:
        return self.vp if v == self.p else self.vq

    def half_at(self, v: int) -> int:
        return self.half_p if v == self.p else self.half_q


@dataclass
class TriangleGadget:
    cycle: ShortCycle
    potentials: dict[int, int]
    splits: dict[int, SplitEdge]  # original edge id -> split
    glob: dict[int, int]  # original vertex d -> u_d
    u_t: int
    glob_edges: dict[tuple[int, int], int]  # (subdivision vertex, global vertex) -> edge
    hub_edges: dict[int, int]  # original vertex d -> edge (u_d, u_t)


@dataclass
class SquareGadget:
    cycle: ShortCycle
    potentials: dict[int, int]
    splits: dict[int, SplitEdge]
    glob: dict[int, int]  # original vertex -> u_s^1 (for a, c) or u_s^2 (for b, d)
    u1: int
    u2: int
    glob_edges: dict[tuple[int, int], int]


@dataclass
class DoubleTriangleGadget:
    unit: DoubleTriangle
    profile: DoubleTriangleProfile
    u_t: int
    v1: int
    v2: int
    e_v: int  # (v1, v2)
    e_a: int  # (u_T, a)
    e_b: int  # (u_T, b)
    removed_edges: tuple[int, ...]  # the five original edges of the unit


@dataclass
class GadgetMap:
    kept: dict[int, int] = field(default_factory=dict)  # original edge -> G' edge
    splits: dict[int, SplitEdge] = field(default_factory=dict)
    triangles: list[TriangleGadget] = field(default_factory=list)
    squares: list[SquareGadget] = field(default_factory=list)
    doubles: list[DoubleTriangleGadget] = field(default_factory=list)

    @cached_property
    def kept_back(self) -> dict[int, int]:
        return {k: e for e, k in self.kept.items()}

    @property
    def gadget_count(self) -> int:
        return len(self.triangles) + len(self.squares)


@dataclass
class AuxiliaryInstance:
    """G' with weights w', capacity boxes and the gadget map.

    Vertex ids below ``n_original`` are the original vertices; removed ones
    (the inner pair of each double triangle) stay as isolated ids with
    capacity ``[0, 0]`` and are flagged in ``removed``.
    """

    graph: WeightedGraph
    variant: Variant
    classification: Classification
    instance: CapacitatedInstance
    removed: np.ndarray
    gadget_map: GadgetMap

    @property
    def n_original(self) -> int:
        return self.graph.n

    @property
    def active_vertices(self) -> int:
        return int(self.instance.n - self.removed.sum())


class AuxBuilder:
    """Mutable G' under construction."""

    def __init__(self, g: WeightedGraph):
        self.g = g
        self.n = g.n
        self.edges: list[tuple[int, int]] = []
        self.weights: list[int] = []
        self.lower = [0] * g.n
        self.upper = [2] * g.n
        self.removed = [False] * g.n
        self.taken: set[int] = set()
        self.gmap = GadgetMap()

    def vertex(self, lo: int = 1, hi: int = 1) -> int:
        self.lower.append(lo)
        self.upper.append(hi)
        self.removed.append(False)
        self.n += 1
        return self.n - 1

    def edge(self, u: int, v: int, w: int) -> int:
        self.edges.append((u, v))
        self.weights.append(int(w))
        return len(self.edges) - 1

    def claim(self, vertices) -> None:
        overlap = self.taken.intersection(vertices)
        if overlap:
            raise OverlappingGadget(vertices, overlap)
        self.taken.update(vertices)

    def split(self, e: int, p: int, q: int, rp: int, rq: int) -> SplitEdge:
        vp = self.vertex()
        vq = self.vertex()
        hp = self.edge(p, vp, rp)
        hq = self.edge(vq, q, rq)
        el = self.edge(vp, vq, 0)
        s = SplitEdge(e, p, q, vp, vq, hp, hq, el)
        self.gmap.splits[e] = s
        return s


def _split_cycle(c: ShortCycle, potentials: dict[int, int], b: AuxBuilder) -> dict[int, SplitEdge]:
    splits = {}
    for (p, q), e in zip(c.cycle_pairs(), c.native_edges):
        if potentials[p] + potentials[q] != b.g.scaled[e]:
            raise ValueError(f"potentials do not sum to w({p}, {q})")
        splits[e] = b.split(e, p, q, potentials[p], potentials[q])
    return splits


def build_triangle_gadget(t: ShortCycle, potentials: dict[int, int], b: AuxBuilder) -> TriangleGadget:
    b.claim(t.vertices)
    splits = _split_cycle(t, potentials, b)
    glob = {d: b.vertex() for d in t.vertices}
    u_t = b.vertex()
    glob_edges, hub_edges = {}, {}
    for d in t.vertices:
        hub_edges[d] = b.edge(glob[d], u_t, 0)
        for s in splits.values():
            if d in (s.p, s.q):
                glob_edges[(s.sub_at(d), glob[d])] = b.edge(s.sub_at(d), glob[d], 0)
    gadget = TriangleGadget(t, dict(potentials), splits, glob, u_t, glob_edges, hub_edges)
    b.gmap.triangles.append(gadget)
    return gadget


def build_square_gadget(s: ShortCycle, potentials: dict[int, int], b: AuxBuilder) -> SquareGadget:
    b.claim(s.vertices)
    splits = _split_cycle(s, potentials, b)
    u1 = b.vertex()
    u2 = b.vertex()
    va, vb, vc, vd = s.vertices
    glob = {va: u1, vc: u1, vb: u2, vd: u2}
    glob_edges = {}
    for d in s.vertices:
        for sp in splits.values():
            if d in (sp.p, sp.q):
                glob_edges[(sp.sub_at(d), glob[d])] = b.edge(sp.sub_at(d), glob[d], 0)
    gadget = SquareGadget(s, dict(potentials), splits, glob, u1, u2, glob_edges)
    b.gmap.squares.append(gadget)
    return gadget


def build_double_triangle_gadget(
    T: DoubleTriangle, profile: DoubleTriangleProfile, b: AuxBuilder
) -> DoubleTriangleGadget:
    b.claim(T.vertices)
    g = b.g
    for v in (T.c, T.d):
        b.removed[v] = True
        b.lower[v] = 0
        b.upper[v] = 0
    b.upper[T.a] = 1
    b.upper[T.b] = 1
    u_t = b.vertex(0, 1)
    v1 = b.vertex()
    v2 = b.vertex()
    e_v = b.edge(v1, v2, profile.m11)
    e_a = b.edge(u_t, T.a, profile.m21 - profile.m11)
    e_b = b.edge(u_t, T.b, profile.m12 - profile.m11)
    removed_edges = tuple(sorted(g.edge_id(u, v) for _, u, v in T.role_edges()))
    gadget = DoubleTriangleGadget(T, profile, u_t, v1, v2, e_v, e_a, e_b, removed_edges)
    b.gmap.doubles.append(gadget)
    return gadget


def build_auxiliary(
    g: WeightedGraph,
    variant: Variant | str,
    classification: Classification,
    potentials: dict[ShortCycle, dict[int, int]] | None = None,
    profiles: dict[DoubleTriangle, DoubleTriangleProfile] | None = None,
) -> AuxiliaryInstance:
    """Install a gadget for every problematic unit of ``classification``.

    Potentials and profiles are computed when not supplied.  Gadgets go in
    the order triangles, squares, double triangles, each by lowest vertex.
    """
    variant = Variant.parse(variant)
    check_classification(classification)
    potentials = dict(potentials or {})
    profiles = dict(profiles or {})
    tris = sorted(classification.problematic(TRIANGLE), key=lambda c: min(c.vertices))
    sqs = sorted(classification.problematic(SQUARE), key=lambda c: min(c.vertices))
    dts = sorted(classification.double_triangles, key=lambda T: min(T.vertices))
    if not variant.forbids_triangles and tris or not variant.forbids_squares and sqs:
        raise ValueError("classification does not match the variant")
    if dts and variant is not Variant.C4_FREE:
        raise ValueError("double triangles only arise in the c4-free variant")

    gadget_edges = set()
    for c in tris + sqs:
        gadget_edges.update(c.native_edges)
    for T in dts:
        gadget_edges.update(g.edge_id(u, v) for _, u, v in T.role_edges())

    b = AuxBuilder(g)
    for e in range(g.m):
        if e not in gadget_edges:
            u, v = g.edges[e]
            b.gmap.kept[e] = b.edge(u, v, g.scaled[e])
    for t in tris:
        build_triangle_gadget(t, potentials.get(t) or cycle_potentials(g, t), b)
    for s in sqs:
        build_square_gadget(s, potentials.get(s) or cycle_potentials(g, s), b)
    for T in dts:
        build_double_triangle_gadget(T, profiles.get(T) or double_triangle_profile(T, g), b)

    inst = CapacitatedInstance(b.n, b.edges, b.weights, b.lower, b.upper)
    aux = AuxiliaryInstance(g, variant, classification, inst, np.array(b.removed, dtype=bool), b.gmap)
    check_size_bound(aux)
    return aux


def check_size_bound(aux: AuxiliaryInstance) -> None:
    gm = aux.gadget_map
    bound = aux.graph.n + 10 * gm.gadget_count + len(gm.doubles)
    if aux.active_vertices > bound:
        raise AssertionError(f"|V'| = {aux.active_vertices} exceeds {bound}")


def check_capacities(aux: AuxiliaryInstance) -> None:
    """Assert the capacity boxes of every original and gadget vertex."""
    inst, gm = aux.instance, aux.gadget_map
    special: dict[int, tuple[int, int]] = {}
    for D in gm.doubles:
        T = D.unit
        special.update({T.a: (0, 1), T.b: (0, 1), T.c: (0, 0), T.d: (0, 0), D.u_t: (0, 1)})
    for v in range(inst.n):
        want = special.get(v, (0, 2) if v < aux.n_original else (1, 1))
        got = (inst.lower[v], inst.upper[v])
        if got != want:
            raise AssertionError(f"vertex {v} has capacity {got}, expected {want}")


def erase_gadgets(aux: AuxiliaryInstance) -> WeightedGraph:
    """Rebuild the original graph from G' and the gadget map."""
    inst, gm, g = aux.instance, aux.gadget_map, aux.graph
    rebuilt: dict[int, tuple[int, int, int]] = {}
    for e, k in gm.kept.items():
        u, v = inst.edges[k]
        rebuilt[e] = (u, v, inst.weights[k])
    for e, s in gm.splits.items():
        rebuilt[e] = (s.p, s.q, inst.weights[s.half_p] + inst.weights[s.half_q])
    for D in gm.doubles:
        # the unit's edge weights live only in the stored original ids
        for e in D.removed_edges:
            u, v = g.edges[e]
            rebuilt[e] = (u, v, g.scaled[e])
    if sorted(rebuilt) != list(range(g.m)):
        raise AssertionError("gadget map does not cover every original edge")
    return WeightedGraph(
        g.n,
        [(rebuilt[e][0], rebuilt[e][1], Fraction(rebuilt[e][2], g.scale)) for e in range(g.m)],
        scale=g.scale,
        decimals=g.decimals,
    )


def dump_auxiliary(aux: AuxiliaryInstance) -> str:
    """G' in the graph file format plus ``b <v> <l> <u>`` capacity lines."""
    inst = aux.instance
    lines = [
        f"c auxiliary instance, variant {aux.variant.value}, {aux.n_original} original vertices",
        f"p 2match {inst.n} {inst.m}",
    ]
    for (u, v), w in zip(inst.edges, inst.weights):
        lines.append(f"e {u + 1} {v + 1} {format_weight(Fraction(w, aux.graph.scale))}")
    for v in range(inst.n):
        if aux.removed[v]:
            lines.append(f"c removed {v + 1}")
        lines.append(f"b {v + 1} {inst.lower[v]} {inst.upper[v]}")
    return "\n".join(lines) + "\n"
