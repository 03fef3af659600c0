"""Weighted simple graphs, edge subsets and restricted 2-matching checks."""

from __future__ import annotations

import enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Variant",
    "WeightedGraph",
    "EdgeSet",
    "GraphError",
    "LoopEdge",
    "ParallelEdge",
    "DegreeExceeded",
    "NegativeWeight",
    "validate_input",
    "forbidden_cycles",
    "is_restricted_2matching",
    "set_weight",
]


class Variant(enum.Enum):
    """Which short cycles a restricted 2-matching may not contain."""

    TRIANGLE_FREE = "triangle-free"
    SQUARE_FREE = "square-free"
    C4_FREE = "c4-free"

    @property
    def forbids_triangles(self) -> bool:
        return self is not Variant.SQUARE_FREE

    @property
    def forbids_squares(self) -> bool:
        return self is not Variant.TRIANGLE_FREE

    @classmethod
    def parse(cls, text: str | Variant) -> Variant:
        if isinstance(text, Variant):
            return text
        key = text.strip().lower().replace("_", "-")
        aliases = {"c3-free": "triangle-free", "c4free": "c4-free"}
        return cls(aliases.get(key, key))


class GraphError(ValueError):
    """Input graph violates one of the model rules."""

    rule = "graph"


class LoopEdge(GraphError):
    rule = "simple"

    def __init__(self, edge: int, vertex: int):
        super().__init__(f"simple: edge {edge} is a loop at vertex {vertex}")
        self.edge = edge
        self.vertex = vertex


class ParallelEdge(GraphError):
    rule = "simple"

    def __init__(self, edge: int, u: int, v: int):
        super().__init__(f"simple: edge {edge} duplicates ({u}, {v})")
        self.edge = edge
        self.pair = (u, v)


class DegreeExceeded(GraphError):
    rule = "subcubic"

    def __init__(self, vertex: int, degree: int):
        super().__init__(f"subcubic: vertex {vertex} has degree {degree} > 3")
        self.vertex = vertex
        self.degree = degree


class NegativeWeight(GraphError):
    rule = "nonnegative"

    def __init__(self, edge: int, weight: Fraction):
        super().__init__(f"nonnegative: edge {edge} has weight {weight}")
        self.edge = edge
        self.weight = weight


def _as_fraction(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, float):
        # floats go through their shortest repr, not their binary expansion
        return Fraction(repr(w))
    return Fraction(w)


class WeightedGraph:
    """Undirected graph on vertices ``0..n-1`` with exact rational weights.

    Weights are kept as :class:`~fractions.Fraction` and, for all internal
    arithmetic, as integers ``scaled[e] = weight[e] * scale``.  ``scale`` is
    twice the common denominator of the weights, so every triangle or
    square potential is an integer in scaled units.

    Construction does not reject loops, parallel edges, high degrees or
    negative weights; call :func:`validate_input` for that.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int, object]],
        *,
        scale: int | None = None,
        decimals: int | None = None,
    ):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        pairs: list[tuple[int, int]] = []
        weights: list[Fraction] = []
        for u, v, w in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            pairs.append((u, v) if u <= v else (v, u))
            weights.append(_as_fraction(w))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(pairs)
        self.weights: tuple[Fraction, ...] = tuple(weights)
        if scale is None:
            scale = 2 * lcm(1, *(w.denominator for w in weights))
        self.scale = scale
        scaled = []
        for w in weights:
            s = w * scale
            if s.denominator != 1:
                raise ValueError(f"weight {w} is not a multiple of 1/{scale}")
            scaled.append(int(s))
        self.scaled: tuple[int, ...] = tuple(scaled)
        self.decimals = decimals
        adj: list[list[int]] = [[] for _ in range(n)]
        index: dict[tuple[int, int], int] = {}
        for e, (u, v) in enumerate(pairs):
            adj[u].append(e)
            if v != u:
                adj[v].append(e)
            index.setdefault((u, v), e)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in adj)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> list[int]:
        return [self.other(e, v) for e in self.adjacency[v]]

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def edge_id(self, u: int, v: int) -> int:
        """Edge id of ``(u, v)``; raises ``KeyError`` if absent."""
        return self._index[(u, v) if u <= v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u <= v else (v, u)) in self._index

    def weight_of(self, u: int, v: int) -> int:
        """Scaled integer weight of edge ``(u, v)``."""
        return self.scaled[self.edge_id(u, v)]

    def unscale(self, value: int) -> Fraction:
        return Fraction(value, self.scale)

    def induced(self, vertices: Sequence[int]) -> tuple[WeightedGraph, list[int], list[int]]:
        """Subgraph induced on ``vertices``, keeping this graph's scale.

        Returns the subgraph, the old vertex id of every new vertex and the
        old edge id of every new edge.
        """
        new_id = {v: i for i, v in enumerate(vertices)}
        keep = [e for e, (u, v) in enumerate(self.edges) if u in new_id and v in new_id]
        sub = WeightedGraph(
            len(vertices),
            [(new_id[self.edges[e][0]], new_id[self.edges[e][1]], self.weights[e]) for e in keep],
            scale=self.scale,
            decimals=self.decimals,
        )
        return sub, list(vertices), keep

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by first vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.neighbors(v):
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, m={self.m})"


class EdgeSet:
    """Subset of a graph's edges with per-vertex degree counters.

    Works over any graph object exposing ``n`` and ``edges``.
    """

    __slots__ = ("graph", "member", "degree")

    def __init__(self, graph, ids: Iterable[int] = ()):
        self.graph = graph
        self.member = np.zeros(len(graph.edges), dtype=bool)
        self.degree = np.zeros(graph.n, dtype=np.int64)
        for e in ids:
            self.add(e)

    def add(self, e: int) -> None:
        if self.member[e]:
            raise ValueError(f"edge {e} already in set")
        self.member[e] = True
        u, v = self.graph.edges[e]
        self.degree[u] += 1
        self.degree[v] += 1

    def discard(self, e: int) -> None:
        if self.member[e]:
            self.member[e] = False
            u, v = self.graph.edges[e]
            self.degree[u] -= 1
            self.degree[v] -= 1

    def __contains__(self, e: int) -> bool:
        return bool(self.member[e])

    def __iter__(self) -> Iterator[int]:
        return iter(np.flatnonzero(self.member).tolist())

    def __len__(self) -> int:
        return int(self.member.sum())

    def ids(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.member).tolist())

    def copy(self) -> EdgeSet:
        out = EdgeSet.__new__(EdgeSet)
        out.graph = self.graph
        out.member = self.member.copy()
        out.degree = self.degree.copy()
        return out

    def max_degree(self) -> int:
        return int(self.degree.max()) if len(self.degree) else 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EdgeSet)
            and other.graph is self.graph
            and bool(np.array_equal(other.member, self.member))
        )

    def __repr__(self) -> str:
        return f"EdgeSet({sorted(self)})"


def validate_input(g: WeightedGraph) -> None:
    """Raise a :class:`GraphError` unless ``g`` is simple, subcubic and nonnegative."""
    seen: set[tuple[int, int]] = set()
    for e, (u, v) in enumerate(g.edges):
        if u == v:
            raise LoopEdge(e, u)
        if (u, v) in seen:
            raise ParallelEdge(e, u, v)
        seen.add((u, v))
    for v in range(g.n):
        if g.degree(v) > 3:
            raise DegreeExceeded(v, g.degree(v))
    for e, w in enumerate(g.weights):
        if w < 0:
            raise NegativeWeight(e, w)


def _members(g, s) -> EdgeSet:
    return s if isinstance(s, EdgeSet) else EdgeSet(g, s)


def forbidden_cycles(g: WeightedGraph, s, variant: Variant | str) -> list[tuple[int, ...]]:
    """Triangles and/or squares of ``g`` whose edges all lie in ``s``.

    Cycles are vertex tuples in canonical form: triangles sorted, squares
    starting at their smallest vertex with the smaller neighbour second.
    """
    variant = Variant.parse(variant)
    s = _members(g, s)
    chosen = [[] for _ in range(g.n)]
    for e in s:
        a, b = g.edges[e]
        chosen[a].append(b)
        chosen[b].append(a)
    found: list[tuple[int, ...]] = []
    for a in range(g.n):
        nbrs = chosen[a]
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                b, d = sorted((nbrs[i], nbrs[j]))
                if variant.forbids_triangles and a < b and d in chosen[b]:
                    found.append((a, b, d))
                if variant.forbids_squares and a < b:
                    for c in chosen[b]:
                        if c != a and c > a and c != d and c in chosen[d]:
                            found.append((a, b, c, d))
    found.sort(key=lambda c: (len(c), c))
    return found


def is_restricted_2matching(g: WeightedGraph, s, variant: Variant | str) -> bool:
    s = _members(g, s)
    if s.max_degree() > 2:
        return False
    return not forbidden_cycles(g, s, variant)


def set_weight(g: WeightedGraph, s) -> Fraction:
    """Exact total weight of the edges in ``s``."""
    return g.unscale(sum(g.scaled[e] for e in _members(g, s)))
