"""Seeded generators of connected subcubic test instances."""

from __future__ import annotations

import numpy as np

from .graph import WeightedGraph

__all__ = ["MODES", "generate", "k4_graph"]

MODES = ("subcubic", "vertex-induced", "planted-triangles", "planted-squares", "planted-double-triangles")

# modes whose weights come from per-vertex potentials, so every square is vertex-induced
_POTENTIAL_MODES = {"vertex-induced", "planted-squares", "planted-double-triangles"}
_UNIT = {"planted-triangles": 3, "planted-squares": 4, "planted-double-triangles": 4}


def _unit_edges(mode: str, vs: list[int]) -> list[tuple[int, int]]:
    if mode == "planted-triangles":
        a, b, c = vs
        return [(a, b), (b, c), (c, a)]
    if mode == "planted-squares":
        a, b, c, d = vs
        return [(a, b), (b, c), (c, d), (d, a)]
    a, b, c, d = vs  # K4 minus (a, b)
    return [(a, c), (a, d), (b, c), (b, d), (c, d)]


class _Builder:
    def __init__(self, n: int):
        self.n = n
        self.deg = [0] * n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.edges: list[tuple[int, int]] = []

    def ok(self, u, v) -> bool:
        return u != v and v not in self.adj[u] and self.deg[u] < 3 and self.deg[v] < 3

    def add(self, u, v) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.deg[u] += 1
        self.deg[v] += 1
        self.edges.append((u, v))


def generate(n: int, seed: int, mode: str = "subcubic", *, k4: int = 0, extra: float = 0.5) -> WeightedGraph:
    """Connected subcubic graph on ``n`` vertices plus ``k4`` K4 components.

    A random spanning path over the planted units and loose vertices gives
    connectivity; then about ``extra * n`` further edges are tried, half of
    them closing short cycles, subject to degree <= 3.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; choose from {', '.join(MODES)}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if k4 < 0:
        raise ValueError("k4 must be nonnegative")
    rng = np.random.default_rng(seed)
    perm = [int(x) for x in rng.permutation(n)]
    b = _Builder(n)

    groups: list[list[int]] = []
    pos = 0
    size = _UNIT.get(mode)
    if size is not None:
        units = max(1, n // (2 * size)) if n >= size else 0
        for _ in range(units):
            vs = perm[pos : pos + size]
            pos += size
            for u, v in _unit_edges(mode, vs):
                b.add(u, v)
            groups.append(vs)
    groups += [[v] for v in perm[pos:]]
    order = [int(i) for i in rng.permutation(len(groups))]
    for i in range(len(order) - 1):
        g1, g2 = groups[order[i]], groups[order[i + 1]]
        out = [v for v in g1 if b.deg[v] < 3]
        inn = [v for v in g2 if b.deg[v] < 3]
        # leave a free slot in g2 for its own outgoing link
        if len(g2) > 1 and len(inn) == 2 and i + 2 < len(order):
            inn = inn[:1] if rng.random() < 0.5 else inn[1:]
        u = out[int(rng.integers(len(out)))]
        v = inn[int(rng.integers(len(inn)))]
        b.add(u, v)

    for _ in range(int(extra * n)):
        u = int(rng.integers(n))
        if b.deg[u] >= 3:
            continue
        if rng.random() < 0.5:
            near = set()
            for x in b.adj[u]:
                near |= b.adj[x]
                for y in b.adj[x]:
                    near |= b.adj[y]
            cand = sorted(v for v in near if b.ok(u, v))
        else:
            cand = [v for v in range(n) if b.ok(u, v)]
        if cand:
            b.add(u, cand[int(rng.integers(len(cand)))])

    total = n + 4 * k4
    edges = list(b.edges)
    for i in range(k4):
        base = n + 4 * i
        edges += [(base + x, base + y) for x in range(4) for y in range(x + 1, 4)]
    if mode in _POTENTIAL_MODES:
        r = rng.integers(0, 11, size=total)
        weighted = [(u, v, int(r[u] + r[v])) for u, v in edges]
    else:
        w = rng.integers(0, 21, size=len(edges))
        weighted = [(u, v, int(x)) for (u, v), x in zip(edges, w)]
    return WeightedGraph(total, weighted, decimals=0)


def k4_graph(weight=1) -> WeightedGraph:
    return WeightedGraph(4, [(x, y, weight) for x in range(4) for y in range(x + 1, 4)], decimals=0)
