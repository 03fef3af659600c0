"""Exhaustive reference solver for restricted 2-matchings on small graphs."""

from __future__ import annotations

from typing import Iterator

from .graph import EdgeSet, Variant, WeightedGraph
from .lu_solver import BRUTE_FORCE_EDGE_LIMIT, InstanceTooLarge

__all__ = ["brute_force_solve", "iter_restricted_2matchings", "InstanceTooLarge"]


class _Search:
    """Degree counters and chosen-neighbour sets with closure tests."""

    def __init__(self, g: WeightedGraph, variant: Variant):
        self.g = g
        self.tri = variant.forbids_triangles
        self.sq = variant.forbids_squares
        self.nbr: list[set[int]] = [set() for _ in range(g.n)]

    def closes_cycle(self, u: int, v: int) -> bool:
        nu, nv = self.nbr[u], self.nbr[v]
        if self.tri and nu & nv:
            return True
        if self.sq:
            for x in nu:
                if self.nbr[x] & nv:
                    return True
        return False

    def can_add(self, u: int, v: int) -> bool:
        return len(self.nbr[u]) < 2 and len(self.nbr[v]) < 2 and not self.closes_cycle(u, v)

    def push(self, u, v):
        self.nbr[u].add(v)
        self.nbr[v].add(u)

    def pop(self, u, v):
        self.nbr[u].discard(v)
        self.nbr[v].discard(u)


def brute_force_solve(g: WeightedGraph, variant: Variant | str) -> EdgeSet:
    """Exact maximum-weight restricted 2-matching by backtracking (|E| <= 24)."""
    variant = Variant.parse(variant)
    if g.m > BRUTE_FORCE_EDGE_LIMIT:
        raise InstanceTooLarge(f"{g.m} edges exceed the limit of {BRUTE_FORCE_EDGE_LIMIT}")
    order = sorted(range(g.m), key=lambda e: (-g.scaled[e], e))
    w = [g.scaled[e] for e in order]
    suffix = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + max(0, w[i])
    st = _Search(g, variant)
    chosen: list[int] = []
    best = [-1, []]

    def rec(i, cur):
        if cur + suffix[i] <= best[0]:
            return
        if i == len(order):
            best[0], best[1] = cur, list(chosen)
            return
        e = order[i]
        u, v = g.edges[e]
        if st.can_add(u, v):
            st.push(u, v)
            chosen.append(e)
            rec(i + 1, cur + w[i])
            chosen.pop()
            st.pop(u, v)
        rec(i + 1, cur)

    rec(0, 0)
    return EdgeSet(g, best[1])


def iter_restricted_2matchings(g: WeightedGraph, variant: Variant | str) -> Iterator[frozenset[int]]:
    """Every restricted 2-matching of ``g`` as a frozenset of edge ids."""
    variant = Variant.parse(variant)
    if g.m > BRUTE_FORCE_EDGE_LIMIT:
        raise InstanceTooLarge(f"{g.m} edges exceed the limit of {BRUTE_FORCE_EDGE_LIMIT}")
    st = _Search(g, variant)
    chosen: list[int] = []

    def rec(i):
        if i == g.m:
            yield frozenset(chosen)
            return
        u, v = g.edges[i]
        if st.can_add(u, v):
            st.push(u, v)
            chosen.append(i)
            yield from rec(i + 1)
            chosen.pop()
            st.pop(u, v)
        yield from rec(i + 1)

    yield from rec(0)
