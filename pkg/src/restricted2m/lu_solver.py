"""Exact maximum-weight (l,u)-matchings with capacities in {0, 1, 2}.

An (l,u)-matching is an edge set whose degree at every vertex ``v`` lies in
``[lower[v], upper[v]]``.  The solver reduces the problem to one
maximum-weight matching computed by the blossom kernel:

* every vertex ``v`` is expanded into ``upper[v]`` copies, the first
  ``lower[v]`` of which are *mandatory*; covering a mandatory copy earns a
  bonus ``W`` larger than any possible difference of base weights, so an
  optimum covers as many mandatory copies as possible and the instance is
  feasible exactly when all of them are covered;
* an edge whose endpoints both have capacity 2 becomes a three-edge path
  ``copies(x) - e_x - e_y - copies(y)`` so it can be used at most once;
  every other edge joins the endpoint copies directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from ._blossom import max_weight_matching
from .graph import EdgeSet

__all__ = [
    "CapacitatedInstance",
    "Infeasible",
    "InstanceTooLarge",
    "max_weight_lu_matching",
    "brute_force_lu",
    "check_feasibility",
    "iter_lu_matchings",
    "lu_weight",
    "is_lu_matching",
    "BRUTE_FORCE_EDGE_LIMIT",
]

BRUTE_FORCE_EDGE_LIMIT = 24
_INT_LIMIT = 2**60


class Infeasible(Exception):
    """No edge set meets every capacity interval."""


class InstanceTooLarge(ValueError):
    """Instance exceeds the exhaustive-search edge limit."""


@dataclass
class CapacitatedInstance:
    """Simple graph with integer edge weights of any sign and [l, u] boxes."""

    n: int
    edges: Sequence[tuple[int, int]]
    weights: Sequence[int]
    lower: Sequence[int]
    upper: Sequence[int]
    _incident: list[list[int]] = field(init=False, repr=False)

    def __post_init__(self):
        self.edges = [(int(u), int(v)) if u <= v else (int(v), int(u)) for u, v in self.edges]
        self.weights = [int(w) for w in self.weights]
        self.lower = [int(x) for x in self.lower]
        self.upper = [int(x) for x in self.upper]
        if len(self.weights) != len(self.edges):
            raise ValueError("one weight per edge required")
        if len(self.lower) != self.n or len(self.upper) != self.n:
            raise ValueError("one capacity interval per vertex required")
        for v in range(self.n):
            if not 0 <= self.lower[v] <= self.upper[v] <= 2:
                raise ValueError(f"vertex {v}: need 0 <= l <= u <= 2")
        seen = set()
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for k, (u, v) in enumerate(self.edges):
            if u == v or not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {k} = ({u}, {v}) is invalid")
            if (u, v) in seen:
                raise ValueError(f"edge {k} = ({u}, {v}) is a parallel edge")
            seen.add((u, v))
            inc[u].append(k)
            inc[v].append(k)
        self._incident = inc

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, v: int) -> list[int]:
        return self._incident[v]


def lu_weight(inst: CapacitatedInstance, s) -> int:
    return sum(inst.weights[k] for k in s)


def is_lu_matching(inst: CapacitatedInstance, s) -> bool:
    deg = [0] * inst.n
    edges = inst.edges
    for k in s:
        u, v = edges[k]
        deg[u] += 1
        deg[v] += 1
    lower, upper = inst.lower, inst.upper
    return all(lo <= d <= hi for lo, d, hi in zip(lower, deg, upper))


def _solve_bonus(inst: CapacitatedInstance, weights: Sequence[int]) -> tuple[list[int], bool]:
    """Run the big-M matching; return chosen edge ids and whether lower bounds hold."""
    n, lower, upper = inst.n, inst.lower, inst.upper
    big_w = 1 + 2 * sum(abs(w) for w in weights)
    k_mid = 1 + max(0, max(weights, default=0)) + 2 * big_w
    if 4 * k_mid >= _INT_LIMIT:
        raise OverflowError("edge weights too large for exact int64 matching")

    copy_start = [0] * (n + 1)
    for v in range(n):
        copy_start[v + 1] = copy_start[v] + upper[v]
    nv = copy_start[n]

    ei: list[int] = []
    ej: list[int] = []
    wt: list[int] = []
    direct: dict[int, int] = {}  # matching-graph edge -> instance edge
    gadget: list[tuple[int, int, int]] = []  # (instance edge, e_x, e_y)

    def mand(v, i):
        return 1 if i < lower[v] else 0

    for k, (x, y) in enumerate(inst.edges):
        w = weights[k]
        if upper[x] == 0 or upper[y] == 0:
            continue
        if w < 0 and lower[x] == 0 and lower[y] == 0:
            continue  # can never improve an optimum
        if upper[x] == 2 and upper[y] == 2:
            ex, ey = nv, nv + 1
            nv += 2
            gadget.append((k, ex, ey))
            for end, v in ((ex, x), (ey, y)):
                for i in range(upper[v]):
                    ei.append(copy_start[v] + i)
                    ej.append(end)
                    wt.append(k_mid + w + 2 * big_w * mand(v, i))
            ei.append(ex)
            ej.append(ey)
            wt.append(2 * k_mid)
        else:
            for i in range(upper[x]):
                for j in range(upper[y]):
                    gain = 2 * (w + big_w * (mand(x, i) + mand(y, j)))
                    if gain <= 0:
                        continue
                    direct[len(ei)] = k
                    ei.append(copy_start[x] + i)
                    ej.append(copy_start[y] + j)
                    wt.append(gain)

    mate = max_weight_matching(
        nv,
        np.asarray(ei, dtype=np.int64),
        np.asarray(ej, dtype=np.int64),
        np.asarray(wt, dtype=np.int64),
    )
    chosen = []
    for idx, k in direct.items():
        if mate[ei[idx]] == ej[idx]:
            chosen.append(k)
    owner = np.repeat(np.arange(n), upper) if n else np.zeros(0, dtype=np.int64)
    for k, ex, ey in gadget:
        x, y = inst.edges[k]
        px, py = mate[ex], mate[ey]
        if px == ey:
            continue
        if 0 <= px < copy_start[n] and 0 <= py < copy_start[n] and owner[px] == x and owner[py] == y:
            chosen.append(k)
        elif px != -1 or py != -1:
            raise AssertionError(f"edge gadget {k} left half-selected")
    chosen.sort()
    deg = [0] * n
    for k in chosen:
        x, y = inst.edges[k]
        deg[x] += 1
        deg[y] += 1
    if any(deg[v] > upper[v] for v in range(n)):
        raise AssertionError("matching reduction exceeded an upper bound")
    feasible = all(deg[v] >= lower[v] for v in range(n))
    return chosen, feasible


def max_weight_lu_matching(inst: CapacitatedInstance) -> EdgeSet:
    """Maximum-weight (l,u)-matching of ``inst``; raises :class:`Infeasible`."""
    chosen, feasible = _solve_bonus(inst, inst.weights)
    if not feasible:
        raise Infeasible("some lower capacity bound cannot be met")
    return EdgeSet(inst, chosen)


def check_feasibility(inst: CapacitatedInstance) -> bool:
    """True iff some edge set meets every capacity interval."""
    return _solve_bonus(inst, [0] * inst.m)[1]


def _search_order(inst: CapacitatedInstance) -> list[int]:
    return sorted(range(inst.m), key=lambda k: (-inst.weights[k], k))


def _bfs_order(inst: CapacitatedInstance) -> list[int]:
    seen = [False] * inst.n
    order = []
    for s in range(inst.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        for v in queue:
            order.append(v)
            for k in inst.incident(v):
                x, y = inst.edges[k]
                w = y if x == v else x
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def iter_lu_matchings(inst: CapacitatedInstance) -> Iterator[frozenset[int]]:
    """Every (l,u)-matching of ``inst`` as a set of edge ids (no size limit).

    Vertices are settled one at a time in BFS order: settling ``v`` decides
    all its edges to unsettled vertices at once, so every branch meets the
    box of ``v`` exactly and dead ends only arise at later neighbours.
    """
    order = _bfs_order(inst)
    rank = {v: i for i, v in enumerate(order)}
    forward: list[list[tuple[int, int]]] = []
    for v in order:
        fw = []
        for k in inst.incident(v):
            x, y = inst.edges[k]
            w = y if x == v else x
            if rank[w] > rank[v]:
                fw.append((k, w))
        forward.append(fw)
    options = []
    for fw in forward:
        subsets = []
        for mask in range(1 << len(fw)):
            subsets.append([fw[i] for i in range(len(fw)) if mask >> i & 1])
        options.append(subsets)
    undecided = [len(inst.incident(v)) for v in range(inst.n)]
    deg = [0] * inst.n
    chosen: list[int] = []
    lower, upper = inst.lower, inst.upper

    applied: list[list[tuple[int, int]]] = [[] for _ in order]

    def enter(i, sign):
        for _, w in forward[i]:
            undecided[w] -= sign
        undecided[order[i]] -= sign * len(forward[i])

    def undo(i):
        sub = applied[i]
        deg[order[i]] -= len(sub)
        for _, w in sub:
            deg[w] -= 1
            chosen.pop()

    # explicit stack: nested generators would cost one frame hop per level
    depth = len(order)
    pos = [0] * (depth + 1)
    i = 0
    if depth:
        enter(0, 1)
    while i >= 0:
        if i == depth:
            yield frozenset(chosen)
            i -= 1
            if i >= 0:
                undo(i)
            continue
        v = order[i]
        fw = forward[i]
        opts = options[i]
        advanced = False
        while pos[i] < len(opts):
            sub = opts[pos[i]]
            pos[i] += 1
            d = deg[v] + len(sub)
            if d < lower[v] or d > upper[v]:
                continue
            if any(deg[w] >= upper[w] for _, w in sub):
                continue
            for k, w in sub:
                deg[w] += 1
                chosen.append(k)
            deg[v] = d
            applied[i] = sub
            if all(deg[w] + undecided[w] >= lower[w] for _, w in fw):
                advanced = True
                break
            undo(i)
        if advanced:
            i += 1
            if i < depth:
                pos[i] = 0
                enter(i, 1)
        else:
            enter(i, -1)
            i -= 1
            if i >= 0:
                undo(i)


def brute_force_lu(inst: CapacitatedInstance) -> EdgeSet:
    """Exhaustive optimum with degree and weight-bound pruning (|E| <= 24)."""
    if inst.m > BRUTE_FORCE_EDGE_LIMIT:
        raise InstanceTooLarge(f"{inst.m} edges exceed the limit of {BRUTE_FORCE_EDGE_LIMIT}")
    order = _search_order(inst)
    w = [inst.weights[k] for k in order]
    pos_suffix = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        pos_suffix[i] = pos_suffix[i + 1] + max(0, w[i])
    remaining = [len(inst.incident(v)) for v in range(inst.n)]
    deg = [0] * inst.n
    lower, upper = inst.lower, inst.upper
    chosen: list[int] = []
    best: list = [None, None]

    def rec(i, cur):
        if best[0] is not None and cur + pos_suffix[i] <= best[0]:
            return
        if i == len(order):
            if all(deg[v] >= lower[v] for v in range(inst.n)):
                best[0], best[1] = cur, list(chosen)
            return
        k = order[i]
        x, y = inst.edges[k]
        remaining[x] -= 1
        remaining[y] -= 1
        if deg[x] < upper[x] and deg[y] < upper[y]:
            deg[x] += 1
            deg[y] += 1
            chosen.append(k)
            rec(i + 1, cur + w[i])
            chosen.pop()
            deg[x] -= 1
            deg[y] -= 1
        if deg[x] + remaining[x] >= lower[x] and deg[y] + remaining[y] >= lower[y]:
            rec(i + 1, cur)
        remaining[x] += 1
        remaining[y] += 1

    if all(remaining[v] >= lower[v] for v in range(inst.n)):
        rec(0, 0)
    if best[1] is None:
        raise Infeasible("no edge set meets every capacity interval")
    return EdgeSet(inst, best[1])
