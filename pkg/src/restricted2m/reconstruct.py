"""Translate matchings between G and the auxiliary instance, and solve.

``project`` maps a restricted 2-matching of G to an (l,u)-matching of G'
of no smaller weight; ``lift_raw`` maps any (l,u)-matching of G' back to a
2-matching of G of no smaller weight that avoids every problematic cycle;
``cleanup`` removes the remaining unproblematic forbidden cycles by local
swaps.  Together with one exact (l,u)-matching solve this gives ``solve``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .cycles import (
    SQUARE,
    TRIANGLE,
    UNPROBLEMATIC,
    Classification,
    NotVertexInduced,
    ShortCycle,
    classify,
    enumerate_short_cycles,
    verify_vertex_induced,
)
from .gadgets import (
    AuxiliaryInstance,
    DoubleTriangleGadget,
    SquareGadget,
    TriangleGadget,
    build_auxiliary,
)
from .graph import (
    EdgeSet,
    Variant,
    WeightedGraph,
    forbidden_cycles,
    is_restricted_2matching,
    validate_input,
)
from .lu_solver import is_lu_matching, max_weight_lu_matching

log = logging.getLogger(__name__)

__all__ = [
    "NotRestricted",
    "MalformedMatching",
    "CleanupDiverged",
    "Swap",
    "LiftReport",
    "project",
    "lift_raw",
    "cleanup",
    "solve",
    "is_k4",
]


class NotRestricted(ValueError):
    """Input matching is not a restricted 2-matching of the variant."""


class MalformedMatching(RuntimeError):
    """An (l,u)-matching violates a gadget invariant."""


class CleanupDiverged(RuntimeError):
    """Swap passes exceeded their bound."""


@dataclass(frozen=True)
class Swap:
    rule: str  # "triangle", "one-edge", "two-edge"
    cycle: tuple[int, ...]
    removed: tuple[int, ...]
    added: tuple[int, ...]

    def apply(self, s: EdgeSet) -> None:
        for e in self.removed:
            s.discard(e)
        for e in self.added:
            s.add(e)


@dataclass
class LiftReport:
    """Per-gadget cases taken while lifting, plus the cleanup swaps."""

    triangle_cases: dict[tuple[int, ...], str] = field(default_factory=dict)
    square_cases: dict[tuple[int, ...], str] = field(default_factory=dict)
    double_cases: dict[tuple[int, ...], tuple[int, int]] = field(default_factory=dict)
    swaps: list[Swap] = field(default_factory=list)
    matching: EdgeSet | None = None

    def replay(self, start: EdgeSet) -> EdgeSet:
        out = start.copy()
        for sw in self.swaps:
            sw.apply(out)
        return out


def _lex_absent(g: WeightedGraph, native: tuple[int, ...], m: EdgeSet) -> int:
    absent = [e for e in native if e not in m]
    return min(absent, key=lambda e: g.edges[e])


def project(m, aux: AuxiliaryInstance) -> EdgeSet:
    """(l,u)-matching of G' built from restricted 2-matching ``m`` of G."""
    g, gm, inst = aux.graph, aux.gadget_map, aux.instance
    m = m if isinstance(m, EdgeSet) else EdgeSet(g, m)
    if not is_restricted_2matching(g, m, aux.variant):
        raise NotRestricted("input is not a restricted 2-matching of the variant")
    out: list[int] = [k for e, k in gm.kept.items() if e in m]

    def split_edges(gadget, skip):
        for e, s in gadget.splits.items():
            if e == skip:
                continue
            out.extend((s.half_p, s.half_q) if e in m else (s.elim,))

    for tg in gm.triangles:
        x = _lex_absent(g, tg.cycle.native_edges, m)
        s = tg.splits[x]
        out.append(tg.glob_edges[(s.vp, tg.glob[s.p])])
        out.append(tg.glob_edges[(s.vq, tg.glob[s.q])])
        r = next(v for v in tg.cycle.vertices if v not in (s.p, s.q))
        out.append(tg.hub_edges[r])
        split_edges(tg, x)
    for sg in gm.squares:
        x = _lex_absent(g, sg.cycle.native_edges, m)
        s = sg.splits[x]
        out.append(sg.glob_edges[(s.vp, sg.glob[s.p])])
        out.append(sg.glob_edges[(s.vq, sg.glob[s.q])])
        split_edges(sg, x)
    for D in gm.doubles:
        T = D.unit
        out.append(D.e_v)
        deg = {T.a: 0, T.b: 0}
        for e in D.removed_edges:
            if e in m:
                for v in g.edges[e]:
                    if v in deg:
                        deg[v] += 1
        if deg[T.a] == 2 and deg[T.b] == 2:
            raise NotRestricted(f"double triangle {T.vertices} carries a square")
        if deg[T.a] == 2:
            out.append(D.e_a)
        if deg[T.b] == 2:
            out.append(D.e_b)
    mp = EdgeSet(inst, out)
    if not is_lu_matching(inst, mp):
        raise AssertionError("projection violates a capacity interval")
    return mp


def _lift_triangle(tg: TriangleGadget, mp: set, add) -> str:
    h = {v: 0 for v in tg.cycle.vertices}
    for s in tg.splits.values():
        for v in (s.p, s.q):
            if s.half_at(v) in mp:
                h[v] += 1
    total = sum(h.values())
    by_count = sorted(h, key=lambda v: (-h[v], v))
    top = by_count[0]
    if total == 0:
        return "1"
    if total == 2 and h[top] == 1:
        add(by_count[0], by_count[1])
        return "2a"
    if total == 2 and h[top] == 2:
        for v in tg.cycle.vertices:
            if v != top:
                add(top, v)
        return "2b"
    if total == 4 and sorted(h.values()) == [1, 1, 2]:
        for v in tg.cycle.vertices:
            if v != top:
                add(top, v)
        return "3"
    raise MalformedMatching(f"triangle gadget {tg.cycle.vertices}: half-edge pattern {h}")


def _partner(gadget: SquareGadget, glob: int, mp: set) -> int:
    found = [sub for (sub, gv), k in gadget.glob_edges.items() if gv == glob and k in mp]
    if len(found) != 1:
        raise MalformedMatching(f"square gadget {gadget.cycle.vertices}: global vertex {glob} matched {len(found)} times")
    return found[0]


def _lift_square(sg: SquareGadget, mp: set, add) -> str:
    mp = set(mp)
    by_sub = {}
    for e, s in sg.splits.items():
        by_sub[s.vp] = (s, s.p, s.q)
        by_sub[s.vq] = (s, s.q, s.p)
    x1 = _partner(sg, sg.u1, mp)
    x2 = _partner(sg, sg.u2, mp)
    _, A, t1 = by_sub[x1]
    _, B, t2 = by_sub[x2]
    order = sg.cycle.rotated(A, B)
    C, D = order[2], order[3]
    split_of = {frozenset((s.p, s.q)): s for s in sg.splits.values()}
    sAB, sBC, sCD, sDA = (split_of[frozenset(p)] for p in ((A, B), (B, C), (C, D), (D, A)))

    def replumb(glob, v, old_sub, new_sub, old_split, new_split):
        # (glob, old_sub), (v, new_sub) -> (glob, new_sub), (v, old_sub); weight-neutral
        need = (sg.glob_edges[(old_sub, glob)], new_split.half_at(v))
        if not all(k in mp for k in need):
            raise MalformedMatching(f"square gadget {sg.cycle.vertices}: cannot re-plumb at {v}")
        mp.difference_update(need)
        mp.update((sg.glob_edges[(new_sub, glob)], old_split.half_at(v)))

    on_ab_a = t1 == B
    on_ab_b = t2 == A
    if on_ab_a and on_ab_b:
        case = "1"
    elif on_ab_a:
        replumb(sg.u2, B, sBC.sub_at(B), sAB.sub_at(B), sBC, sAB)
        case = "2"
    elif on_ab_b:
        replumb(sg.u1, A, sDA.sub_at(A), sAB.sub_at(A), sDA, sAB)
        case = "2"
    elif sAB.elim not in mp:
        replumb(sg.u2, B, sBC.sub_at(B), sAB.sub_at(B), sBC, sAB)
        replumb(sg.u1, A, sDA.sub_at(A), sAB.sub_at(A), sDA, sAB)
        case = "3r"
    else:
        add(A, D)
        add(B, C)
        both = sCD.half_p in mp and sCD.half_q in mp
        if both:
            add(C, D)
        elif sCD.elim not in mp:
            raise MalformedMatching(f"square gadget {sg.cycle.vertices}: edge ({C}, {D}) half-selected")
        return "3"
    for s in (sBC, sCD, sDA):
        if s.half_p in mp and s.half_q in mp:
            add(s.p, s.q)
        elif s.elim not in mp:
            raise MalformedMatching(f"square gadget {sg.cycle.vertices}: edge ({s.p}, {s.q}) half-selected")
    return case


def _lift_double(D: DoubleTriangleGadget, mp: set, add_id) -> tuple[int, int]:
    i = int(D.e_a in mp)
    j = int(D.e_b in mp)
    if i + j > 1 or D.e_v not in mp:
        raise MalformedMatching(f"double triangle gadget {D.unit.vertices}: pattern ({i}, {j})")
    for e in D.profile.witnesses[(i + 1, j + 1)]:
        add_id(e)
    return (i, j)


def lift_raw(mp, aux: AuxiliaryInstance, report: LiftReport | None = None) -> EdgeSet:
    """2-matching of G from an (l,u)-matching of G' (no weight loss)."""
    g, gm, inst = aux.graph, aux.gadget_map, aux.instance
    ids = set(mp)
    if not is_lu_matching(inst, ids):
        raise MalformedMatching("input violates a capacity interval of G'")
    out = EdgeSet(g)
    back = gm.kept_back
    for k in ids:
        if k in back:
            out.add(back[k])

    def add(u, v):
        e = g.edge_id(u, v)
        if e in out:
            raise MalformedMatching(f"edge ({u}, {v}) lifted twice")
        out.add(e)

    cases_t, cases_s, cases_d = {}, {}, {}
    for tg in gm.triangles:
        cases_t[tg.cycle.vertices] = _lift_triangle(tg, ids, add)
    for sg in gm.squares:
        cases_s[sg.cycle.vertices] = _lift_square(sg, ids, add)
    for D in gm.doubles:
        cases_d[D.unit.vertices] = _lift_double(D, ids, out.add)
    if out.max_degree() > 2:
        raise MalformedMatching("lifted edge set has a vertex of degree > 2")
    # the classification labels every short cycle the variant forbids
    member = out.member
    for c, label in aux.classification.labels.items():
        if label != UNPROBLEMATIC and all(member[e] for e in c.native_edges):
            raise MalformedMatching(f"lifted matching contains problematic cycle {c.vertices}")
    if report is not None:
        report.triangle_cases.update(cases_t)
        report.square_cases.update(cases_s)
        report.double_cases.update(cases_d)
    return out


def _swap_one_edge(g, m, c: ShortCycle, w: ShortCycle, shared: int) -> Swap:
    # c and square w share the single edge (p, q); rotate w alternately
    p, q = g.edges[shared]
    _, _, e, f = w.rotated(p, q)  # w = p - q - e - f
    removed = [shared]
    ef = g.edge_id(e, f)
    if ef in m:
        removed.append(ef)
    added = [g.edge_id(q, e), g.edge_id(p, f)]
    return Swap("one-edge", c.vertices, tuple(removed), tuple(added))


def _swap_two_edge(g, m, c: ShortCycle, w: ShortCycle, rule: str) -> Swap:
    # c = x - y - z - d (or x - y - d for triangles), w shares the path at y
    shared = set(c.native_edges) & set(w.native_edges)
    common = set(c.vertices) & set(w.vertices)
    d = next(v for v in c.vertices if v not in common)
    e = next(v for v in w.vertices if v not in common)
    # endpoints of the shared part that touch d in c
    ends = sorted(v for v in common if g.has_edge(v, d) and g.edge_id(v, d) in c.native_edges)
    best = None
    for x in ends:
        if not g.has_edge(x, e) or g.edge_id(x, e) in shared:
            continue
        gain = g.weight_of(x, e) - g.weight_of(x, d)
        if best is None or gain > best[0]:
            best = (gain, x)
    if best is None or best[0] < 0:
        raise AssertionError(f"no nondecreasing swap for {c.vertices} via {w.vertices}")
    x = best[1]
    return Swap(rule, c.vertices, (g.edge_id(x, d),), (g.edge_id(x, e),))


def cleanup(
    m: EdgeSet,
    variant: Variant | str,
    classification: Classification,
    graph: WeightedGraph | None = None,
    report: LiftReport | None = None,
) -> EdgeSet:
    """Remove every forbidden cycle of ``m`` by weight-nondecreasing swaps."""
    variant = Variant.parse(variant)
    g = graph if graph is not None else m.graph
    m = m.copy()
    labels, witnesses = classification.labels, classification.witnesses
    index = {c.vertices: c for c in labels}
    bound = g.m + 4 * len(labels)
    for _ in range(bound + 1):
        found = forbidden_cycles(g, m, variant)
        if not found:
            return m
        c = index.get(found[0])
        if c is None or c not in witnesses:
            raise NotRestricted(f"forbidden cycle {found[0]} has no swap witness")
        w = witnesses[c]
        shared = set(c.native_edges) & set(w.native_edges)
        if w.kind == SQUARE and len(shared) == 1:
            sw = _swap_one_edge(g, m, c, w, next(iter(shared)))
        elif c.kind == TRIANGLE and w.kind == TRIANGLE:
            sw = _swap_two_edge(g, m, c, w, "triangle")
        elif c.kind == SQUARE and w.kind == SQUARE and len(shared) == 2:
            sw = _swap_two_edge(g, m, c, w, "two-edge")
        else:
            raise AssertionError(f"unexpected witness {w.vertices} for {c.vertices}")
        before = sum(g.scaled[e] for e in m)
        sw.apply(m)
        if m.max_degree() > 2:
            raise AssertionError(f"swap {sw} exceeded a degree bound")
        if sum(g.scaled[e] for e in m) < before:
            raise AssertionError(f"swap {sw} lost weight")
        if report is not None:
            report.swaps.append(sw)
    raise CleanupDiverged(f"forbidden cycles remain after {bound} swaps")


def is_k4(g: WeightedGraph, comp: list[int]) -> bool:
    return len(comp) == 4 and all(g.degree(v) == 3 for v in comp)


def _pipeline(sub: WeightedGraph, variant: Variant, report: LiftReport | None) -> EdgeSet:
    catalog = enumerate_short_cycles(sub)
    cls = classify(catalog, sub, variant)
    aux = build_auxiliary(sub, variant, cls)
    mp = max_weight_lu_matching(aux.instance)
    raw = lift_raw(mp, aux, report)
    return cleanup(raw, variant, cls, sub, report)


def solve(g: WeightedGraph, variant: Variant | str, report: LiftReport | None = None) -> EdgeSet:
    """Maximum-weight restricted 2-matching of ``g``.

    K4 components are solved exhaustively; everything else goes through one
    gadget build, one (l,u)-matching solve, lifting and cleanup.
    """
    from .oracle import brute_force_solve

    variant = Variant.parse(variant)
    validate_input(g)
    if variant.forbids_squares:
        bad = verify_vertex_induced(g, enumerate_short_cycles(g))
        if bad:
            raise NotVertexInduced(bad[0].vertices)
    result = EdgeSet(g)
    rest: list[int] = []
    for comp in g.components():
        if is_k4(g, comp):
            sub, _, old_edges = g.induced(comp)
            for e in brute_force_solve(sub, variant):
                result.add(old_edges[e])
        elif len(comp) > 1:
            rest.extend(comp)
    if rest:
        sub, _, old_edges = g.induced(sorted(rest))
        for e in _pipeline(sub, variant, report):
            result.add(old_edges[e])
    if not is_restricted_2matching(g, result, variant):
        raise AssertionError("solver produced an invalid restricted 2-matching")
    if report is not None:
        report.matching = result
    return result
