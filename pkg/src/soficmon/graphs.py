"""Sigma-labeled directed graphs, balls, and pointed label isomorphism.

Balls follow directed paths only, and a ball carries every edge of the host
graph between its vertices (the induced subgraph).
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .errors import BudgetError, DomainError, ValidationError

Edge = tuple[str, str, str]

ISO_NODE_BUDGET = 10**6


@dataclass(frozen=True)
class LabeledGraph:
    vertices: tuple[str, ...]
    labels: tuple[str, ...]
    edges: frozenset[Edge]
    _out: dict = field(default=None, init=False, repr=False, compare=False, hash=False)
    _vset: frozenset = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __init__(self, vertices: Iterable, labels: Iterable[str], edges: Iterable):
        vs = tuple(sorted({str(v) for v in vertices}))
        ls = tuple(dict.fromkeys(str(l) for l in labels))
        es = frozenset((str(u), str(s), str(v)) for u, s, v in edges)
        vset, lset = set(vs), set(ls)
        for u, s, v in es:
            if u not in vset or v not in vset:
                raise ValidationError(f"edge ({u}, {s}, {v}) has an endpoint outside the vertex set")
            if s not in lset:
                raise ValidationError(f"edge ({u}, {s}, {v}) uses an undeclared label")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "labels", ls)
        object.__setattr__(self, "edges", es)
        out = defaultdict(list)
        for e in sorted(es):
            out[e[0]].append((e[1], e[2]))
        object.__setattr__(self, "_out", dict(out))
        object.__setattr__(self, "_vset", frozenset(vs))

    def __contains__(self, v) -> bool:
        return v in self._vset

    def out_edges(self, v: str) -> list[tuple[str, str]]:
        """(label, target) pairs leaving v, sorted."""
        return self._out.get(v, [])

    def successors(self, v: str, label: str) -> list[str]:
        return [w for s, w in self.out_edges(v) if s == label]

    def is_deterministic(self) -> bool:
        for v in self.vertices:
            seen = set()
            for s, _ in self.out_edges(v):
                if s in seen:
                    return False
                seen.add(s)
        return True

    def induced(self, vertices: Iterable[str]) -> "LabeledGraph":
        vs = set(vertices)
        return LabeledGraph(vs, self.labels, [e for e in self.edges if e[0] in vs and e[2] in vs])

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class PointedBall:
    graph: LabeledGraph
    center: str
    radius: int

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self.graph.edges

    @property
    def deterministic(self) -> bool:
        return self.graph.is_deterministic()


def ball_vertices(g: LabeledGraph, v: str, r: int) -> dict[str, int]:
    """Directed distance from v for every vertex within distance r."""
    if v not in g:
        raise DomainError(f"unknown vertex {v!r}")
    dist = {v: 0}
    frontier = [v]
    for d in range(1, r + 1):
        nxt = []
        for u in frontier:
            for _, w in g.out_edges(u):
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return dist


def vertex_ball(g: LabeledGraph, v: str, r: int) -> PointedBall:
    return PointedBall(g.induced(ball_vertices(g, v, r)), v, r)


def _reachable(g: LabeledGraph, v: str) -> bool:
    return len(ball_vertices(g, v, len(g.vertices))) == len(g.vertices)


def _signature(g: LabeledGraph) -> dict[str, tuple]:
    """Per-vertex sorted multiset of (direction, label) incidences."""
    sig = {v: [] for v in g.vertices}
    for u, s, w in g.edges:
        if u == w:
            sig[u].append(("loop", s))
        else:
            sig[u].append(("out", s))
            sig[w].append(("in", s))
    return {v: tuple(sorted(x)) for v, x in sig.items()}


def _check_bijection(a: LabeledGraph, b: LabeledGraph, psi: dict[str, str]) -> bool:
    if len(psi) != len(a.vertices) or len(set(psi.values())) != len(b.vertices):
        return False
    return {(psi[u], s, psi[v]) for u, s, v in a.edges} == b.edges


def _synchronized_bfs(a: PointedBall, b: PointedBall) -> dict[str, str] | None:
    ga, gb = a.graph, b.graph
    psi = {a.center: b.center}
    used = {b.center}
    queue = [a.center]
    while queue:
        u = queue.pop()
        x = psi[u]
        out_b = defaultdict(list)
        for s, w in gb.out_edges(x):
            out_b[s].append(w)
        out_a = ga.out_edges(u)
        if len(out_a) != len(gb.out_edges(x)):
            return None
        for s, w in out_a:
            targets = out_b.get(s, [])
            if len(targets) != 1:
                return None
            y = targets[0]
            if w in psi:
                if psi[w] != y:
                    return None
            else:
                if y in used:
                    return None
                psi[w] = y
                used.add(y)
                queue.append(w)
    return psi if _check_bijection(ga, gb, psi) else None


def _backtrack(a: PointedBall, b: PointedBall, budget: int, find_all: bool = False):
    ga, gb = a.graph, b.graph
    sa, sb = _signature(ga), _signature(gb)
    order = sorted(ga.vertices, key=lambda v: (v != a.center, v))
    candidates = {v: [w for w in gb.vertices if sb[w] == sa[v]] for v in order}
    edges_a, edges_b = ga.edges, gb.edges
    found = []
    nodes = 0
    psi: dict[str, str] = {}
    used: set[str] = set()

    def consistent(v, w):
        for u, s, x in edges_a:
            if u == v and x in psi and (w, s, psi[x]) not in edges_b:
                return False
            if x == v and u in psi and (psi[u], s, w) not in edges_b:
                return False
            if u == v == x and (w, s, w) not in edges_b:
                return False
        return True

    def rec(i):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetError(f"isomorphism search exceeded {budget} nodes")
        if i == len(order):
            if _check_bijection(ga, gb, psi):
                found.append(dict(psi))
                return not find_all
            return False
        v = order[i]
        cands = [b.center] if v == a.center else candidates[v]
        for w in cands:
            if w in used or (v != a.center and w == b.center):
                continue
            if not consistent(v, w):
                continue
            psi[v] = w
            used.add(w)
            if rec(i + 1):
                return True
            del psi[v]
            used.discard(w)
        return False

    rec(0)
    return found


def pointed_isomorphism(a: PointedBall, b: PointedBall, budget: int = ISO_NODE_BUDGET) -> dict[str, str] | None:
    """A label-preserving bijection a -> b sending center to center, or None."""
    ga, gb = a.graph, b.graph
    if len(ga.vertices) != len(gb.vertices) or len(ga.edges) != len(gb.edges):
        return None
    if a.center not in ga or b.center not in gb:
        raise DomainError("ball center is not a vertex of its graph")
    if ga.is_deterministic() and _reachable(ga, a.center):
        return _synchronized_bfs(a, b)
    found = _backtrack(a, b, budget)
    return found[0] if found else None


def all_pointed_isomorphisms(a: PointedBall, b: PointedBall, budget: int = ISO_NODE_BUDGET) -> list[dict[str, str]]:
    """Exhaustive backtracking enumeration; used to cross-check uniqueness."""
    ga, gb = a.graph, b.graph
    if len(ga.vertices) != len(gb.vertices) or len(ga.edges) != len(gb.edges):
        return []
    return _backtrack(a, b, budget, find_all=True)
