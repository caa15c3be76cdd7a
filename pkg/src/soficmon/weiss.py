"""Cayley balls, good-vertex sets V(r), the Weiss inequality and example graph families."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .errors import BudgetError, StructuralError, ValidationError
from .graphs import LabeledGraph, PointedBall, pointed_isomorphism, vertex_ball
from .monoids import BALL_BUDGET, Bicyclic, Element, MonoidHandle, elements_ball
from .transform import fraction_str


def cayley_ball_graph(h: MonoidHandle, r: int, budget: int = BALL_BUDGET) -> PointedBall:
    """Subgraph of the Cayley graph induced on B_r(1_M), pointed at 1_M.

    Vertex ids are element labels; edges are (s, sigma, s*sigma) with both
    ends in the ball.
    """
    ball = elements_ball(h, r, budget)
    members = set(ball)
    gens = h.generator_elements()
    edges = []
    for s in ball:
        for label, g in zip(h.generators, gens):
            t = h.multiply(s, g)
            if t in members:
                edges.append((s.label, label, t.label))
    g = LabeledGraph([s.label for s in ball], h.generators, edges)
    return PointedBall(g, h.identity().label, r)


def cayley_ball_elements(h: MonoidHandle, r: int, budget: int = BALL_BUDGET) -> dict[str, Element]:
    return {s.label: s for s in elements_ball(h, r, budget)}


def _good_chunk(args):
    g, model, r, vertices = args
    return [v for v in vertices if pointed_isomorphism(model, vertex_ball(g, v, r)) is not None]


def good_vertex_set(g: LabeledGraph, h: MonoidHandle, r: int, jobs: int = 1,
                    budget: int = BALL_BUDGET) -> list[str]:
    """V(r): vertices whose r-ball is pointed-isomorphic to the Cayley r-ball."""
    model = cayley_ball_graph(h, r, budget)
    if jobs <= 1 or len(g.vertices) < 64:
        return _good_chunk((g, model, r, g.vertices))
    chunks = [g.vertices[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(jobs) as pool:
        parts = pool.map(_good_chunk, [(g, model, r, c) for c in chunks])
    return sorted(set().union(*parts))


def ball_isomorphism(g: LabeledGraph, h: MonoidHandle, v: str, r: int) -> dict[str, str] | None:
    """psi_{v,r} as a map from element labels to vertices, if v is good."""
    return pointed_isomorphism(cayley_ball_graph(h, r), vertex_ball(g, v, r))


@dataclass(frozen=True)
class WeissReport:
    r: int
    delta: Fraction
    vertex_count: int
    good: tuple[str, ...]

    @property
    def good_count(self) -> int:
        return len(self.good)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.good_count, self.vertex_count)

    @property
    def passed(self) -> bool:
        return self.good_count >= (1 - self.delta) * self.vertex_count

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "delta": fraction_str(self.delta),
            "vertex_count": self.vertex_count,
            "good_count": self.good_count,
            "good": list(self.good),
            "ratio": fraction_str(self.ratio),
            "pass": self.passed,
        }


def weiss_check(g: LabeledGraph, h: MonoidHandle, r: int, delta, jobs: int = 1) -> WeissReport:
    delta = Fraction(delta)
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    if not g.vertices:
        raise ValidationError("the Weiss inequality needs a non-empty graph")
    good = good_vertex_set(g, h, r, jobs=jobs)
    return WeissReport(r, delta, len(g.vertices), tuple(good))


# ---------------------------------------------------------------------------
# graph families


def fan_graph(x_count: int) -> LabeledGraph:
    """V = X + {a}, one a-edge from every vertex into the apex a (a loop at a)."""
    if x_count < 1:
        raise ValueError("x_count must be positive")
    xs = [f"x{i}" for i in range(x_count)]
    vs = xs + ["a"]
    return LabeledGraph(vs, ["a"], [(v, "a", "a") for v in vs])


def _tuple_id(xs) -> str:
    return "".join(map(str, xs))


def schreier_graph(n: int, limit: int = 20) -> LabeledGraph:
    """Diagonal action of Map({0,1}) on {0,1}^n for the generators a and c0.

    a flips every coordinate, c0 sends every tuple to 0...0.  Vertex ids are the
    bit strings.
    """
    if not 1 <= n <= limit:
        raise BudgetError(f"schreier_graph supports 1 <= n <= {limit}")
    edges = []
    zero = "0" * n
    vertices = []
    for xs in iproduct((0, 1), repeat=n):
        v = _tuple_id(xs)
        vertices.append(v)
        edges.append((v, "a", _tuple_id(1 - x for x in xs)))
        edges.append((v, "c0", zero))
    return LabeledGraph(vertices, ["a", "c0"], edges)


def cycle_graph(n: int) -> LabeledGraph:
    """0 -> 1 -> ... -> n-1 -> 0, every edge labelled 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return LabeledGraph(range(n), ["1"], [(k, "1", (k + 1) % n) for k in range(n)])


def path_graph(n: int) -> LabeledGraph:
    """0 -> 1 -> ... -> n-1, every edge labelled 1."""
    if n < 1:
        raise ValueError("n must be positive")
    return LabeledGraph(range(n), ["1"], [(k, "1", k + 1) for k in range(n - 1)])


def naturals_fan_graph(x_count: int, r: int) -> LabeledGraph:
    """X + {1..r} with x -> 1 for x in X and k -> k+1 below r."""
    xs = [f"x{i}" for i in range(x_count)]
    chain = [str(k) for k in range(1, r + 1)]
    edges = [(x, "1", "1") for x in xs] + [(str(k), "1", str(k + 1)) for k in range(1, r)]
    return LabeledGraph(xs + chain, ["1"], edges)


def random_deterministic_graph(n_vertices: int, labels, rng: random.Random,
                               edge_prob: float = 0.8) -> LabeledGraph:
    """At most one edge per (vertex, label), targets uniform."""
    vs = [f"v{i}" for i in range(n_vertices)]
    edges = [(v, s, rng.choice(vs)) for v in vs for s in labels if rng.random() < edge_prob]
    return LabeledGraph(vs, labels, edges)


def plant_bicyclic_balls(n_vertices: int, copies: int, rng: random.Random,
                         edge_prob: float = 0.5) -> LabeledGraph:
    """Random deterministic {p,q}-graph seeded with copies of the Cayley 2-ball.

    Planted copies give good vertices a chance to exist; the rest of the graph
    is random and may glue into the copies.
    """
    model = cayley_ball_graph(Bicyclic(), 2).graph
    size = len(model.vertices)
    if copies * size > n_vertices:
        raise ValueError("not enough vertices for the requested copies")
    vs = [f"v{i}" for i in range(n_vertices)]
    out: dict[tuple[str, str], str] = {}
    for c in range(copies):
        rename = {m: vs[c * size + i] for i, m in enumerate(model.vertices)}
        for u, s, w in model.edges:
            out[(rename[u], s)] = rename[w]
    for v in vs:
        for s in ("p", "q"):
            if (v, s) not in out and rng.random() < edge_prob:
                out[(v, s)] = rng.choice(vs)
    return LabeledGraph(vs, ["p", "q"], [(u, s, w) for (u, s), w in out.items()])


# ---------------------------------------------------------------------------
# the bicyclic obstruction


@dataclass(frozen=True)
class HalvingReport:
    r: int
    vertex_count: int
    good: tuple[str, ...]
    successor: dict
    good_successors: tuple[str, ...]  # (i) violations: p-successors that are good
    collisions: tuple[tuple[str, str, str], ...]  # (ii) violations: (v, w, common successor)

    @property
    def bound_holds(self) -> bool:
        return 2 * len(self.good) <= self.vertex_count

    @property
    def passed(self) -> bool:
        return not self.good_successors and not self.collisions and self.bound_holds

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "vertex_count": self.vertex_count,
            "good_count": len(self.good),
            "good": list(self.good),
            "p_successor": dict(sorted(self.successor.items())),
            "good_successors": list(self.good_successors),
            "collisions": [list(c) for c in self.collisions],
            "bound_holds": self.bound_holds,
            "pass": self.passed,
        }


def bicyclic_halving_check(g: LabeledGraph, r: int = 2, jobs: int = 1) -> HalvingReport:
    """Check that p-edges leave V(r) injectively, forcing |V(r)| <= |V|/2."""
    if r < 2:
        raise ValueError("the halving argument needs r >= 2")
    if "p" not in g.labels:
        raise ValidationError("graph labels must include p")
    good = good_vertex_set(g, Bicyclic(), r, jobs=jobs)
    goodset = set(good)
    successor = {}
    for v in good:
        targets = g.successors(v, "p")
        if len(targets) != 1:
            raise StructuralError(f"good vertex {v} has {len(targets)} outgoing p-edges")
        successor[v] = targets[0]
    bad_targets = tuple(v for v in good if successor[v] in goodset)
    seen: dict[str, str] = {}
    collisions = []
    for v in good:
        w = successor[v]
        if w in seen:
            collisions.append((seen[w], v, w))
        else:
            seen[w] = v
    return HalvingReport(r, len(g.vertices), tuple(good), successor, bad_targets, tuple(collisions))
