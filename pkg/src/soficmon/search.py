"""Exhaustive and randomized search for (K, alpha)-injective (K, eps)-morphisms.

The exhaustive engine works on indices into ``all_transformations(n)`` with
precomputed composition and disagreement tables.  Domain elements are
assigned in shortlex order (identity first) and candidate maps are tried in
lexicographic order, so the first solution found, and the first minimizer,
is the lexicographically least one.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .approx import ApproxMap, DefectReport, closure, defect_report
from .errors import BudgetError
from .monoids import Element, MonoidHandle
from .transform import STANDARD, Transformation, all_transformations, check_convention, compose

NODE_BUDGET = 10**7
MAX_TABLE_N = 4


@dataclass(frozen=True)
class MapTables:
    n: int
    maps: tuple[Transformation, ...]
    comp: tuple[tuple[int, ...], ...]
    diff: tuple[tuple[int, ...], ...]
    identity: int


@lru_cache(maxsize=None)
def map_tables(n: int, convention: str = STANDARD) -> MapTables:
    check_convention(convention)
    if not 1 <= n <= MAX_TABLE_N:
        raise BudgetError(f"transformation tables are limited to n <= {MAX_TABLE_N}")
    maps = all_transformations(n)
    index = {f: i for i, f in enumerate(maps)}
    comp = tuple(tuple(index[compose(f, g, convention)] for g in maps) for f in maps)
    diff = tuple(tuple(sum(a != b for a, b in zip(f.images, g.images)) for g in maps) for f in maps)
    return MapTables(n, tuple(maps), comp, diff, index[Transformation.identity(n)])


@dataclass(frozen=True)
class ConstraintSystem:
    """Constraints over a domain D of monoid elements (D[0] is the identity).

    products: (t, a, b) meaning phi(D[t]) should match phi(D[a]) phi(D[b]);
    pairs: (i, j) distinct K-elements that should be far apart.
    """

    domain: tuple[Element, ...]
    products: tuple[tuple[int, int, int], ...]
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def build(cls, h: MonoidHandle, k: Iterable[Element], domain: Sequence[Element] | None = None):
        ks = h.sorted(k)
        dom = list(domain) if domain is not None else closure(h, ks)
        one = h.identity()
        dom = [one] + [e for e in h.sorted(dom) if e != one]
        pos = {e: i for i, e in enumerate(dom)}
        products = []
        for a in ks:
            for b in ks:
                ab = h.multiply(a, b)
                if ab in pos:
                    products.append((pos[ab], pos[a], pos[b]))
        kpos = [pos[e] for e in ks if e in pos]
        pairs = [(kpos[i], kpos[j]) for i in range(len(kpos)) for j in range(i + 1, len(kpos))]
        return cls(tuple(dom), tuple(products), tuple(pairs))

    def by_depth(self):
        """Constraints grouped by the last domain position they mention."""
        prods = [[] for _ in self.domain]
        pairs = [[] for _ in self.domain]
        for c in self.products:
            prods[max(c)].append(c)
        for c in self.pairs:
            pairs[max(c)].append(c)
        return prods, pairs


def minimize_objective(system: ConstraintSystem, n: int, convention: str = STANDARD,
                       budget: int = NODE_BUDGET):
    """Exact min over all assignments of max(defects, 1 - min distance).

    Returns (numerator over n, witness indices, nodes visited).
    """
    t = map_tables(n, convention)
    comp, diff, ident = t.comp, t.diff, t.identity
    prods, pairs = system.by_depth()
    size = len(t.maps)
    depth = len(system.domain)
    assign = [0] * depth
    best = [n + 1, None]
    nodes = 0

    def rec(d, current):
        nonlocal nodes
        if d == depth:
            if current < best[0]:
                best[0], best[1] = current, tuple(assign)
            return
        for m in range(size):
            nodes += 1
            if nodes > budget:
                raise BudgetError(f"search exceeded {budget} nodes")
            assign[d] = m
            v = current
            if d == 0:
                v = max(v, diff[m][ident])
            for tt, a, b in prods[d]:
                v = max(v, diff[assign[tt]][comp[assign[a]][assign[b]]])
                if v >= best[0]:
                    break
            if v < best[0]:
                for i, j in pairs[d]:
                    v = max(v, n - diff[assign[i]][assign[j]])
                    if v >= best[0]:
                        break
            if v < best[0]:
                rec(d + 1, v)

    rec(0, 0)
    return best[0], best[1], nodes


def find_feasible(system: ConstraintSystem, n: int, eps: Fraction, alpha: Fraction,
                  convention: str = STANDARD, budget: int = NODE_BUDGET):
    """First assignment (lexicographic) meeting the thresholds.

    Returns (witness or None, nodes visited, exhausted flag).
    """
    t = map_tables(n, convention)
    comp, diff, ident = t.comp, t.diff, t.identity
    max_defect = math.floor(eps * n)
    min_dist = math.ceil(alpha * n)
    prods, pairs = system.by_depth()
    size = len(t.maps)
    depth = len(system.domain)
    assign = [0] * depth
    nodes = 0

    def ok(d):
        if d == 0 and diff[assign[0]][ident] > max_defect:
            return False
        for tt, a, b in prods[d]:
            if diff[assign[tt]][comp[assign[a]][assign[b]]] > max_defect:
                return False
        for i, j in pairs[d]:
            if diff[assign[i]][assign[j]] < min_dist:
                return False
        return True

    def rec(d):
        nonlocal nodes
        if d == depth:
            return True
        for m in range(size):
            nodes += 1
            if nodes > budget:
                raise BudgetError
            assign[d] = m
            if ok(d) and rec(d + 1):
                return True
        return False

    try:
        found = rec(0)
    except BudgetError:
        return None, nodes, False
    return (tuple(assign) if found else None), nodes, True


FOUND, NONE, INCONCLUSIVE = "found", "none", "inconclusive"


@dataclass(frozen=True, eq=False)
class SearchResult:
    status: str
    approx: ApproxMap | None
    report: DefectReport | None
    nodes: int

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "nodes": self.nodes,
            "report": self.report.to_json() if self.report else None,
            "approx": self.approx.to_json() if self.approx else None,
        }


def _to_approx(h, system, witness_maps, n, convention):
    return ApproxMap(h, n, dict(zip(system.domain, witness_maps)), convention)


def exhaustive_search(h: MonoidHandle, k: Iterable[Element], eps, n: int, alpha=None,
                      convention: str = STANDARD, budget: int = NODE_BUDGET,
                      randomized: bool = False, seed: int | None = None,
                      iterations: int = 20000, restarts: int = 20) -> SearchResult:
    """Look for a (K, alpha)-injective (K, eps)-morphism into Map({0..n-1}).

    ``alpha`` defaults to 1 - eps.  Exhaustive mode answers "none" only after
    exhausting the space; hitting the node budget gives "inconclusive".
    """
    eps = Fraction(eps)
    alpha = 1 - eps if alpha is None else Fraction(alpha)
    ks = h.sorted(k)
    system = ConstraintSystem.build(h, ks)
    if randomized:
        if seed is None:
            raise ValueError("randomized search needs an explicit seed")
        return _hill_climb(h, ks, system, eps, alpha, n, convention, seed, iterations, restarts)
    t = map_tables(n, convention)
    witness, nodes, exhausted = find_feasible(system, n, eps, alpha, convention, budget)
    if witness is None:
        return SearchResult(NONE if exhausted else INCONCLUSIVE, None, None, nodes)
    phi = _to_approx(h, system, [t.maps[i] for i in witness], n, convention)
    report = defect_report(phi, ks)
    assert report.certifies(eps, alpha)
    return SearchResult(FOUND, phi, report, nodes)


def _hill_climb(h, ks, system, eps, alpha, n, convention, seed, iterations, restarts):
    rng = random.Random(seed)
    dom = system.domain
    steps = 0
    best_phi, best_report = None, None
    for _ in range(restarts):
        images = {e: [rng.randrange(n) for _ in range(n)] for e in dom}
        images[dom[0]] = list(range(n))

        def score(imgs):
            phi = ApproxMap(h, n, {e: Transformation(v) for e, v in imgs.items()}, convention)
            rep = defect_report(phi, ks)
            return rep.objective, phi, rep

        cur, phi, rep = score(images)
        for _ in range(iterations):
            steps += 1
            if rep.certifies(eps, alpha):
                return SearchResult(FOUND, phi, rep, steps)
            e = dom[rng.randrange(len(dom))]
            x = rng.randrange(n)
            old = images[e][x]
            images[e][x] = rng.randrange(n)
            new, nphi, nrep = score(images)
            if new <= cur:
                cur, phi, rep = new, nphi, nrep
            else:
                images[e][x] = old
        if best_report is None or rep.objective < best_report.objective:
            best_phi, best_report = phi, rep
    if best_report is not None and best_report.certifies(eps, alpha):
        return SearchResult(FOUND, best_phi, best_report, steps)
    return SearchResult(INCONCLUSIVE, None, None, steps)
