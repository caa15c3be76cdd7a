"""Finite approximations of monoids by transformation monoids.

An :class:`ApproxMap` assigns a transformation of ``{0..n-1}`` to finitely many
monoid elements; every other element acts as the identity.  All defects are
exact fractions and every threshold is a closed inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import ContractError, DomainError, PreconditionError, ValidationError
from .graphs import LabeledGraph, pointed_isomorphism, vertex_ball
from .monoids import (
    Element,
    FiniteMonoidHandle,
    FiniteSemigroup,
    MonoidHandle,
    ProductMonoid,
    adjoin_identity,
    elements_ball,
    left_regular_embedding,
    right_regular_embedding,
)
from .transform import (
    DIAGRAMMATIC,
    SIZE_BUDGET,
    STANDARD,
    Transformation,
    check_convention,
    compose,
    diagonal_amplify,
    fraction_str,
    hamming,
    product_combine,
)
from .weiss import WeissReport, cayley_ball_graph, weiss_check


@dataclass(frozen=True, eq=False)
class ApproxMap:
    handle: MonoidHandle
    x_size: int
    assignments: dict
    convention: str = STANDARD

    def __post_init__(self):
        check_convention(self.convention)
        if self.x_size < 1:
            raise ValidationError("x_size must be positive")
        for e, f in self.assignments.items():
            if not isinstance(e, Element) or e.handle != self.handle:
                raise DomainError(f"{e!r} is not an element of the approximated monoid")
            if f.domain_size != self.x_size:
                raise DomainError(f"image of {e.label} acts on {f.domain_size} points, expected {self.x_size}")

    def __call__(self, e: Element) -> Transformation:
        f = self.assignments.get(e)
        return f if f is not None else Transformation.identity(self.x_size)

    def with_assignment(self, e: Element, f: Transformation) -> "ApproxMap":
        new = dict(self.assignments)
        new[e] = f
        return ApproxMap(self.handle, self.x_size, new, self.convention)

    def to_json(self) -> dict:
        items = sorted(self.assignments.items(), key=lambda kv: self.handle.sort_key(kv[0]))
        return {
            "x_size": self.x_size,
            "convention": self.convention,
            "monoid": self.handle.to_json(),
            "assignments": {e.label: f.to_json() for e, f in items},
        }

    @classmethod
    def from_json(cls, data: dict, handle: MonoidHandle) -> "ApproxMap":
        try:
            n = int(data["x_size"])
            conv = data.get("convention", STANDARD)
            raw = data["assignments"]
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed approximation document: {exc}") from None
        assignments = {handle.parse(k): Transformation.from_json(v) for k, v in raw.items()}
        return cls(handle, n, assignments, conv)


def closure(h: MonoidHandle, k: Iterable[Element]) -> list[Element]:
    """K + K^2 + {1}, shortlex sorted."""
    k = list(k)
    out = set(k) | {h.multiply(a, b) for a in k for b in k} | {h.identity()}
    return h.sorted(out)


@dataclass(frozen=True)
class DefectReport:
    k: tuple[str, ...]
    max_product_defect: Fraction
    product_pair: tuple[str, str] | None
    identity_defect: Fraction
    min_injectivity: Fraction
    injectivity_pair: tuple[str, str] | None
    product_defects: dict = field(repr=False, compare=False, hash=False, default=None)
    injectivity: dict = field(repr=False, compare=False, hash=False, default=None)

    @property
    def morphism_defect(self) -> Fraction:
        return max(self.max_product_defect, self.identity_defect)

    def is_morphism(self, eps) -> bool:
        return self.morphism_defect <= Fraction(eps)

    def is_injective(self, alpha) -> bool:
        return self.min_injectivity >= Fraction(alpha)

    def certifies(self, eps, alpha=None) -> bool:
        """(K, alpha)-injective (K, eps)-morphism, with alpha = 1 - eps by default."""
        eps = Fraction(eps)
        return self.is_morphism(eps) and self.is_injective(1 - eps if alpha is None else alpha)

    @property
    def objective(self) -> Fraction:
        """Least eps for which this map is a (K, 1-eps)-injective (K, eps)-morphism."""
        return max(self.morphism_defect, 1 - self.min_injectivity)

    def to_json(self) -> dict:
        return {
            "K": list(self.k),
            "max_product_defect": fraction_str(self.max_product_defect),
            "product_pair": list(self.product_pair) if self.product_pair else None,
            "identity_defect": fraction_str(self.identity_defect),
            "min_injectivity": fraction_str(self.min_injectivity),
            "injectivity_pair": list(self.injectivity_pair) if self.injectivity_pair else None,
        }


def defect_report(phi: ApproxMap, k: Iterable[Element]) -> DefectReport:
    h = phi.handle
    ks = h.sorted(k)
    for e in ks:
        if e.handle != h:
            raise DomainError(f"{e!r} is not an element of the approximated monoid")
    images = {e: phi(e) for e in ks}
    products = {}
    best, best_pair = Fraction(0), None
    for a in ks:
        for b in ks:
            d = hamming(phi(h.multiply(a, b)), compose(images[a], images[b], phi.convention))
            products[(a.label, b.label)] = d
            if best_pair is None or d > best:
                best, best_pair = d, (a.label, b.label)
    ident = hamming(phi(h.identity()), Transformation.identity(phi.x_size))
    inj = {}
    low, low_pair = Fraction(1), None
    for i, a in enumerate(ks):
        for b in ks[i + 1:]:
            d = hamming(images[a], images[b])
            inj[(a.label, b.label)] = d
            if low_pair is None or d < low:
                low, low_pair = d, (a.label, b.label)
    return DefectReport(tuple(e.label for e in ks), best, best_pair, ident, low, low_pair, products, inj)


def normalize_identity(phi: ApproxMap, k: Iterable[Element], eps) -> ApproxMap:
    """Reset phi(1) to Id, trading a (K, eps/2) certificate for a (K, eps) one."""
    eps = Fraction(eps)
    k = list(k)
    before = defect_report(phi, k)
    if not before.certifies(eps / 2):
        raise PreconditionError(
            f"input is not a (K, 1-eps/2)-injective (K, eps/2)-morphism: objective {before.objective}")
    out = phi.with_assignment(phi.handle.identity(), Transformation.identity(phi.x_size))
    after = defect_report(out, k)
    if not after.certifies(eps):
        raise ContractError(f"identity normalization failed verification: objective {after.objective}")
    return out


def amplify_approx(phi: ApproxMap, power: int, budget: int = SIZE_BUDGET) -> ApproxMap:
    """Compose phi with the diagonal embedding Map(X) -> Map(X^power)."""
    new = {e: diagonal_amplify(f, power, budget) for e, f in phi.assignments.items()}
    return ApproxMap(phi.handle, phi.x_size**power, new, phi.convention)


def product_approx(phi1: ApproxMap, phi2: ApproxMap, budget: int = SIZE_BUDGET) -> ApproxMap:
    """Coordinate-wise approximation of M1 x M2 on X1 x X2."""
    if phi1.convention != phi2.convention:
        raise DomainError("both approximations must use the same composition convention")
    h = ProductMonoid(phi1.handle, phi2.handle)
    d1 = set(phi1.assignments) | {phi1.handle.identity()}
    d2 = set(phi2.assignments) | {phi2.handle.identity()}
    new = {}
    for a in phi1.handle.sorted(d1):
        for b in phi2.handle.sorted(d2):
            new[h.pair(a, b)] = product_combine([phi1(a), phi2(b)], budget)
    return ApproxMap(h, phi1.x_size * phi2.x_size, new, phi1.convention)


def exact_representation(h: FiniteMonoidHandle, convention: str = STANDARD) -> ApproxMap:
    """Regular representation of a finite monoid on itself.

    Standard composition uses left multiplications, diagrammatic composition
    uses right multiplications; either way the map is an injective morphism.
    """
    check_convention(convention)
    reg = left_regular_embedding(h.monoid) if convention == STANDARD else right_regular_embedding(h.monoid)
    return ApproxMap(h, h.monoid.size, {h.at(i): f for i, f in reg.items()}, convention)


@dataclass(frozen=True, eq=False)
class AdjoinIdentityApprox:
    approx: ApproxMap
    report: DefectReport
    y_size: int
    z_size: int

    @property
    def x_size(self) -> int:
        return self.approx.x_size

    @property
    def z_fraction(self) -> Fraction:
        return Fraction(self.z_size, self.x_size)


def adjoin_identity_handle(s: FiniteSemigroup) -> FiniteMonoidHandle:
    return FiniteMonoidHandle(adjoin_identity(s), list(range(s.size)))


def adjoin_identity_approx(s: FiniteSemigroup, eps, k: Iterable[Element] | None = None,
                           handle: FiniteMonoidHandle | None = None) -> AdjoinIdentityApprox:
    """Approximate M(S) = S + {1} on X = Y + {y0} + Z with Y = K + K^2.

    For s in S: z -> s on Z, y -> sy on Y when sy stays in Y, everything else
    to y0.  |Z| is the least size giving |Z|/|X| >= 1 - eps.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    h = handle or adjoin_identity_handle(s)
    m = h.monoid
    ks = h.sorted(k) if k is not None else h.all_elements()
    y = h.sorted(set(ks) | {h.multiply(a, b) for a in ks for b in ks})
    y_index = {e: i for i, e in enumerate(y)}
    y0 = len(y)
    z_size = math.ceil((1 - eps) * (len(y) + 1) / eps)
    n = len(y) + 1 + z_size
    one = h.identity()
    assignments = {one: Transformation.identity(n)}
    for si in range(m.size):
        e = h.at(si)
        if e == one:
            continue
        images = [y0] * n
        if e in y_index:
            for x in range(y0 + 1, n):
                images[x] = y_index[e]
            for x_el, xi in y_index.items():
                prod = h.multiply(e, x_el)
                if prod in y_index:
                    images[xi] = y_index[prod]
        assignments[e] = Transformation(images)
    phi = ApproxMap(h, n, assignments, STANDARD)
    report = defect_report(phi, ks)
    if not report.certifies(eps):
        raise ContractError(f"adjoin-identity construction failed verification: objective {report.objective}")
    return AdjoinIdentityApprox(phi, report, len(y), z_size)


# ---------------------------------------------------------------------------
# bridges between labeled graphs and approximations


def ball_radius(h: MonoidHandle, elements: Iterable[Element], max_radius: int = 64) -> int:
    """Least r0 with every element inside B_{r0}(1_M)."""
    want = set(elements)
    for r in range(max_radius + 1):
        if want <= set(h.ball_distances(r)):
            return r
    raise ValueError(f"elements not reached within radius {max_radius}")


@dataclass(frozen=True, eq=False)
class GraphBridge:
    approx: ApproxMap
    report: DefectReport
    weiss: WeissReport
    r: int
    vertex_order: tuple[str, ...]
    eps: Fraction

    @property
    def verified(self) -> bool:
        return self.report.certifies(self.eps)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "epsilon": fraction_str(self.eps),
            "vertex_order": list(self.vertex_order),
            "weiss": self.weiss.to_json(),
            "report": self.report.to_json(),
            "verified": self.verified,
            "approx": self.approx.to_json(),
        }


def graph_to_morphism(g: LabeledGraph, h: MonoidHandle, k: Iterable[Element], eps, jobs: int = 1) -> GraphBridge:
    """Read an approximation off a graph whose r-balls mostly look like the Cayley ball.

    r = 2*r0 where K + K^2 lies in B_{r0}(1_M).  A good vertex v is sent by
    phi(s) to psi_{v,r}(s) for s in B_r(1_M); bad vertices are fixed.  Points
    are vertices in sorted order and products are diagrammatic.
    """
    eps = Fraction(eps)
    ks = h.sorted(k)
    r0 = ball_radius(h, closure(h, ks))
    r = 2 * r0
    weiss = weiss_check(g, h, r, eps, jobs=jobs)
    if not weiss.passed:
        raise PreconditionError(
            f"Weiss inequality fails at r={r}: {weiss.good_count}/{weiss.vertex_count} good vertices")
    model = cayley_ball_graph(h, r)
    ball = elements_ball(h, r)
    index = {v: i for i, v in enumerate(g.vertices)}
    psi = {}
    for v in weiss.good:
        iso = pointed_isomorphism(model, vertex_ball(g, v, r))
        if iso is None:
            raise ContractError(f"vertex {v} reported good but has no ball isomorphism")
        psi[v] = iso
    assignments = {}
    for s in ball:
        images = [index[psi[v][s.label]] if v in psi else index[v] for v in g.vertices]
        assignments[s] = Transformation(images)
    phi = ApproxMap(h, len(g.vertices), assignments, DIAGRAMMATIC)
    return GraphBridge(phi, defect_report(phi, ks), weiss, r, g.vertices, eps)


def morphism_to_graph(phi: ApproxMap, sigma: Iterable[str] | None = None) -> LabeledGraph:
    """Graph on X with an edge (x, s, phi(s)(x)) per point and generator."""
    if phi.convention != DIAGRAMMATIC:
        raise DomainError("the graph bridge needs a diagrammatic approximation")
    h = phi.handle
    if not phi(h.identity()).is_identity():
        raise ContractError("phi(1) must be the identity; apply normalize_identity first")
    labels = list(sigma) if sigma is not None else list(h.generators)
    edges = []
    for label in labels:
        f = phi(h.generator(label))
        edges.extend((x, label, f(x)) for x in range(phi.x_size))
    return LabeledGraph(range(phi.x_size), labels, edges)


def epsilon_for_delta(h: MonoidHandle, r: int, delta) -> Fraction:
    """eps = delta / (|B_r| |Sigma| + |B_r|^2)."""
    b = len(elements_ball(h, r))
    return Fraction(delta) / (b * len(h.generators) + b * b)


def weiss_parameters(h: MonoidHandle, r: int, delta) -> tuple[list[Element], Fraction]:
    """(K, eps) such that a (K, 1-eps)-injective (K, eps)-morphism with phi(1) = Id
    yields a graph with |V(r)| >= (1 - delta)|V|; K = B_{2r+1}(1_M)."""
    return elements_ball(h, 2 * r + 1), epsilon_for_delta(h, r, delta)
