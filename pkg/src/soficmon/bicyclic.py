"""Certificates that the bicyclic monoid admits no good finite approximation.

With K = {1, p, q, qp}, h = phi(1), f = phi(p), g = phi(q), k = phi(qp):

    d(fg, Id) <= d(h, Id) + d(h, fg)
    d(gf, Id) == d(fg, Id)
    d(k, h)   <= d(k, gf) + d(gf, Id) + d(h, Id)

so if every morphism constraint is at most eps then d(k, h) <= 4 eps, while
injectivity needs d(k, h) >= 1 - eps.  Both hold only when eps >= 1/5.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetError
from .monoids import Bicyclic
from .search import ConstraintSystem, map_tables, minimize_objective
from .transform import STANDARD, Transformation, compose, fraction_str, hamming

THRESHOLD = Fraction(1, 5)


@dataclass(frozen=True)
class Certificate:
    h: Transformation
    f: Transformation
    g: Transformation
    k: Transformation
    eps: Fraction
    convention: str
    d_h_id: Fraction
    d_h_fg: Fraction
    d_fg_id: Fraction
    d_gf_id: Fraction
    d_k_gf: Fraction
    d_k_h: Fraction

    @property
    def first_triangle(self) -> bool:
        return self.d_fg_id <= self.d_h_id + self.d_h_fg

    @property
    def swap_equality(self) -> bool:
        return self.d_fg_id == self.d_gf_id

    @property
    def chain_bound(self) -> Fraction:
        return self.d_k_gf + self.d_gf_id + self.d_h_id

    @property
    def second_triangle(self) -> bool:
        return self.d_k_h <= self.chain_bound

    @property
    def constraint_max(self) -> Fraction:
        """Largest of the three morphism constraints the chain uses."""
        return max(self.d_h_id, self.d_h_fg, self.d_k_gf)

    @property
    def constraints_hold(self) -> bool:
        return self.constraint_max <= self.eps

    @property
    def injective(self) -> bool:
        return self.d_k_h >= 1 - self.eps

    @property
    def conclusion(self) -> str:
        if not self.constraints_hold:
            return "morphism-constraint-violated"
        if not self.injective:
            return "injectivity-violated"
        return "consistent"  # only possible when eps >= 1/5

    @property
    def valid(self) -> bool:
        """The chain inequalities hold and explain the outcome."""
        ok = self.first_triangle and self.swap_equality and self.second_triangle
        if self.constraints_hold:
            ok = ok and self.d_k_h <= 4 * self.eps
            if self.eps < THRESHOLD:
                ok = ok and not self.injective
        return ok

    def to_json(self) -> dict:
        fs = fraction_str
        return {
            "epsilon": fs(self.eps),
            "convention": self.convention,
            "maps": {"h": self.h.to_json(), "f": self.f.to_json(),
                     "g": self.g.to_json(), "k": self.k.to_json()},
            "chain": {
                "d(h,Id)": fs(self.d_h_id),
                "d(h,fg)": fs(self.d_h_fg),
                "d(fg,Id)": fs(self.d_fg_id),
                "d(gf,Id)": fs(self.d_gf_id),
                "d(k,gf)": fs(self.d_k_gf),
                "d(k,h)": fs(self.d_k_h),
            },
            "chain_bound": fs(self.chain_bound),
            "conclusion": self.conclusion,
            "valid": self.valid,
        }


def bicyclic_chain_certificate(h: Transformation, f: Transformation, g: Transformation,
                               k: Transformation, eps, convention: str = STANDARD) -> Certificate:
    eps = Fraction(eps)
    ident = Transformation.identity(h.domain_size)
    fg = compose(f, g, convention)
    gf = compose(g, f, convention)
    return Certificate(
        h, f, g, k, eps, convention,
        d_h_id=hamming(h, ident),
        d_h_fg=hamming(h, fg),
        d_fg_id=hamming(fg, ident),
        d_gf_id=hamming(gf, ident),
        d_k_gf=hamming(k, gf),
        d_k_h=hamming(k, h),
    )


RELAXED, FULL = "relaxed", "full"
_LIMITS = {RELAXED: 3, FULL: 2}


@dataclass(frozen=True)
class EpsilonStar:
    n: int
    mode: str
    value: Fraction
    witness: dict  # element label -> Transformation
    nodes: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "mode": self.mode,
            "epsilon_star": fraction_str(self.value),
            "at_least_one_fifth": self.value >= THRESHOLD,
            "witness": {k: v.to_json() for k, v in self.witness.items()},
            "nodes": self.nodes,
        }


def bicyclic_scope(mode: str):
    """The constraint system scored by :func:`epsilon_star_bicyclic`.

    relaxed: domain {1, p, q, qp}, only products landing back in it.
    full: domain K + K^2 = {1, p, q, pp, qp, qq, qpp, qqp}, every product of K.
    """
    b = Bicyclic()
    k = [b.parse(w) for w in ("1", "p", "q", "qp")]
    if mode == RELAXED:
        return b, ConstraintSystem.build(b, k, domain=k)
    if mode == FULL:
        return b, ConstraintSystem.build(b, k)
    raise ValueError(f"mode must be {RELAXED!r} or {FULL!r}")


def epsilon_star_bicyclic(n: int, mode: str = RELAXED, convention: str = STANDARD) -> EpsilonStar:
    """Least eps for which Map({0..n-1}) carries a (K, 1-eps)-injective (K, eps)-morphism
    of the bicyclic monoid, K = {1, p, q, qp}, by exhaustive search."""
    if mode not in _LIMITS:
        raise ValueError(f"mode must be {RELAXED!r} or {FULL!r}")
    if not 1 <= n <= _LIMITS[mode]:
        raise BudgetError(f"{mode} mode supports 1 <= n <= {_LIMITS[mode]}")
    _, system = bicyclic_scope(mode)
    count, witness, nodes = minimize_objective(system, n, convention, budget=10**9)
    maps = map_tables(n, convention).maps
    return EpsilonStar(n, mode, Fraction(count, n),
                       {e.label: maps[i] for e, i in zip(system.domain, witness)}, nodes)
