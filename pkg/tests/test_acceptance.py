"""Acceptance suite: one check per criterion, each with a pinned wall-clock limit.

Every check prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.  Run directly with ``python tests/test_acceptance.py``
to get the lines without pytest.
"""

import random
import sys
import time
from fractions import Fraction
from itertools import product
from math import prod

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import (
    compose_std,
    naive_bicyclic_ball,
    naive_epsilon_star,
    naive_hamming,
    naive_product_distance,
    rewrite_pq,
)
from soficmon.approx import (
    ApproxMap,
    adjoin_identity_approx,
    amplify_approx,
    defect_report,
    epsilon_for_delta,
    exact_representation,
    graph_to_morphism,
    morphism_to_graph,
    weiss_parameters,
)
from soficmon.bicyclic import THRESHOLD, epsilon_star_bicyclic
from soficmon.graphs import ball_vertices
from soficmon.monoids import (
    Bicyclic,
    FiniteSemigroup,
    Naturals,
    bicyclic_rewriting,
    cyclic_group_handle,
    elements_ball,
    idempotent_monoid,
    klein_four_handle,
    left_zero_semigroup,
    map2_monoid,
    right_zero_semigroup,
)
from soficmon.search import NONE, exhaustive_search
from soficmon.transform import (
    DIAGRAMMATIC,
    STANDARD,
    Transformation,
    all_transformations,
    compose,
    fixed_point_count,
    hamming,
    product_combine,
)
from soficmon.weiss import (
    bicyclic_halving_check,
    cayley_ball_graph,
    cycle_graph,
    fan_graph,
    good_vertex_set,
    path_graph,
    plant_bicyclic_balls,
    schreier_graph,
    weiss_check,
)

T = Transformation
NAT = Naturals()
B = Bicyclic()

# wall-clock limits in seconds
LIMITS = {1: 5, 2: 5, 3: 10, 4: 120, 5: 30, 6: 10, 7: 10, 8: 10, 9: 30, 10: 10}


def random_map(rng, n):
    return T([rng.randrange(n) for _ in range(n)])


def require(cond, message):
    if not cond:
        raise AssertionError(message)


# criteria; each returns a short summary or raises AssertionError


def hamming_product_formula():
    rng = random.Random(1)
    for _ in range(1000):
        sizes = [rng.randint(1, 6) for _ in range(rng.randint(1, 4))]
        fs = [random_map(rng, n) for n in sizes]
        gs = [random_map(rng, n) for n in sizes]
        got = hamming(product_combine(fs), product_combine(gs))
        formula = 1 - prod((1 - hamming(f, g) for f, g in zip(fs, gs)), start=Fraction(1))
        require(got == formula, f"sizes {sizes}: {got} != {formula}")
        oracle = naive_product_distance([f.images for f in fs], [g.images for g in gs])
        require(got == oracle, f"sizes {sizes}: {got} != pointwise count {oracle}")
    return "1000 sequences, exact"


def swap_lemma():
    def check(f, g, conv):
        n = f.domain_size
        ident = T.identity(n)
        fg, gf = compose(f, g, conv), compose(g, f, conv)
        require(hamming(fg, ident) == hamming(gf, ident), f"{f} {g} {conv}")
        require(fixed_point_count(fg) == fixed_point_count(gf), f"fixed points {f} {g} {conv}")

    maps = all_transformations(3)
    for f, g in product(maps, repeat=2):
        for conv in (STANDARD, DIAGRAMMATIC):
            check(f, g, conv)
    rng = random.Random(2)
    for _ in range(10**4):
        n = rng.randint(1, 12)
        check(random_map(rng, n), random_map(rng, n), rng.choice((STANDARD, DIAGRAMMATIC)))
    return f"{len(maps) ** 2} exhaustive pairs at n=3, 10000 random pairs"


def amplification_law():
    rng = random.Random(3)
    handles = [cyclic_group_handle(3), klein_four_handle(), idempotent_monoid(), map2_monoid()]
    checked = 0
    for _ in range(200):
        h = rng.choice(handles)
        n = rng.randint(1, 4)
        k = h.all_elements()
        phi = ApproxMap(h, n, {e: random_map(rng, n) for e in k}, rng.choice((STANDARD, DIAGRAMMATIC)))
        power = rng.randint(1, 3)
        base, amp = defect_report(phi, k), defect_report(amplify_approx(phi, power), k)

        def law(d):
            return 1 - (1 - d) ** power

        require(amp.identity_defect == law(base.identity_defect), "identity defect")
        for key, d in base.product_defects.items():
            require(amp.product_defects[key] == law(d), f"product defect {key}")
        for key, d in base.injectivity.items():
            require(amp.injectivity[key] == law(d), f"injectivity {key}")
        require(amp.morphism_defect == law(base.morphism_defect), "max defect")
        require(amp.min_injectivity == law(base.min_injectivity), "min injectivity")
        checked += 1 + len(base.product_defects) + len(base.injectivity)
    return f"200 maps, {checked} quantities"


def bicyclic_lower_bound():
    values = {}
    for n, mode in [(1, "relaxed"), (1, "full"), (2, "relaxed"), (2, "full"), (3, "relaxed")]:
        star = epsilon_star_bicyclic(n, mode).value
        oracle = naive_epsilon_star(n, mode)
        require(star == oracle, f"n={n} {mode}: {star} != brute force {oracle}")
        require(star >= THRESHOLD, f"n={n} {mode}: {star} < 1/5")
        values[(n, mode)] = star
    require(values[(1, "relaxed")] == 1, "n=1 must give 1")
    k = [B.parse(w) for w in ("1", "p", "q", "qp")]
    res = exhaustive_search(B, k, Fraction(1, 10), 2)
    require(res.status == NONE, f"search returned {res.status}")
    shown = ", ".join(f"n={n} {m}: {v}" for (n, m), v in values.items())
    return f"{shown}; search at n=2: none"


def weiss_family_numbers():
    idem = idempotent_monoid()
    for size in (3, 7, 12):
        g = fan_graph(size)
        for r in (1, 2, 3):
            got = len(good_vertex_set(g, idem, r))
            require(got == len(g.vertices) - 1, f"fan({size}) r={r}: {got}")
    m2 = map2_monoid()
    for n in (2, 3, 6):
        for r in (1, 2, 3):
            got = len(good_vertex_set(schreier_graph(n), m2, r))
            require(got >= 2**n - 2, f"schreier({n}) r={r}: {got}")
    for n in range(2, 13):
        for r in range(1, n):
            got = len(good_vertex_set(path_graph(n), NAT, r))
            require(got == n - r, f"path({n}) r={r}: {got}")
    for r in range(1, 5):
        for n in range(r + 2, r + 8):
            got = len(good_vertex_set(cycle_graph(n), NAT, r))
            require(got == n, f"cycle({n}) r={r}: {got}")
        # n = r+1 is the logged discrepancy: the ball wraps around, so nothing is good
        require(good_vertex_set(cycle_graph(r + 1), NAT, r) == [], f"cycle({r + 1}) r={r}")
    return "fan, schreier, path, cycle exact; cycle n=r+1 gives V(r) empty"


def good_points_defect_free(bridge):
    phi, h = bridge.approx, bridge.approx.handle
    index = {v: i for i, v in enumerate(bridge.vertex_order)}
    good = [index[v] for v in bridge.weiss.good]
    ks = [h.parse(label) for label in bridge.report.k]
    for x in good:
        require(phi(h.identity())(x) == x, f"phi(1) moves good point {x}")
        for a, b in product(ks, repeat=2):
            lhs = phi(h.multiply(a, b))(x)
            rhs = phi(b)(phi(a)(x))
            require(lhs == rhs, f"defect at good point {x} for ({a.label}, {b.label})")
    return len(good)


def direction_one_bridge():
    eps = Fraction(1, 4)
    k = elements_ball(NAT, 2)
    nat = graph_to_morphism(cycle_graph(10), NAT, k, eps)
    require(nat.verified, "naturals on C10 not verified")
    n_good = good_points_defect_free(nat)
    idem = idempotent_monoid()
    fan = graph_to_morphism(fan_graph(20), idem, idem.all_elements(), Fraction(1, 10))
    require(fan.verified, "fan not verified")
    f_good = good_points_defect_free(fan)
    return (f"naturals/C10 r={nat.r} defect {nat.report.morphism_defect} injectivity "
            f"{nat.report.min_injectivity} ({n_good} good); fan injectivity {fan.report.min_injectivity} "
            f"({f_good} good)")


def direction_two_bridge():
    parts = []
    for name, h in (("Z/5", cyclic_group_handle(5)), ("Z/2xZ/2", klein_four_handle())):
        phi = exact_representation(h, DIAGRAMMATIC)
        g = morphism_to_graph(phi)
        diameter = max(max(ball_vertices(g, v, len(g.vertices)).values()) for v in g.vertices)
        for r in range(diameter + 1):
            require(len(good_vertex_set(g, h, r)) == len(g.vertices), f"{name} r={r}")
            require(epsilon_for_delta(h, r, 0) == 0, f"{name} eps(0) at r={r}")
            k, eps = weiss_parameters(h, r, 0)
            require(defect_report(phi, k).certifies(eps), f"{name} exact map fails at r={r}")
            require(weiss_check(g, h, r, 0).passed, f"{name} delta=0 at r={r}")
        parts.append(f"{name} diameter {diameter}")
    return ", ".join(parts)


def adjoin_identity_bounds():
    semigroups = {
        "idempotent": FiniteSemigroup([[0]], ["a"]),
        "left-zero 2": left_zero_semigroup(2),
        "right-zero 3": right_zero_semigroup(3),
    }
    worst = Fraction(0)
    for name, s in semigroups.items():
        for eps in (Fraction(1, 2), Fraction(1, 4), Fraction(1, 10)):
            out = adjoin_identity_approx(s, eps)
            phi, h = out.approx, out.approx.handle
            require(phi.convention == STANDARD, "expected the standard convention")
            k = h.all_elements()
            # recount from the raw image lists
            img = {e: phi(e).images for e in k}
            n = phi.x_size
            defect = max(naive_hamming(img[h.multiply(a, b)], compose_std(img[a], img[b]))
                         for a, b in product(k, repeat=2))
            defect = max(defect, naive_hamming(img[h.identity()], tuple(range(n))))
            injectivity = min(naive_hamming(img[a], img[b]) for i, a in enumerate(k) for b in k[i + 1:])
            require(defect <= eps and injectivity >= 1 - eps, f"{name} eps={eps}: {defect}, {injectivity}")
            require(out.report.certifies(eps), f"{name} eps={eps}: report disagrees")
            worst = max(worst, defect / eps)
    return f"9 cases, worst defect/eps {worst}"


def halving_obstruction():
    g = cayley_ball_graph(B, 6).graph
    rep = bicyclic_halving_check(g, 2)
    require(rep.passed and 2 * len(rep.good) <= len(g.vertices), "Cayley ball")
    nonvacuous = 0
    for seed in range(50):
        rng = random.Random(seed)
        n = rng.randint(12, 40)
        rg = plant_bicyclic_balls(n, rng.randint(1, 2), rng)
        require(rg.is_deterministic() and len(rg.vertices) <= 40, f"seed {seed}: bad graph")
        rep = bicyclic_halving_check(rg, 2)
        require(rep.passed, f"seed {seed}: {rep}")
        nonvacuous += bool(rep.good)
    return f"Cayley ball ok, 50 random graphs ok ({nonvacuous} with good vertices)"


def normal_form_engine():
    rng = random.Random(10)
    rw = bicyclic_rewriting()
    for _ in range(10**4):
        u = "".join(rng.choice("pq") for _ in range(rng.randint(0, 12)))
        v = "".join(rng.choice("pq") for _ in range(rng.randint(0, 12)))
        closed = B.normalize(u) * B.normalize(v)
        expected = rewrite_pq(u + v) or "1"
        require(closed.label == expected, f"{u}*{v}: {closed.label} != {expected}")
        require(rw.multiply(rw.normalize(u), rw.normalize(v)).label == expected, f"rewriting {u}*{v}")
    for r in range(9):
        ball = elements_ball(B, r)
        require(len(ball) == (r + 1) * (r + 2) // 2, f"|B_{r}| = {len(ball)}")
        require({e.label for e in ball} == {w or "1" for w in naive_bicyclic_ball(r)}, f"B_{r} elements")
    return "10000 pairs, |B_r| for r <= 8"


CRITERIA = [
    (1, "Hamming product formula", hamming_product_formula),
    (2, "d(fg,Id) = d(gf,Id) and fixed points", swap_lemma),
    (3, "amplification law", amplification_law),
    (4, "bicyclic lower bound 1/5", bicyclic_lower_bound),
    (5, "Weiss family numbers", weiss_family_numbers),
    (6, "graph to morphism bridge", direction_one_bridge),
    (7, "morphism to graph bridge", direction_two_bridge),
    (8, "adjoin identity construction", adjoin_identity_bounds),
    (9, "bicyclic halving obstruction", halving_obstruction),
    (10, "bicyclic normal forms", normal_form_engine),
]


def evaluate(number, title, fn):
    limit = LIMITS[number]
    start = time.perf_counter()
    try:
        detail, ok = fn(), True
    except AssertionError as exc:
        detail, ok = f"failed: {exc}", False
    elapsed = time.perf_counter() - start
    within = elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    line = f"{status} criterion {number:>2} {title}: {detail} [{elapsed:.2f}s < {limit}s: {within}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok, within, detail, elapsed


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn):
    ok, within, detail, elapsed = evaluate(number, title, fn)
    assert ok, detail
    assert within, f"took {elapsed:.2f}s, limit {LIMITS[number]}s"


if __name__ == "__main__":
    results = [evaluate(*c) for c in CRITERIA]
    sys.exit(0 if all(ok and within for ok, within, _, _ in results) else 1)
