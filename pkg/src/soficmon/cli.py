"""Command-line front end.

Exit status: 0 on success or a passed check, 1 on a failed check, 2 on usage
or input errors.  Fractions are always written "a/b".
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize as ser
from .approx import (
    ApproxMap,
    adjoin_identity_approx,
    adjoin_identity_handle,
    amplify_approx,
    defect_report,
    graph_to_morphism,
    morphism_to_graph,
    product_approx,
)
from .bicyclic import THRESHOLD, bicyclic_chain_certificate, epsilon_star_bicyclic
from .errors import PreconditionError, SoficError, ValidationError
from .graphs import vertex_ball
from .monoids import (
    FiniteSemigroup,
    MonoidHandle,
    elements_ball,
    folner_interior,
    handle_from_spec,
    left_zero_semigroup,
    right_zero_semigroup,
)
from .search import FOUND, exhaustive_search
from .transform import CONVENTIONS, STANDARD, Transformation, fraction_str
from .weiss import (
    bicyclic_halving_check,
    cayley_ball_graph,
    cycle_graph,
    fan_graph,
    good_vertex_set,
    naturals_fan_graph,
    path_graph,
    schreier_graph,
    weiss_check,
)

_FRACTION = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


class Failed(Exception):
    """A check ran to completion and did not pass."""


def fraction(text: str) -> Fraction:
    m = _FRACTION.match(text)
    if not m or (m.group(2) is not None and int(m.group(2)) == 0):
        raise argparse.ArgumentTypeError(f"expected an exact fraction a/b, got {text!r}")
    return Fraction(int(m.group(1)), int(m.group(2) or 1))


def nonneg_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def positive_int(text: str) -> int:
    v = nonneg_int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def load_monoid(spec: str) -> MonoidHandle:
    if Path(spec).is_file():
        return handle_from_spec(ser.load_json(spec))
    return handle_from_spec(spec)


def load_graph(path: str):
    return ser.graph_from_json(ser.load_json(path))


def load_elements(h: MonoidHandle, spec: str):
    """A JSON file of labels, "ball:R", "all" (finite monoids) or comma-separated labels."""
    if Path(spec).is_file():
        return ser.elements_from_json(h, ser.load_json(spec))
    if spec.startswith("ball:"):
        return elements_ball(h, nonneg_int(spec[5:]))
    if spec == "all":
        if not hasattr(h, "all_elements"):
            raise ValidationError("'all' needs a finite monoid")
        return h.all_elements()
    return [h.parse(x.strip()) for x in spec.split(",")]


def load_approx(path: str, monoid: str | None):
    doc = ser.load_json(path)
    if monoid is not None:
        h = load_monoid(monoid)
    elif isinstance(doc, dict) and "monoid" in doc:
        h = handle_from_spec(doc["monoid"])
    else:
        raise ValidationError(f"{path} does not name its monoid; pass --monoid")
    return ApproxMap.from_json(doc, h)


def load_semigroup(spec: str) -> FiniteSemigroup:
    if Path(spec).is_file():
        doc = ser.load_json(spec)
        return FiniteSemigroup(doc["table"], doc.get("names"))
    if spec == "idempotent":
        return FiniteSemigroup([[0]], ["a"])
    for prefix, build in (("left-zero:", left_zero_semigroup), ("right-zero:", right_zero_semigroup)):
        if spec.startswith(prefix):
            return build(positive_int(spec[len(prefix):]))
    raise ValidationError(f"unknown semigroup {spec!r}; use a file, idempotent, left-zero:K or right-zero:K")


# ---------------------------------------------------------------------------
# output


def _text(doc, indent: str = "") -> str:
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, dict):
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            elif isinstance(v, list):
                lines.append(f"{indent}{k}: {' '.join(map(_scalar, v))}")
            else:
                lines.append(f"{indent}{k}: {_scalar(v)}")
    else:
        lines.append(indent + _scalar(doc))
    return "\n".join(l for l in lines if l)


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ",".join(map(_scalar, v)) + "]"
    if v is None:
        return "-"
    return str(v)


def emit(args, doc, graph=None, center=None):
    if args.format == "dot":
        if graph is None:
            raise ValidationError("this command has no graph to draw; use --format json or text")
        sys.stdout.write(ser.to_dot(graph, center))
    elif args.format == "json":
        sys.stdout.write(ser.dumps(doc))
    else:
        sys.stdout.write(_text(doc) + "\n")


def check(ok: bool):
    if not ok:
        raise Failed


# ---------------------------------------------------------------------------
# subcommands


def cmd_ball(args):
    if args.graph:
        if args.vertex is None:
            raise ValidationError("--graph needs --vertex")
        b = vertex_ball(load_graph(args.graph), args.vertex, args.r)
        emit(args, ser.ball_to_json(b), b.graph, b.center)
        return
    h = load_monoid(args.monoid)
    ball = elements_ball(h, args.r, args.budget)
    doc = {"monoid": h.kind, "radius": args.r, "size": len(ball), "elements": [e.label for e in ball]}
    pb = cayley_ball_graph(h, args.r, args.budget) if args.format == "dot" else None
    emit(args, doc, pb.graph if pb else None, pb.center if pb else None)


def cmd_cayley(args):
    pb = cayley_ball_graph(load_monoid(args.monoid), args.r, args.budget)
    emit(args, ser.ball_to_json(pb), pb.graph, pb.center)


def cmd_gen(args):
    fam = args.family
    if fam == "cayley":
        if args.monoid is None:
            raise ValidationError("gen cayley needs --monoid")
        pb = cayley_ball_graph(load_monoid(args.monoid), args.r, args.budget)
        emit(args, ser.ball_to_json(pb), pb.graph, pb.center)
        return
    if args.size is None:
        raise ValidationError(f"gen {fam} needs --size")
    if fam == "fan":
        g = fan_graph(args.size)
    elif fam == "schreier":
        g = schreier_graph(args.size)
    elif fam == "cycle":
        g = cycle_graph(args.size)
    elif fam == "path":
        g = path_graph(args.size)
    else:
        g = naturals_fan_graph(args.size, args.r)
    emit(args, ser.graph_to_json(g), g)


def cmd_weiss(args):
    report = weiss_check(load_graph(args.graph), load_monoid(args.monoid), args.r, args.delta, jobs=args.jobs)
    emit(args, report.to_json())
    check(report.passed)


def cmd_good_vertices(args):
    g = load_graph(args.graph)
    good = good_vertex_set(g, load_monoid(args.monoid), args.r, jobs=args.jobs)
    emit(args, {"r": args.r, "vertex_count": len(g.vertices), "good_count": len(good), "good": good})


def cmd_bridge_g2m(args):
    h = load_monoid(args.monoid)
    bridge = graph_to_morphism(load_graph(args.graph), h, load_elements(h, args.k), args.epsilon, jobs=args.jobs)
    emit(args, bridge.to_json())
    check(bridge.verified)


def cmd_bridge_m2g(args):
    phi = load_approx(args.approx, args.monoid)
    g = morphism_to_graph(phi)
    emit(args, ser.graph_to_json(g), g)


def _report_doc(phi, ks, eps, alpha):
    rep = defect_report(phi, ks)
    doc = rep.to_json()
    doc["epsilon"] = fraction_str(eps)
    doc["alpha"] = fraction_str(alpha)
    doc["morphism"] = rep.is_morphism(eps)
    doc["injective"] = rep.is_injective(alpha)
    doc["pass"] = doc["morphism"] and doc["injective"]
    return doc


def cmd_verify(args):
    phi = load_approx(args.approx, args.monoid)
    alpha = args.alpha if args.alpha is not None else 1 - args.epsilon
    doc = _report_doc(phi, load_elements(phi.handle, args.k), args.epsilon, alpha)
    emit(args, doc)
    check(doc["pass"])


def cmd_amplify(args):
    phi = amplify_approx(load_approx(args.approx, args.monoid), args.power, args.budget)
    emit(args, phi.to_json())


def cmd_product(args):
    phi = product_approx(load_approx(args.approx, args.monoid), load_approx(args.approx2, args.monoid2),
                         args.budget)
    emit(args, phi.to_json())


def cmd_adjoin_id(args):
    s = load_semigroup(args.semigroup)
    h = adjoin_identity_handle(s)
    ks = load_elements(h, args.k) if args.k else None
    res = adjoin_identity_approx(s, args.epsilon, ks, handle=h)
    doc = {
        "epsilon": fraction_str(Fraction(args.epsilon)),
        "y_size": res.y_size,
        "z_size": res.z_size,
        "x_size": res.x_size,
        "report": res.report.to_json(),
        "approx": res.approx.to_json(),
    }
    emit(args, doc)


def cmd_certify_bicyclic(args):
    doc = ser.load_json(args.maps)
    try:
        maps = {k: Transformation.from_json(doc[k]) for k in ("h", "f", "g", "k")}
    except (KeyError, TypeError):
        raise ValidationError('the maps file needs "h", "f", "g" and "k" arrays') from None
    cert = bicyclic_chain_certificate(maps["h"], maps["f"], maps["g"], maps["k"], args.epsilon, args.convention)
    emit(args, cert.to_json())
    check(cert.valid)


def cmd_epsilon_star(args):
    res = epsilon_star_bicyclic(args.n, args.mode, args.convention)
    emit(args, res.to_json())
    check(res.value >= THRESHOLD)


def cmd_search(args):
    h = load_monoid(args.monoid)
    res = exhaustive_search(h, load_elements(h, args.k), args.epsilon, args.n, alpha=args.alpha,
                            convention=args.convention, budget=args.budget,
                            randomized=args.randomized, seed=args.seed)
    emit(args, res.to_json())
    check(res.status == FOUND)


def cmd_halving_check(args):
    report = bicyclic_halving_check(load_graph(args.graph), args.r, jobs=args.jobs)
    emit(args, report.to_json())
    check(report.passed)


def cmd_folner(args):
    h = load_monoid(args.monoid)
    omega = load_elements(h, args.omega)
    interior = folner_interior(h, omega, load_elements(h, args.k))
    size = len(set(omega))
    doc = {"omega_size": size, "interior_size": len(interior), "interior": [e.label for e in interior],
           "ratio": fraction_str(Fraction(len(interior), size))}
    if args.delta is not None:
        doc["delta"] = fraction_str(args.delta)
        doc["pass"] = len(interior) >= (1 - args.delta) * size
    emit(args, doc)
    if args.delta is not None:
        check(doc["pass"])


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "dot", "text"], default="text")
    common.add_argument("--jobs", type=positive_int, default=1)
    common.add_argument("--budget", type=positive_int, default=10**6)
    common.add_argument("--seed", type=nonneg_int)

    p = argparse.ArgumentParser(prog="soficmon", description="Finite approximations of monoids.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("ball", cmd_ball, "elements of B_r(1_M), or a vertex ball of a graph")
    sp.add_argument("--monoid", default="naturals")
    sp.add_argument("--r", type=nonneg_int, required=True)
    sp.add_argument("--graph")
    sp.add_argument("--vertex")

    sp = add("cayley", cmd_cayley, "Cayley ball graph pointed at the identity")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--r", type=nonneg_int, required=True)

    sp = add("gen", cmd_gen, "example graph families")
    sp.add_argument("--family", choices=["fan", "schreier", "cycle", "path", "naturals-fan", "cayley"], required=True)
    sp.add_argument("--size", type=positive_int)
    sp.add_argument("--r", type=nonneg_int, default=1)
    sp.add_argument("--monoid")

    for name, func, help_text in (("weiss", cmd_weiss, "check |V(r)| >= (1-delta)|V|"),
                                  ("good-vertices", cmd_good_vertices, "compute V(r)")):
        sp = add(name, func, help_text)
        sp.add_argument("--graph", required=True)
        sp.add_argument("--monoid", required=True)
        sp.add_argument("--r", type=nonneg_int, required=True)
        if name == "weiss":
            sp.add_argument("--delta", type=fraction, required=True)

    sp = add("bridge-g2m", cmd_bridge_g2m, "approximation read off a Weiss graph")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--epsilon", type=fraction, required=True)

    sp = add("bridge-m2g", cmd_bridge_m2g, "labeled graph of a diagrammatic approximation")
    sp.add_argument("--approx", required=True)
    sp.add_argument("--monoid")

    sp = add("verify", cmd_verify, "defect report of an approximation")
    sp.add_argument("--approx", required=True)
    sp.add_argument("--monoid")
    sp.add_argument("--k", required=True)
    sp.add_argument("--epsilon", type=fraction, required=True)
    sp.add_argument("--alpha", type=fraction)

    sp = add("amplify", cmd_amplify, "diagonal amplification")
    sp.add_argument("--approx", required=True)
    sp.add_argument("--monoid")
    sp.add_argument("--power", type=positive_int, required=True)

    sp = add("product", cmd_product, "product of two approximations")
    sp.add_argument("--approx", required=True)
    sp.add_argument("--approx2", required=True)
    sp.add_argument("--monoid")
    sp.add_argument("--monoid2")

    sp = add("adjoin-id", cmd_adjoin_id, "approximation of S with an identity adjoined")
    sp.add_argument("--semigroup", required=True)
    sp.add_argument("--epsilon", type=fraction, required=True)
    sp.add_argument("--k")

    sp = add("certify-bicyclic", cmd_certify_bicyclic, "chain certificate for (h, f, g, k)")
    sp.add_argument("--maps", required=True)
    sp.add_argument("--epsilon", type=fraction, required=True)
    sp.add_argument("--convention", choices=CONVENTIONS, default=STANDARD)

    sp = add("epsilon-star", cmd_epsilon_star, "exhaustive lower bound for the bicyclic monoid")
    sp.add_argument("--n", type=positive_int, required=True)
    sp.add_argument("--mode", choices=["relaxed", "full"], default="relaxed")
    sp.add_argument("--convention", choices=CONVENTIONS, default=STANDARD)

    sp = add("search", cmd_search, "search Map(X) for an approximation")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--epsilon", type=fraction, required=True)
    sp.add_argument("--alpha", type=fraction)
    sp.add_argument("--n", type=positive_int, required=True)
    sp.add_argument("--convention", choices=CONVENTIONS, default=STANDARD)
    sp.add_argument("--randomized", action="store_true")

    sp = add("halving-check", cmd_halving_check, "bicyclic |V(r)| <= |V|/2 obstruction")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--r", type=nonneg_int, default=2)

    sp = add("folner", cmd_folner, "interior {s in Omega : sK in Omega}")
    sp.add_argument("--monoid", required=True)
    sp.add_argument("--omega", required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--delta", type=fraction)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except Failed:
        return 1
    except PreconditionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except (SoficError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
