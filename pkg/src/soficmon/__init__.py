"""Computational tools for sofic monoids: finite approximations by transformation
monoids, Weiss-type graph conditions, and the bicyclic obstruction."""

from .approx import (
    ApproxMap,
    DefectReport,
    adjoin_identity_approx,
    amplify_approx,
    defect_report,
    epsilon_for_delta,
    exact_representation,
    graph_to_morphism,
    morphism_to_graph,
    normalize_identity,
    product_approx,
)
from .bicyclic import bicyclic_chain_certificate, epsilon_star_bicyclic
from .graphs import LabeledGraph, PointedBall, pointed_isomorphism, vertex_ball
from .monoids import (
    Bicyclic,
    Element,
    FiniteMonoid,
    FiniteMonoidHandle,
    FiniteSemigroup,
    FreeCommutativeMonoid,
    FreeMonoid,
    MonoidHandle,
    Naturals,
    RewritingMonoid,
    adjoin_identity,
    elements_ball,
    finite_from_table,
    folner_interior,
    full_map_monoid,
    is_left_cancellative,
    left_regular_embedding,
)
from .search import exhaustive_search
from .transform import (
    DIAGRAMMATIC,
    STANDARD,
    Transformation,
    compose,
    diagonal_amplify,
    fixed_point_count,
    hamming,
    product_combine,
)
from .weiss import (
    bicyclic_halving_check,
    cayley_ball_graph,
    cycle_graph,
    fan_graph,
    good_vertex_set,
    path_graph,
    schreier_graph,
    weiss_check,
)

__version__ = "0.1.0"
