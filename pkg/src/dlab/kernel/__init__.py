"""Exact rational polyhedral kernel: LP, vertex/facet enumeration, hulls."""

from .polytope import (
    HPolytope,
    Ineq,
    LPOutcome,
    ScaleLimitError,
    UnboundedError,
    Vector,
    box,
    canonical,
    canonical_empty,
    cartesian_product,
    convex_hull,
    coordinate_bounds,
    disjunctive_hull,
    dot,
    empty_ineq,
    enumerate_vertices,
    integer_box,
    intersect,
    intersect_all,
    is_empty,
    is_integral,
    is_valid,
    lp_max,
    remove_redundant,
    same_set,
    solve_lp,
    trivial_ineq,
    vec,
)
from .simplex import simplex

__all__ = [
    "HPolytope", "Ineq", "LPOutcome", "ScaleLimitError", "UnboundedError", "Vector",
    "box", "canonical", "canonical_empty", "cartesian_product", "convex_hull",
    "coordinate_bounds", "disjunctive_hull", "dot", "empty_ineq", "enumerate_vertices",
    "integer_box", "intersect", "intersect_all", "is_empty", "is_integral", "is_valid",
    "lp_max", "remove_redundant", "same_set", "simplex", "solve_lp", "trivial_ineq", "vec",
]
