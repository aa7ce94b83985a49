"""Exact-arithmetic tools for planar integral point sets."""

from .exact import (
    Point,
    PointSet,
    PositionClass,
    classify_position,
    collinear,
    concyclic,
    dist_sq,
    extremal_distances,
    integral_distance,
    is_perfect_square,
    squarefree_decompose,
    validate,
)
from .enumeration import candidate_points, canonicalize
from .search import find_all_sets, find_sets, minimal_diameter
from .constructions import circular, facher
from .bounds import bound_table, min_height_check, replay_theorem_proof, theorem_bound_holds

__version__ = "0.1.0"
