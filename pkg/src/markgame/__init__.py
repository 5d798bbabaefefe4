"""Vertex-edge marking game toolkit.

Alice marks vertices, Bob marks edges; Bob tries to surround an unmarked
vertex with marked edges.  This package bundles the game engine, lattice
window generators with their face colorings and angle markings, certified
strategies for both sides, an exact small-graph solver for the
vertex-edge coloring number, and a live play service.
"""

from .engine import (
    ALICE,
    BOB,
    GameState,
    MatchResult,
    Move,
    apply_move,
    legal_moves,
    new_game,
    play_match,
    round_score,
    vertex_score,
)
from .freepath import FreePath, bob_free_path, find_free_paths
from .graph import Face, GraphError, PlanarGraph, Vertex, build_graph, interior_vertices
from .lattices import (
    LatticeBundle,
    add_centers,
    gen_apollonian,
    gen_centered_square,
    gen_hexagonal,
    gen_square_octagon,
    gen_triangular,
    generate,
)
from .orientation import Orientation, orientation_bound
from .scheme import (
    MarkingScheme,
    ValidationReport,
    find_angle_marking,
    find_gray_cover,
    validate_theorem_conditions,
)
from .solver import SolveResult, bob_can_force, bounds_report, solve_colve
from .strategies import (
    Strategy,
    alice_angle,
    alice_extension,
    baseline_strategy,
    corresponding_triangle,
    marked_edge_rank,
    parse_strategy,
)

__version__ = "0.1.0"
