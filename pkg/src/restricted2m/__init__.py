"""Maximum-weight restricted 2-matchings in subcubic graphs.

Triangle-free, square-free and C4-free 2-matchings are found by replacing
problematic short cycles with half-edge gadgets, solving one exact
maximum-weight (l,u)-matching, then lifting and cleaning up the result.
"""

from ._accel import BACKEND
from .cycles import (
    Classification,
    DoubleTriangle,
    DoubleTriangleProfile,
    NotVertexInduced,
    ShortCycle,
    classify,
    double_triangle_profile,
    enumerate_short_cycles,
    verify_vertex_induced,
)
from .gadgets import AuxiliaryInstance, OverlappingGadget, build_auxiliary, dump_auxiliary, erase_gadgets
from .generate import generate, k4_graph
from .graph import (
    DegreeExceeded,
    EdgeSet,
    GraphError,
    LoopEdge,
    NegativeWeight,
    ParallelEdge,
    Variant,
    WeightedGraph,
    forbidden_cycles,
    is_restricted_2matching,
    set_weight,
    validate_input,
)
from .io import format_matching, parse_graph, parse_matching, read_graph
from .lu_solver import (
    CapacitatedInstance,
    Infeasible,
    InstanceTooLarge,
    brute_force_lu,
    check_feasibility,
    max_weight_lu_matching,
)
from .oracle import brute_force_solve, iter_restricted_2matchings
from .reconstruct import CleanupDiverged, LiftReport, MalformedMatching, NotRestricted, cleanup, lift_raw, project, solve

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AuxiliaryInstance",
    "CapacitatedInstance",
    "Classification",
    "CleanupDiverged",
    "DegreeExceeded",
    "DoubleTriangle",
    "DoubleTriangleProfile",
    "EdgeSet",
    "GraphError",
    "Infeasible",
    "InstanceTooLarge",
    "LiftReport",
    "LoopEdge",
    "MalformedMatching",
    "NegativeWeight",
    "NotRestricted",
    "NotVertexInduced",
    "OverlappingGadget",
    "ParallelEdge",
    "ShortCycle",
    "Variant",
    "WeightedGraph",
    "brute_force_lu",
    "brute_force_solve",
    "build_auxiliary",
    "check_feasibility",
    "classify",
    "cleanup",
    "double_triangle_profile",
    "dump_auxiliary",
    "enumerate_short_cycles",
    "erase_gadgets",
    "forbidden_cycles",
    "format_matching",
    "generate",
    "is_restricted_2matching",
    "iter_restricted_2matchings",
    "k4_graph",
    "lift_raw",
    "max_weight_lu_matching",
    "parse_graph",
    "parse_matching",
    "project",
    "read_graph",
    "set_weight",
    "solve",
    "validate_input",
    "verify_vertex_induced",
]
