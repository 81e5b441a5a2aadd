"""Generic closed curves in the plane as combinatorial maps.

Defect (two independent formulas), homotopy and electrical moves, flat torus
knots and grids, reductions with lower bounds, and the Casson invariant of
random knot diagrams.
"""

from .casson import KnotDiagram, casson_c2, expected_c2_exhaustive, expected_c2_monte_carlo
from .curvemap import (
    AlexanderNumbering,
    CmapParseError,
    CurveError,
    CurveMap,
    DartRef,
    NotUnicursalError,
    SignedGaussCode,
    ValidationError,
    alexander_numbering,
    canonical_form,
    dual_diameter,
    dump_cmap,
    gauss_code,
    interleaved,
    load_cmap,
    subloop_winding,
    subloop_windings,
)
from .defect import DefectReport, defect_polyak, defect_report, defect_winding
from .generators import (
    connected_sum,
    cycle_graph,
    cylindrical_grid,
    random_curve,
    rectangular_grid,
    small_curves,
    torus_knot,
)
from .kernels import BACKEND
from .moves import (
    InvalidSite,
    MoveSite,
    MoveTrace,
    apply_medial_move,
    apply_move,
    enumerate_medial_moves,
    enumerate_moves,
    predict_delta,
    smooth,
    smoothing,
)
from .planegraph import (
    ElectricalMoveSite,
    PlaneGraph,
    apply_electrical,
    dual,
    dump_plane_graph,
    enumerate_electrical,
    load_plane_graph,
    medial,
)
from .reduction import BoundsReport, bounds_report, min_moves_search, reduce_curve, reduce_graph

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AlexanderNumbering",
    "BoundsReport",
    "CmapParseError",
    "CurveError",
    "CurveMap",
    "DartRef",
    "DefectReport",
    "ElectricalMoveSite",
    "InvalidSite",
    "KnotDiagram",
    "MoveSite",
    "MoveTrace",
    "NotUnicursalError",
    "PlaneGraph",
    "SignedGaussCode",
    "ValidationError",
    "alexander_numbering",
    "apply_electrical",
    "apply_medial_move",
    "apply_move",
    "bounds_report",
    "canonical_form",
    "casson_c2",
    "connected_sum",
    "cycle_graph",
    "cylindrical_grid",
    "defect_polyak",
    "defect_report",
    "defect_winding",
    "dual",
    "dual_diameter",
    "dump_cmap",
    "dump_plane_graph",
    "enumerate_electrical",
    "enumerate_medial_moves",
    "enumerate_moves",
    "expected_c2_exhaustive",
    "expected_c2_monte_carlo",
    "gauss_code",
    "interleaved",
    "load_cmap",
    "load_plane_graph",
    "medial",
    "min_moves_search",
    "predict_delta",
    "random_curve",
    "small_curves",
    "rectangular_grid",
    "reduce_curve",
    "reduce_graph",
    "smooth",
    "smoothing",
    "subloop_winding",
    "subloop_windings",
    "torus_knot",
]
