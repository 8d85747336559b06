"""Height-preserving transformations between planar grid drawings.

Straight-line, poly-line, flat orthogonal drawings and flat visibility
representations are converted into each other while keeping every vertex
in its row and every row in its left-to-right order. All coordinates are
exact (``int`` or ``fractions.Fraction``).
"""

from .generators import (
    GenConfig,
    gen_exponential_family,
    gen_random_flat_ortho,
    gen_random_flat_vr,
    gen_random_polyline,
    gen_random_straightline,
    gen_random_upward,
)
from .geometry import IntersectionKind, Point, Segment, segments_intersect
from .io import load, loads, dumps, save
from .model import (
    Box,
    DrawingError,
    FlatOrthogonalDrawing,
    FlatVisibilityRep,
    Graph,
    InternalError,
    Metrics,
    PolylineDrawing,
    StraightLineDrawing,
    TallBox,
    ValidationError,
    VisibilityRep,
    count_bends,
    metrics,
    normalize,
)
from .orthogonal import (
    channel_drawing,
    find_zigzags,
    ortho_to_vr,
    poly_to_ortho,
    remove_redundant_columns,
    remove_zigzag,
)
from .upward import upward_to_vertical_vr, vertical_vr_to_upward
from .validation import check_drawing, check_planar, check_y_monotone, same_rows_and_orders, validate
from .visibility import ortho_to_polyline, vr_to_straightline, width_bound_table

__version__ = "0.1.0"

__all__ = [
    "GenConfig",
    "gen_random_straightline",
    "gen_random_polyline",
    "gen_random_upward",
    "gen_random_flat_ortho",
    "gen_random_flat_vr",
    "gen_exponential_family",
    "IntersectionKind",
    "Point",
    "Segment",
    "segments_intersect",
    "load",
    "loads",
    "dumps",
    "save",
    "Box",
    "TallBox",
    "Graph",
    "StraightLineDrawing",
    "PolylineDrawing",
    "FlatOrthogonalDrawing",
    "FlatVisibilityRep",
    "VisibilityRep",
    "Metrics",
    "metrics",
    "count_bends",
    "normalize",
    "DrawingError",
    "ValidationError",
    "InternalError",
    "poly_to_ortho",
    "channel_drawing",
    "ortho_to_vr",
    "find_zigzags",
    "remove_zigzag",
    "remove_redundant_columns",
    "vr_to_straightline",
    "ortho_to_polyline",
    "width_bound_table",
    "upward_to_vertical_vr",
    "vertical_vr_to_upward",
    "validate",
    "check_planar",
    "check_y_monotone",
    "check_drawing",
    "same_rows_and_orders",
]
