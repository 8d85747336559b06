"""Upward straight-line drawings and vertical visibility representations.

An upward drawing is a straight-line drawing of a DAG in which every edge
points strictly up. The vertical VR counterpart draws every edge as a
vertical segment leaving the top of its tail's box and entering the bottom
of its head's box.
"""

from __future__ import annotations

from .geometry import Point
from .model import (
    DrawingError,
    FlatVisibilityRep,
    InternalError,
    StraightLineDrawing,
    TallBox,
    VisibilityRep,
    Box,
)
from .orthogonal import ortho_to_vr, poly_to_ortho
from .visibility import vr_to_straightline

__all__ = ["is_upward", "upward_to_vertical_vr", "vertical_vr_to_upward", "flatten"]


def is_upward(d: StraightLineDrawing) -> bool:
    return all(d.pos[u].y < d.pos[v].y for u, v in d.graph.edges)


def upward_to_vertical_vr(ud: StraightLineDrawing, normalize_output: bool = True) -> VisibilityRep:
    """Vertical VR with the same rows as ``ud`` (every box is flat)."""
    if not isinstance(ud, StraightLineDrawing):
        raise DrawingError("straight-line drawing required")
    if not ud.graph.directed:
        raise DrawingError("upward drawings need a directed graph")
    if not is_upward(ud):
        bad = next((u, v) for u, v in ud.graph.edges if ud.pos[u].y >= ud.pos[v].y)
        raise DrawingError(f"edge {bad} does not point up")
    vr = ortho_to_vr(poly_to_ortho(ud, normalize_output=normalize_output), normalize_output=normalize_output)
    for (u, v), (p, q) in zip(vr.graph.edges, vr.routes):
        if not (p.x == q.x and p.y < q.y):
            raise InternalError(f"edge {(u, v)} is not vertical with its head above")
    meta = dict(ud.meta)
    meta["upward"] = True
    return VisibilityRep(
        vr.graph,
        tuple(TallBox(b.y, b.y, b.xl, b.xr) for b in vr.boxes),
        vr.routes,
        meta,
    )


def flatten(vr: VisibilityRep) -> FlatVisibilityRep:
    """Collapse every box onto its bottom row, stretching edges that left
    from its top down to that row."""
    if not isinstance(vr, VisibilityRep):
        raise DrawingError("visibility representation required")
    routes = []
    for (u, v), (p, q) in zip(vr.graph.edges, vr.routes):
        if p.y == q.y:
            raise DrawingError(f"edge {(u, v)} is horizontal")
        if p.x != q.x:
            raise DrawingError(f"edge {(u, v)} is not vertical")
        routes.append((Point(p.x, vr.boxes[u].y0), Point(q.x, vr.boxes[v].y0)))
    boxes = tuple(Box(b.y0, b.xl, b.xr) for b in vr.boxes)
    return FlatVisibilityRep(vr.graph, boxes, tuple(routes), dict(vr.meta))


def vertical_vr_to_upward(vr: VisibilityRep, verify: bool = True,
                          normalize_output: bool = True) -> StraightLineDrawing:
    """Upward straight-line drawing from a vertical VR.

    Each vertex lands on the bottom row of its box, so the height never
    grows and stays the same when the boxes are already flat.
    """
    if not vr.graph.directed:
        raise DrawingError("upward drawings need a directed graph")
    for (u, v), (p, q) in zip(vr.graph.edges, vr.routes):
        if p.y == q.y:
            raise DrawingError(f"edge {(u, v)} is horizontal")
        if not p.y < q.y:
            raise DrawingError(f"edge {(u, v)} does not point up")
    sl = vr_to_straightline(flatten(vr), verify=verify, normalize_output=normalize_output)
    meta = dict(sl.meta)
    meta["upward"] = True
    out = StraightLineDrawing(sl.graph, sl.pos, meta)
    if not is_upward(out):
        raise InternalError("result is not upward")
    return out
