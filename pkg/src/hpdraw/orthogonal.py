"""Orthogonal-side transformations.

* :func:`ortho_to_vr`: flat y-monotone orthogonal drawing to flat visibility
  representation (absorb side bends into boxes, then cut-and-shift every
  zig-zag away).
* :func:`poly_to_ortho`: poly-line drawing to flat orthogonal drawing via a
  layered drawing with pseudo-vertices and two-bend channel routing.
* :func:`remove_redundant_columns`: drop columns holding no vertical edge
  segment and no single-column box.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, replace
from fractions import Fraction

from .geometry import Point, Rational, line_row_intersection
from .model import (
    Box,
    DrawingError,
    FlatOrthogonalDrawing,
    FlatVisibilityRep,
    Graph,
    InternalError,
    PolylineDrawing,
    StraightLineDrawing,
    count_bends,
    normalize,
    simplify_path,
)
from .validation import check_y_monotone

__all__ = [
    "ZigZag",
    "LayeredDrawing",
    "expand_boxes",
    "find_zigzags",
    "remove_zigzag",
    "ortho_to_vr",
    "layered_drawing",
    "channel_drawing",
    "poly_to_ortho",
    "remove_redundant_columns",
]


@dataclass(frozen=True)
class ZigZag:
    """Vertical-horizontal-vertical run ``route[k-1..k+2]`` of one edge."""

    edge: int
    k: int
    row: int
    x_low: Rational  # column of the vertical part below ``row``
    x_up: Rational  # column of the vertical part above ``row``

    @property
    def shift(self) -> Rational:
        return abs(self.x_up - self.x_low)


def _simplified(od: FlatOrthogonalDrawing) -> FlatOrthogonalDrawing:
    return replace(od, routes=tuple(simplify_path(r) for r in od.routes))


def expand_boxes(od: FlatOrthogonalDrawing) -> FlatOrthogonalDrawing:
    """Widen each box over the first bend of a bent edge leaving it sideways."""
    if not check_y_monotone(od):
        raise DrawingError("expand_boxes needs a y-monotone drawing")
    od = _simplified(od)
    boxes = list(od.boxes)
    routes = []
    for (u, v), r in zip(od.graph.edges, od.routes):
        r = list(r)
        if len(r) > 2 and r[0].y == r[1].y:
            b = boxes[u]
            boxes[u] = Box(b.y, min(b.xl, r[1].x), max(b.xr, r[1].x))
            r.pop(0)
        if len(r) > 2 and r[-1].y == r[-2].y:
            b = boxes[v]
            boxes[v] = Box(b.y, min(b.xl, r[-2].x), max(b.xr, r[-2].x))
            r.pop()
        routes.append(tuple(r))
    return replace(od, boxes=tuple(boxes), routes=tuple(routes))


def find_zigzags(od: FlatOrthogonalDrawing) -> list[ZigZag]:
    return list(_zigzags(od.routes))


def _zigzags(routes):
    for e, r in enumerate(routes):
        for k in range(1, len(r) - 2):
            a, p, q, b = r[k - 1], r[k], r[k + 1], r[k + 2]
            if a.x == p.x and p.y == q.y and q.x == b.x and a.y != p.y and q.y != b.y and p.x != q.x:
                if (a.y < p.y) != (b.y > q.y):
                    continue
                low, up = (p.x, q.x) if a.y < p.y else (q.x, p.x)
                yield ZigZag(e, k, p.y, low, up)


def remove_zigzag(od: FlatOrthogonalDrawing, z: ZigZag) -> FlatOrthogonalDrawing:
    """Cut the drawing along the zig-zag (extended to infinity both ways) and
    slide the side holding the offset ray until the two vertical rays align.

    Horizontal elements crossing the cut (boxes included) stretch; nothing
    vertical is ever cut, so every y-coordinate is unchanged.
    """
    if z not in find_zigzags(od):
        raise DrawingError("not a zig-zag of this drawing")
    boxes, routes = _cut(od.boxes, od.routes, z)
    return replace(od, boxes=boxes, routes=routes)


def _cut(boxes, routes, z: ZigZag):
    y1, lo, up, delta = z.row, z.x_low, z.x_up, z.shift
    if up > lo:
        def moves(x, y):
            return x >= lo if y < y1 else x > up
    else:
        def moves(x, y):
            return x >= up if y > y1 else x > lo

    def shift(p: Point) -> Point:
        return Point(p.x + delta, p.y) if moves(p.x, p.y) else p

    new_boxes = tuple(
        Box(b.y, b.xl + delta if moves(b.xl, b.y) else b.xl, b.xr + delta if moves(b.xr, b.y) else b.xr)
        for b in boxes
    )
    new_routes = []
    for e, route in enumerate(routes):
        if e != z.edge:
            new_routes.append(tuple(shift(p) for p in route))
            continue
        merged = Point(max(lo, up), y1)
        new = [shift(p) for p in route[: z.k]] + [merged] + [shift(p) for p in route[z.k + 2:]]
        new_routes.append(simplify_path(new))
    return new_boxes, tuple(new_routes)


def ortho_to_vr(od: FlatOrthogonalDrawing, normalize_output: bool = True,
                on_step=None) -> FlatVisibilityRep:
    """Flat visibility representation with the same rows and row orders.

    ``on_step(before, after, zigzag)`` is called after every zig-zag removal.
    """
    if not isinstance(od, FlatOrthogonalDrawing):
        raise DrawingError("flat orthogonal drawing required")
    if not check_y_monotone(od):
        raise DrawingError("ortho_to_vr needs a y-monotone drawing")
    d = expand_boxes(od)
    boxes, routes = d.boxes, d.routes
    while True:
        z = next(_zigzags(routes), None)
        if z is None:
            break
        boxes, routes = _cut(boxes, routes, z)
        if on_step is not None:
            nd = replace(d, boxes=boxes, routes=routes)
            on_step(d, nd, z)
            d = nd
    d = replace(d, boxes=boxes, routes=routes)
    if count_bends(d):
        raise InternalError("bends left after zig-zag removal")
    vr = FlatVisibilityRep(d.graph, d.boxes, d.routes, dict(od.meta))
    return normalize(vr, rows=False) if normalize_output else vr


# -- poly-line -> flat orthogonal -------------------------------------------

@dataclass(frozen=True)
class LayeredDrawing:
    """Straight-line drawing whose edges are horizontal or span one row gap.

    Nodes ``0..n_original-1`` are the original vertices; the rest are
    pseudo-vertices (rational x allowed). ``chains[e]`` lists the nodes along
    original edge ``e``.
    """

    points: tuple[Point, ...]
    links: tuple[tuple[int, int], ...]
    chains: tuple[tuple[int, ...], ...]
    n_original: int

    def up_down(self) -> tuple[list[list[int]], list[list[int]]]:
        up = [[] for _ in self.points]
        down = [[] for _ in self.points]
        for a, b in self.links:
            ya, yb = self.points[a].y, self.points[b].y
            if yb > ya:
                up[a].append(b)
                down[b].append(a)
            elif yb < ya:
                down[a].append(b)
                up[b].append(a)
        return up, down

    def box_width(self, w: int) -> int:
        up, down = self.up_down()
        return max(1, len(up[w]), len(down[w]))


def layered_drawing(pl: PolylineDrawing) -> LayeredDrawing:
    """Insert pseudo-vertices at bends and wherever a segment crosses a row."""
    points = list(pl.pos)
    links, chains = [], []
    for (u, v), path in zip(pl.graph.edges, pl.paths()):
        chain = [u]
        for i, (p, q) in enumerate(zip(path, path[1:])):
            step = 1 if q.y > p.y else -1
            if p.y != q.y:
                for row in range(p.y + step, q.y, step):
                    points.append(Point(line_row_intersection(p, q, row), row))
                    chain.append(len(points) - 1)
            if i + 2 < len(path):
                points.append(q)
                chain.append(len(points) - 1)
        chain.append(v)
        links.extend(zip(chain, chain[1:]))
        chains.append(tuple(chain))
    return LayeredDrawing(tuple(points), tuple(links), tuple(chains), pl.graph.n)


def _channel_routes(ld: LayeredDrawing):
    """Boxes (rows scaled by S) and two-bend channel routes for every link."""
    pts = ld.points
    up, down = ld.up_down()
    rows: dict[int, list[int]] = {}
    for w, p in enumerate(pts):
        rows.setdefault(p.y, []).append(w)
    boxes: list[Box | None] = [None] * len(pts)
    for y, ws in rows.items():
        ws.sort(key=lambda w: pts[w].x)
        col = 0
        for w in ws:
            width = max(1, len(up[w]), len(down[w]))
            boxes[w] = Box(y, col, col + width - 1)
            col += width + 1
    # attachment column of link endpoint w towards neighbour t
    attach: dict[tuple[int, int], int] = {}
    for w in range(len(pts)):
        for nbrs in (up[w], down[w]):
            for i, t in enumerate(sorted(nbrs, key=lambda t: pts[t].x)):
                attach[(w, t)] = boxes[w].xl + i

    gaps: dict[int, list[tuple[int, int]]] = {}
    for a, b in ld.links:
        if pts[a].y != pts[b].y:
            lo, hi = (a, b) if pts[a].y < pts[b].y else (b, a)
            gaps.setdefault(pts[lo].y, []).append((lo, hi))
    tracks: dict[tuple[int, int], int] = {}
    S = 1
    for y, ls in gaps.items():
        ls.sort(key=lambda l: attach[(l[0], l[1])])
        right = [l for l in ls if attach[(l[1], l[0])] > attach[(l[0], l[1])]]
        left = [l for l in ls if attach[(l[1], l[0])] < attach[(l[0], l[1])]]
        for i, l in enumerate(right):
            tracks[l] = len(right) - i
        for i, l in enumerate(left):
            tracks[l] = i + 1
        S = max(S, len(right) + 1, len(left) + 1)

    sboxes = tuple(Box(b.y * S, b.xl, b.xr) for b in boxes)
    routes = []
    for a, b in ld.links:
        ya, yb = pts[a].y, pts[b].y
        if ya == yb:
            ba, bb = boxes[a], boxes[b]
            y = ya * S
            if ba.xl < bb.xl:
                routes.append((Point(ba.xr, y), Point(bb.xl, y)))
            else:
                routes.append((Point(ba.xl, y), Point(bb.xr, y)))
            continue
        lo, hi = (a, b) if ya < yb else (b, a)
        cl, ch = attach[(lo, hi)], attach[(hi, lo)]
        y0, y1 = pts[lo].y * S, pts[hi].y * S
        if cl == ch:
            path = (Point(cl, y0), Point(ch, y1))
        else:
            t = y0 + tracks[(lo, hi)]
            path = (Point(cl, y0), Point(cl, t), Point(ch, t), Point(ch, y1))
        routes.append(path if lo == a else tuple(reversed(path)))
    return sboxes, tuple(routes), S


def _channel(ld: LayeredDrawing):
    sboxes, routes, S = _channel_routes(ld)
    return FlatOrthogonalDrawing(Graph(len(ld.points), ld.links), sboxes, routes), S


def channel_drawing(pl: PolylineDrawing) -> FlatOrthogonalDrawing:
    """The layered drawing with every link routed in its channel, rows scaled
    apart so the tracks fit. Every bent link is a zig-zag; :func:`poly_to_ortho`
    removes them again.
    """
    if isinstance(pl, StraightLineDrawing):
        pl = PolylineDrawing.from_straightline(pl)
    return _channel(layered_drawing(pl))[0]


def poly_to_ortho(pl: PolylineDrawing, normalize_output: bool = True) -> FlatOrthogonalDrawing:
    """Flat orthogonal drawing with the same rows and row orders as ``pl``."""
    if isinstance(pl, StraightLineDrawing):
        pl = PolylineDrawing.from_straightline(pl)
    if not isinstance(pl, PolylineDrawing):
        raise DrawingError("poly-line drawing required")
    ld = layered_drawing(pl)
    channel, S = _channel(ld)
    vr = ortho_to_vr(channel, normalize_output=False)

    def unscale(p: Point) -> Point:
        if p.y % S:
            raise InternalError("a channel track survived zig-zag removal")
        return Point(p.x, p.y // S)

    segs = [tuple(unscale(p) for p in r) for r in vr.routes]
    out_routes = []
    link_index = 0
    for chain in ld.chains:
        path = []
        for _ in range(len(chain) - 1):
            path.extend(segs[link_index])
            link_index += 1
        out_routes.append(simplify_path(path))
    boxes = tuple(Box(b.y // S, b.xl, b.xr) for b in vr.boxes[: pl.graph.n])
    out = FlatOrthogonalDrawing(pl.graph, boxes, tuple(out_routes), dict(pl.meta))
    return normalize(out, rows=False) if normalize_output else out


# -- redundant columns ------------------------------------------------------

def redundant_columns(d: FlatOrthogonalDrawing) -> list[int]:
    """Columns deleted by :func:`remove_redundant_columns`, right to left."""
    vertical = set()
    for r in d.routes:
        for p, q in zip(r, r[1:]):
            if p.x == q.x and p.y != q.y:
                vertical.add(p.x)
    xs = [b.xl for b in d.boxes] + [b.xr for b in d.boxes] + [p.x for r in d.routes for p in r]
    starts: dict = {}
    for b in d.boxes:
        starts.setdefault(b.xl, []).append(b.xr)
    deleted: list[int] = []
    dset = set()
    for c in range(max(xs), min(xs) - 1, -1):
        if c in vertical:
            continue
        # c is a box's only column if every column right of it in the box is gone
        if any(all(k in dset for k in range(c + 1, xr + 1)) for xr in starts.get(c, ())):
            continue
        deleted.append(c)
        dset.add(c)
    return deleted


def remove_redundant_columns(d: FlatOrthogonalDrawing) -> FlatOrthogonalDrawing:
    """Delete every redundant column; content right of a deleted column shifts left."""
    if not isinstance(d, FlatOrthogonalDrawing):
        raise DrawingError("flat orthogonal drawing required")
    if any(not isinstance(c, int) for b in d.boxes for c in b):
        raise DrawingError("integral coordinates required")
    deleted = sorted(redundant_columns(d))
    if not deleted:
        return d
    dset = set(deleted)
    extends_left = set()
    for b in d.boxes:
        if b.xl < b.xr:
            extends_left.add((b.xr, b.y))
    for r in d.routes:
        for p, q in zip(r, r[1:]):
            if p.y == q.y and p.x != q.x:
                extends_left.add((max(p.x, q.x), p.y))

    def fx(x, y):
        new = x - bisect_left(deleted, x)
        if x in dset and (x, y) in extends_left:
            new -= 1
        return new

    boxes = tuple(Box(b.y, fx(b.xl, b.y), fx(b.xr, b.y)) for b in d.boxes)
    routes = tuple(simplify_path([Point(fx(p.x, p.y), p.y) for p in r]) for r in d.routes)
    return replace(d, boxes=boxes, routes=routes)
