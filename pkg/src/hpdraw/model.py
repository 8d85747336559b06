"""Graph and drawing containers for the four flat drawing styles.

Every drawing is an immutable value. Vertices are dense ids ``0..n-1``;
per-edge data is stored in the order of ``graph.edges`` and oriented from
``u`` to ``v`` for an edge ``(u, v)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, NamedTuple, Union

from .geometry import Point, Rational, Segment, exact, orient

__all__ = [
    "DrawingError",
    "ValidationError",
    "InternalError",
    "Graph",
    "Box",
    "TallBox",
    "StraightLineDrawing",
    "PolylineDrawing",
    "FlatOrthogonalDrawing",
    "FlatVisibilityRep",
    "VisibilityRep",
    "Drawing",
    "Metrics",
    "metrics",
    "normalize",
    "translate",
    "defining_points",
    "simplify_path",
    "count_bends",
]


class DrawingError(ValueError):
    """Malformed input or a precondition of an operation not met."""


class ValidationError(DrawingError):
    """A drawing breaks one of its style invariants."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InternalError(RuntimeError):
    """A guarantee of a construction did not hold; indicates a bug."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    directed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.n < 1:
            raise DrawingError("graph must have at least one vertex")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DrawingError(f"edge ({u}, {v}) references a missing vertex")
            if u == v:
                raise DrawingError(f"self-loop at vertex {u}")
            key = frozenset((u, v))
            if key in seen:
                raise DrawingError(f"parallel edge ({u}, {v})")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def is_connected(self) -> bool:
        adj = self.neighbors()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n


class Box(NamedTuple):
    """A flat vertex box: the horizontal segment ``[xl, xr]`` on row ``y``."""

    y: int
    xl: Rational
    xr: Rational

    @property
    def segment(self) -> Segment:
        return Segment(Point(self.xl, self.y), Point(self.xr, self.y))


class TallBox(NamedTuple):
    """An axis-aligned vertex rectangle spanning rows ``y0..y1``."""

    y0: int
    y1: int
    xl: Rational
    xr: Rational


def _points(seq) -> tuple[Point, ...]:
    return tuple(Point(exact(x), exact(y)) for x, y in seq)


@dataclass(frozen=True)
class StraightLineDrawing:
    graph: Graph
    pos: tuple[Point, ...]
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    style = "straightline"

    def __post_init__(self):
        object.__setattr__(self, "pos", _points(self.pos))
        if len(self.pos) != self.graph.n:
            raise DrawingError("pos must list one point per vertex")

    def vertex_y(self, v: int) -> int:
        return self.pos[v].y

    def vertex_x(self, v: int) -> Rational:
        return self.pos[v].x

    def paths(self) -> Iterator[tuple[Point, ...]]:
        for u, v in self.graph.edges:
            yield (self.pos[u], self.pos[v])

    def vertex_segment(self, v: int) -> Segment:
        return Segment(self.pos[v], self.pos[v])


@dataclass(frozen=True)
class PolylineDrawing:
    graph: Graph
    pos: tuple[Point, ...]
    bends: tuple[tuple[Point, ...], ...]
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    style = "polyline"

    def __post_init__(self):
        object.__setattr__(self, "pos", _points(self.pos))
        object.__setattr__(self, "bends", tuple(_points(b) for b in self.bends))
        if len(self.pos) != self.graph.n:
            raise DrawingError("pos must list one point per vertex")
        if len(self.bends) != self.graph.m:
            raise DrawingError("bends must list one sequence per edge")

    @classmethod
    def from_straightline(cls, d: StraightLineDrawing) -> "PolylineDrawing":
        return cls(d.graph, d.pos, tuple(() for _ in d.graph.edges), dict(d.meta))

    vertex_y = StraightLineDrawing.vertex_y
    vertex_x = StraightLineDrawing.vertex_x
    vertex_segment = StraightLineDrawing.vertex_segment

    def paths(self) -> Iterator[tuple[Point, ...]]:
        for (u, v), bends in zip(self.graph.edges, self.bends):
            yield (self.pos[u], *bends, self.pos[v])


@dataclass(frozen=True)
class FlatOrthogonalDrawing:
    graph: Graph
    boxes: tuple[Box, ...]
    routes: tuple[tuple[Point, ...], ...]
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    style = "flatortho"

    def __post_init__(self):
        object.__setattr__(
            self, "boxes", tuple(Box(exact(b[0]), exact(b[1]), exact(b[2])) for b in self.boxes)
        )
        object.__setattr__(self, "routes", tuple(_points(r) for r in self.routes))
        if len(self.boxes) != self.graph.n:
            raise DrawingError("box must list one entry per vertex")
        if len(self.routes) != self.graph.m:
            raise DrawingError("route must list one path per edge")
        for i, r in enumerate(self.routes):
            if len(r) < 2:
                raise DrawingError(f"route[{i}] needs at least two points")

    def vertex_y(self, v: int) -> int:
        return self.boxes[v].y

    def vertex_x(self, v: int) -> Rational:
        return self.boxes[v].xl

    def vertex_segment(self, v: int) -> Segment:
        return self.boxes[v].segment

    def paths(self) -> Iterator[tuple[Point, ...]]:
        return iter(self.routes)


@dataclass(frozen=True)
class FlatVisibilityRep(FlatOrthogonalDrawing):
    """Flat orthogonal drawing in which every edge is one axis-parallel segment."""

    style = "flatvr"

    def __post_init__(self):
        super().__post_init__()
        for i, r in enumerate(self.routes):
            if len(r) != 2:
                raise DrawingError(f"seg[{i}] must be a single segment")

    def as_orthogonal(self) -> FlatOrthogonalDrawing:
        return FlatOrthogonalDrawing(self.graph, self.boxes, self.routes, dict(self.meta))


@dataclass(frozen=True)
class VisibilityRep:
    """Visibility representation with possibly tall boxes (upward mode only)."""

    graph: Graph
    boxes: tuple[TallBox, ...]
    routes: tuple[tuple[Point, Point], ...]
    meta: dict = field(default_factory=dict, compare=False, repr=False)

    style = "vr"

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(TallBox(*map(exact, b)) for b in self.boxes))
        object.__setattr__(self, "routes", tuple(_points(r) for r in self.routes))
        if len(self.boxes) != self.graph.n:
            raise DrawingError("box must list one entry per vertex")
        if len(self.routes) != self.graph.m:
            raise DrawingError("seg must list one segment per edge")
        for i, r in enumerate(self.routes):
            if len(r) != 2:
                raise DrawingError(f"seg[{i}] must be a single segment")

    def vertex_y(self, v: int) -> int:
        return self.boxes[v].y0

    def vertex_x(self, v: int) -> Rational:
        return self.boxes[v].xl

    def paths(self) -> Iterator[tuple[Point, ...]]:
        return iter(self.routes)


Drawing = Union[StraightLineDrawing, PolylineDrawing, FlatOrthogonalDrawing, VisibilityRep]


def defining_points(d: Drawing) -> Iterator[Point]:
    """Vertex points or box corners, plus every route point."""
    if isinstance(d, (StraightLineDrawing, PolylineDrawing)):
        yield from d.pos
    elif isinstance(d, VisibilityRep):
        for b in d.boxes:
            yield Point(b.xl, b.y0)
            yield Point(b.xr, b.y1)
    else:
        for b in d.boxes:
            yield Point(b.xl, b.y)
            yield Point(b.xr, b.y)
    for path in d.paths():
        yield from path


def _goes_straight(p: Point, q: Point, r: Point) -> bool:
    """True iff q lies strictly inside the straight run p -> r."""
    if p == q or q == r:
        return True
    if orient(p, q, r) != 0:
        return False
    return (q.x - p.x) * (r.x - q.x) + (q.y - p.y) * (r.y - q.y) > 0


def simplify_path(path) -> tuple[Point, ...]:
    """Drop repeated points and interior points where the path goes straight on."""
    pts: list[Point] = []
    for p in path:
        if not pts or pts[-1] != p:
            pts.append(p)
    if len(pts) == 1:
        return (pts[0], pts[0])
    out = [pts[0]]
    for i in range(1, len(pts) - 1):
        if not _goes_straight(out[-1], pts[i], pts[i + 1]):
            out.append(pts[i])
    out.append(pts[-1])
    return tuple(out)


def count_bends(d: Drawing) -> int:
    """Interior path points at which the direction changes."""
    total = 0
    for path in d.paths():
        for i in range(1, len(path) - 1):
            if not _goes_straight(path[i - 1], path[i], path[i + 1]):
                total += 1
    return total


class Metrics(NamedTuple):
    height: int
    width: Rational
    bends: int


def metrics(d: Drawing) -> Metrics:
    pts = list(defining_points(d))
    if not pts:
        raise DrawingError("empty drawing")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return Metrics(
        height=exact(max(ys) - min(ys) + 1),
        width=exact(max(xs) - min(xs) + 1),
        bends=count_bends(d),
    )


def _shift(p: Point, dx, dy) -> Point:
    return Point(exact(p.x + dx), exact(p.y + dy))


def translate(d: Drawing, dx: Rational = 0, dy: int = 0) -> Drawing:
    if isinstance(d, StraightLineDrawing):
        return replace(d, pos=tuple(_shift(p, dx, dy) for p in d.pos))
    if isinstance(d, PolylineDrawing):
        return replace(
            d,
            pos=tuple(_shift(p, dx, dy) for p in d.pos),
            bends=tuple(tuple(_shift(p, dx, dy) for p in b) for b in d.bends),
        )
    routes = tuple(tuple(_shift(p, dx, dy) for p in r) for r in d.routes)
    if isinstance(d, VisibilityRep):
        boxes = tuple(TallBox(b.y0 + dy, b.y1 + dy, b.xl + dx, b.xr + dx) for b in d.boxes)
    else:
        boxes = tuple(Box(b.y + dy, b.xl + dx, b.xr + dx) for b in d.boxes)
    return replace(d, boxes=boxes, routes=routes)


def normalize(d: Drawing, rows: bool = True) -> Drawing:
    """Translate so the minimum occupied column (and row, if ``rows``) is 1."""
    pts = list(defining_points(d))
    dx = 1 - min(p.x for p in pts)
    dy = (1 - min(p.y for p in pts)) if rows else 0
    if dx == 0 and dy == 0:
        return d
    return translate(d, dx, dy)
