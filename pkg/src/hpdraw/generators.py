"""Seeded instance generators.

Random drawings are built geometrically: distinct grid points, then random
candidate edges accepted greedily when they keep the drawing plane. Flat
visibility representations and flat orthogonal drawings come from piping
those through the transformations.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .geometry import IntersectionKind, Point, Segment, on_segment, segments_intersect
from .model import DrawingError, FlatVisibilityRep, Graph, PolylineDrawing, StraightLineDrawing

__all__ = [
    "GenConfig",
    "gen_random_straightline",
    "gen_random_polyline",
    "gen_random_upward",
    "gen_random_flat_ortho",
    "gen_random_flat_vr",
    "gen_exponential_family",
]


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    n: int = 10
    h: int = 4
    m: int | None = None  # target edge count; None for "as many as fit"
    width: int | None = None
    bend_prob: float = 0.3

    def __post_init__(self):
        if self.n < 1 or self.h < 1:
            raise DrawingError("n and h must be positive")

    def grid_width(self) -> int:
        return self.width or max(3, 2 * math.ceil(self.n / self.h) + 1)


def _meta(cfg: GenConfig, kind: str) -> dict:
    return {"generator": kind, "seed": cfg.seed, "n": cfg.n, "h": cfg.h}


def _random_points(rng: random.Random, cfg: GenConfig) -> list[Point]:
    w = cfg.grid_width()
    if cfg.n > w * cfg.h:
        raise DrawingError(f"cannot place {cfg.n} distinct points in a {w}x{cfg.h} grid")
    cells = rng.sample(range(w * cfg.h), cfg.n)
    pts = [Point(c % w + 1, c // w + 1) for c in cells]
    # make sure the requested height is used when there are enough points
    if cfg.n >= 2 and cfg.h >= 2 and not any(p.y == cfg.h for p in pts):
        pts[-1] = Point(pts[-1].x, cfg.h)
        if pts[-1] in pts[:-1]:
            pts[-1] = Point(next(x for x in range(1, w + 1) if Point(x, cfg.h) not in pts), cfg.h)
    return pts


class _PlaneSet:
    """Points plus accepted polylines, with an exact insertion test."""

    def __init__(self, points):
        self.points = list(points)
        self.segs: list[tuple[Segment, int, int]] = []

    def fits(self, path, u, v) -> bool:
        segs = [Segment(p, q) for p, q in zip(path, path[1:])]
        for s in segs:
            if s.degenerate:
                return False
        for i, s in enumerate(segs):
            for j in range(i + 2, len(segs)):
                if segments_intersect(s, segs[j]) is not IntersectionKind.NONE:
                    return False
            if i + 1 < len(segs) and segments_intersect(s, segs[i + 1]) is not IntersectionKind.ENDPOINT_SHARED:
                return False
            for w, p in enumerate(self.points):
                if on_segment(p, s) and not ((w == u and i == 0 and p == s.a) or (w == v and i == len(segs) - 1 and p == s.b)):
                    return False
            for t, a, b in self.segs:
                kind = segments_intersect(s, t)
                if kind is IntersectionKind.NONE:
                    continue
                if kind is IntersectionKind.ENDPOINT_SHARED:
                    common = next(q for q in (s.a, s.b) if q in (t.a, t.b))
                    if common in (self.points[u], self.points[v]) and common in (self.points[a], self.points[b]):
                        continue
                return False
        return True

    def add(self, path, u, v):
        self.segs.extend((Segment(p, q), u, v) for p, q in zip(path, path[1:]))


def _spanning_subset(rng, n, edges, m):
    """A random spanning tree of ``edges`` (if connected) topped up to ``m``."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    order = list(range(len(edges)))
    rng.shuffle(order)
    tree, rest = [], []
    for i in order:
        u, v = edges[i][0]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.append(i)
        else:
            rest.append(i)
    keep = tree + rest[: max(0, m - len(tree))]
    return sorted(keep)


def _greedy_edges(rng, pts, cfg: GenConfig, allow_horizontal=True, bends=False):
    n = len(pts)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not allow_horizontal:
        pairs = [(u, v) for u, v in pairs if pts[u].y != pts[v].y]
    rng.shuffle(pairs)
    plane = _PlaneSet(pts)
    accepted = []
    w = cfg.grid_width()
    for u, v in pairs:
        path = [pts[u], pts[v]]
        if bends and rng.random() < cfg.bend_prob:
            bend = Point(rng.randint(0, w + 1), rng.randint(1, cfg.h))
            bent = [pts[u], bend, pts[v]]
            if bend not in pts and plane.fits(bent, u, v):
                path = bent
        if plane.fits(path, u, v):
            plane.add(path, u, v)
            accepted.append(((u, v), tuple(path[1:-1])))
    if cfg.m is not None:
        keep = _spanning_subset(rng, n, accepted, cfg.m)
        accepted = [accepted[i] for i in keep]
    return accepted


def gen_random_straightline(cfg: GenConfig, allow_horizontal: bool = True) -> StraightLineDrawing:
    rng = random.Random(cfg.seed)
    pts = _random_points(rng, cfg)
    edges = _greedy_edges(rng, pts, cfg, allow_horizontal=allow_horizontal)
    g = Graph(cfg.n, tuple(e for e, _ in edges))
    return StraightLineDrawing(g, tuple(pts), _meta(cfg, "straightline"))


def gen_random_polyline(cfg: GenConfig) -> PolylineDrawing:
    """Random poly-line drawing; bends sit on grid points (y within the rows)."""
    rng = random.Random(cfg.seed)
    pts = _random_points(rng, cfg)
    edges = _greedy_edges(rng, pts, cfg, bends=True)
    g = Graph(cfg.n, tuple(e for e, _ in edges))
    return PolylineDrawing(g, tuple(pts), tuple(b for _, b in edges), _meta(cfg, "polyline"))


def gen_random_upward(cfg: GenConfig) -> StraightLineDrawing:
    """Upward straight-line drawing of a DAG; every edge points up."""
    sl = gen_random_straightline(cfg, allow_horizontal=False)
    edges = tuple((u, v) if sl.pos[u].y < sl.pos[v].y else (v, u) for u, v in sl.graph.edges)
    meta = _meta(cfg, "upward")
    meta["upward"] = True
    return StraightLineDrawing(Graph(cfg.n, edges, directed=True), sl.pos, meta)


def gen_random_flat_ortho(cfg: GenConfig):
    """A flat orthogonal drawing (with bends) from a random poly-line drawing."""
    from .orthogonal import poly_to_ortho

    od = poly_to_ortho(gen_random_polyline(cfg))
    od.meta.update(_meta(cfg, "flatortho"))
    return od


def gen_random_flat_vr(cfg: GenConfig) -> FlatVisibilityRep:
    from .orthogonal import ortho_to_vr, poly_to_ortho

    sl = gen_random_straightline(cfg)
    vr = ortho_to_vr(poly_to_ortho(PolylineDrawing.from_straightline(sl)))
    vr.meta.clear()
    vr.meta.update(_meta(cfg, "flatvr"))
    return vr


def gen_exponential_family(n: int, h: int) -> FlatVisibilityRep:
    """Flat VR of height ``h`` and width O(n) whose straight-line drawing is
    exponentially wide.

    Vertex 0 is a long box on the bottom row and vertex 1 one on the top row,
    joined by a vertical edge at their left ends. Vertices 2..n-1 are unit
    boxes alternating between rows 2 and h-1, left to right, each seeing both
    long boxes. Processing vertex i (1-based) puts it at
    x = 1 + (h-2) + ... + (h-2)**(i-3): the sight line from the far long box
    has to clear the previous chain vertex one row away.
    """
    if n < 5 or h < 4:
        raise DrawingError("exponential family needs n >= 5 and h >= 4")
    right = 2 * n + 2
    boxes = [(1, 1, right), (h, 1, right)]
    segs = [((1, 1), (1, h))]
    edges = [(0, 1)]
    for v in range(2, n):
        row = 2 if v % 2 == 0 else h - 1
        x = 2 * v
        boxes.append((row, x, x + 1))
        edges.append((1, v))
        segs.append(((x, h), (x, row)))
        edges.append((0, v))
        segs.append(((x + 1, 1), (x + 1, row)))
    return FlatVisibilityRep(
        Graph(n, tuple(edges)), tuple(boxes), tuple(segs), {"generator": "exponential", "n": n, "h": h}
    )
