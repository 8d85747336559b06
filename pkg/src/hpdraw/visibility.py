"""Flat visibility representation to straight-line drawing, row by row.

Vertices are processed by the left end of their box. Each one is put at the
smallest integer x to the right of everything already occupying its row and
of every sight line from an earlier neighbour in another row. The engine
starts at x = 0 and the final drawing is translated to start at column 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import (
    IntersectionKind,
    Point,
    Rational,
    Segment,
    floor_plus_one,
    intersection_point,
    line_row_intersection,
    on_segment,
    segments_intersect,
)
from .model import (
    DrawingError,
    FlatOrthogonalDrawing,
    FlatVisibilityRep,
    Graph,
    InternalError,
    PolylineDrawing,
    StraightLineDrawing,
    count_bends,
    metrics,
    normalize,
    simplify_path,
)

__all__ = [
    "Bound",
    "PlacementState",
    "PlacementEngine",
    "WidthBoundTable",
    "width_bound_table",
    "processing_order",
    "sweep_order",
    "trace_to_json",
    "METHODS",
    "vr_to_straightline",
    "ortho_to_polyline",
]


@dataclass(frozen=True)
class Bound:
    """A strict lower bound ``X > threshold`` resolved to ``floor + 1``."""

    kind: str  # "row" or "visibility"
    value: int
    threshold: Rational
    source: int | None = None  # predecessor for visibility bounds
    witness: int | None = None  # obstacle vertex (or None for a row edge crossing)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "bound": str(self.value),
            "threshold": str(self.threshold),
            "source": self.source,
            "witness": self.witness,
        }


@dataclass
class PlacementState:
    """The partial straight-line drawing of the processed prefix."""

    rows: dict[int, int]  # vertex -> row, for every vertex
    X: dict[int, int] = field(default_factory=dict)
    row_max: dict[int, Rational] = field(default_factory=dict)
    placed_edges: list[tuple[int, int]] = field(default_factory=list)

    def point(self, v: int) -> Point:
        return Point(self.X[v], self.rows[v])


class PlacementEngine:
    def __init__(self, graph: Graph, rows, order):
        self.graph = graph
        self.order = list(order)
        self.state = PlacementState(rows=dict(enumerate(rows)))
        self.adj = graph.neighbors()
        self.trace: list[dict] = []

    # -- bounds -------------------------------------------------------------
    def row_bound(self, row: int) -> Bound | None:
        """Bound from vertices and edge crossings already on ``row``."""
        st = self.state
        best, witness = None, None
        for v, x in st.X.items():
            if st.rows[v] == row and (best is None or x > best):
                best, witness = x, v
        for a, b in st.placed_edges:
            ya, yb = st.rows[a], st.rows[b]
            if min(ya, yb) < row < max(ya, yb):
                x = line_row_intersection(st.point(a), st.point(b), row)
                if best is None or x > best:
                    best, witness = x, None
        if best is None:
            return None
        return Bound("row", floor_plus_one(best), best, None, witness)

    def visibility_bound(self, g: int, target_row: int) -> Bound | None:
        """Bound past which placed vertex ``g`` sees all of ``target_row``."""
        st = self.state
        yg = st.rows[g]
        if yg == target_row:
            raise InternalError("visibility bound requested within one row")
        pg = st.point(g)
        lo, hi = sorted((yg, target_row))
        for a, b in st.placed_edges:
            ya, yb = st.rows[a], st.rows[b]
            if min(ya, yb) <= yg <= max(ya, yb) and max(ya, yb) > lo and min(ya, yb) < hi and ya != yb:
                if line_row_intersection(st.point(a), st.point(b), yg) > pg.x:
                    raise InternalError(f"a placed edge enters the strip right of vertex {g}")
        best, witness = None, None
        for v, x in st.X.items():
            if lo < st.rows[v] < hi:
                xg = line_row_intersection(pg, st.point(v), target_row)
                if best is None or xg > best:
                    best, witness = xg, v
        if best is None:
            return None
        return Bound("visibility", floor_plus_one(best), best, g, witness)

    # -- main loop ----------------------------------------------------------
    def place_next(self, v: int) -> int:
        st = self.state
        row = st.rows[v]
        bounds = []
        rb = self.row_bound(row)
        if rb is not None:
            bounds.append(rb)
        preds = [g for g in self.adj[v] if g in st.X]
        for g in preds:
            if st.rows[g] != row:
                vb = self.visibility_bound(g, row)
                if vb is not None:
                    bounds.append(vb)
        x = max((b.value for b in bounds), default=0)
        binding = [i for i, b in enumerate(bounds) if b.value == x]
        st.X[v] = x
        st.row_max[row] = max(st.row_max.get(row, x), x)
        st.placed_edges.extend((g, v) for g in preds)
        self.trace.append(
            {
                "vertex": v,
                "x": x,
                "bounds": bounds,
                "binding": binding[0] if binding else None,
            }
        )
        return x

    def run(self) -> dict[int, int]:
        for v in self.order:
            self.place_next(v)
        return self.state.X


def processing_order(boxes) -> list[int]:
    """Vertices sorted by (x_l, y, id)."""
    return sorted(range(len(boxes)), key=lambda v: (boxes[v].xl, boxes[v].y, v))


def sweep_order(graph: Graph, boxes, routes) -> list[int]:
    """Left-to-right sweep order over a flat visibility representation.

    Sorting by left box end is not always enough: a vertical edge between two
    early vertices may pass right of a later vertex in an intermediate row.
    Here a vertex is taken once it is the leftmost unfinished item of its row
    (items are boxes and vertical edges crossing the row; an edge is finished
    when both ends are placed) and each edge it closes towards a placed
    neighbour has only edges closed at the same time left of it in every row
    it crosses. Among eligible vertices the smallest (x_l, y, id) wins.
    Raises InternalError when no vertex is eligible.
    """
    n = len(boxes)
    key = {v: (boxes[v].xl, boxes[v].y, v) for v in range(n)}
    rows: dict[int, list] = {}
    for v, b in enumerate(boxes):
        rows.setdefault(b.y, []).append((b.xl, 0, v))
    crossing: dict[int, list[int]] = {}  # edge -> rows it crosses
    for e, ((u, v), r) in enumerate(zip(graph.edges, routes)):
        p, q = r[0], r[-1]
        lo, hi = sorted((boxes[u].y, boxes[v].y))
        for y in range(lo + 1, hi):
            rows.setdefault(y, []).append((p.x, 1, e))
            crossing.setdefault(e, []).append(y)
    for items in rows.values():
        items.sort()
    head = {y: 0 for y in rows}
    placed = [False] * n
    incident: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(graph.edges):
        incident[u].append(e)
        incident[v].append(e)

    def done(item) -> bool:
        _, kind, ident = item
        if kind == 0:
            return placed[ident]
        u, v = graph.edges[ident]
        return placed[u] and placed[v]

    def first(y):
        items = rows[y]
        i = head[y]
        while i < len(items) and done(items[i]):
            i += 1
        head[y] = i
        return items[i] if i < len(items) else None

    order = []
    for _ in range(n):
        best = None
        for y in rows:
            it = first(y)
            if it is None or it[1] != 0:
                continue
            w = it[2]
            closing = set()
            for e in incident[w]:
                u, v = graph.edges[e]
                if placed[v if u == w else u]:
                    closing.add(e)
            ok = all(_clear(rows[r], head[r], e, closing, done) for e in closing for r in crossing.get(e, ()))
            if ok and (best is None or key[w] < key[best]):
                best = w
        if best is None:
            raise InternalError("sweep found no eligible vertex ")
        placed[best] = True
        order.append(best)
    return order


def _clear(items, start, e, closing, done) -> bool:
    # every unfinished item of the row left of edge e is closed together with it
    for it in items[start:]:
        if it[1] == 1 and it[2] == e:
            return True
        if not done(it) and not (it[1] == 1 and it[2] in closing):
            return False
    raise KeyError(e)


def trace_to_json(trace: list) -> list[dict]:
    return [
        {
            "vertex": t["vertex"],
            "x": str(t["x"]),
            "bounds": [b.to_json() for b in t["bounds"]],
            "binding": t["binding"],
        }
        for t in trace
    ]


def place(graph: Graph, boxes, order=None) -> PlacementEngine:
    if order is None:
        order = processing_order(boxes)
    engine = PlacementEngine(graph, [b.y for b in boxes], order)
    engine.run()
    return engine


METHODS = ("auto", "xl", "sweep", "lp")


def vr_to_straightline(vr: FlatVisibilityRep, verify: bool = True, trace: list | None = None,
                       normalize_output: bool = True, method: str = "auto") -> StraightLineDrawing:
    """Straight-line drawing with the same rows and row orders as ``vr``.

    ``method`` picks the vertex order of the placement engine: ``"xl"`` sorts
    by left box end, ``"sweep"`` uses :func:`sweep_order`, ``"lp"`` skips the
    engine and solves the row-order constraints as a linear program with an
    exact check of the rounded result. ``"auto"`` tries them in that order
    and keeps the first verified result. The method used is stored in
    ``meta["method"]``; engine coordinates in ``meta["raw_x"]``.

    ``trace``, if given, receives one record per vertex with every issued
    bound and the index of the binding one (engine methods only).
    """
    if not isinstance(vr, FlatVisibilityRep):
        raise DrawingError("flat VR required")
    if method not in METHODS:
        raise DrawingError(f"unknown method {method!r}")
    tries = ("xl", "sweep", "lp") if method == "auto" else (method,)
    err = None
    for m in tries:
        try:
            out, log = _solve(vr, m)
            if verify or method == "auto":
                _verify(out, "vr_to_straightline", vr)
        except InternalError as ex:
            err = ex
            continue
        if trace is not None:
            trace.extend(log)
        return normalize(out, rows=False) if normalize_output else out
    raise err


def _solve(vr, method):
    if method == "lp":
        X = _lp_positions(vr)
        log = []
    else:
        order = processing_order(vr.boxes) if method == "xl" else sweep_order(vr.graph, vr.boxes, vr.routes)
        engine = place(vr.graph, vr.boxes, order)
        X, log = engine.state.X, engine.trace
    out = StraightLineDrawing(
        vr.graph,
        tuple(Point(X[v], vr.boxes[v].y) for v in range(vr.graph.n)),
        {"raw_x": [str(X[v]) for v in range(vr.graph.n)], "method": method},
    )
    return out, log


def _row_items(vr):
    """Per row, the VR's left-to-right items as (column, {vertex: weight})."""
    rows: dict[int, list] = {}
    for v, b in enumerate(vr.boxes):
        rows.setdefault(b.y, []).append((b.xl, {v: Fraction(1)}))
    for (u, v), r in zip(vr.graph.edges, vr.routes):
        yu, yv = vr.boxes[u].y, vr.boxes[v].y
        for y in range(min(yu, yv) + 1, max(yu, yv)):
            t = Fraction(y - yu, yv - yu)
            rows.setdefault(y, []).append((r[0].x, {u: 1 - t, v: t}))
    for items in rows.values():
        items.sort(key=lambda it: it[0])
    return rows


def _lp_positions(vr) -> dict[int, int]:
    # Every row item (box or edge crossing) is linear in the vertex x's, so
    # keeping all row orders strict is a linear feasibility problem.
    import numpy as np
    from scipy.optimize import linprog
    from scipy.sparse import coo_matrix

    n = vr.graph.n
    rows = _row_items(vr)
    pairs = [(a[1], b[1]) for items in rows.values() for a, b in zip(items, items[1:])]
    data, ri, ci, rhs = [], [], [], []
    for k, (a, b) in enumerate(pairs):
        coef = dict.fromkeys(a.keys() | b.keys(), Fraction(0))
        for v, w in a.items():
            coef[v] += w
        for v, w in b.items():
            coef[v] -= w
        for v, w in coef.items():
            if w:
                data.append(float(w)); ri.append(k); ci.append(v)
        rhs.append(-1.0)
    for v in range(n):  # x_v <= W
        k = len(rhs)
        data += [1.0, -1.0]; ri += [k, k]; ci += [v, n]
        rhs.append(0.0)
    A = coo_matrix((data, (ri, ci)), shape=(len(rhs), n + 1))
    c = np.zeros(n + 1)
    c[n] = 1.0
    res = linprog(c, A_ub=A, b_ub=np.array(rhs), bounds=(0, None), method="highs")
    if res.status != 0:
        raise InternalError(f"row-order program has no solution: {res.message}")
    for scale in (1, 2, 3, 4, 8, 16, 64, 256, 1024):
        X = {v: int(round(res.x[v] * scale)) for v in range(n)}
        if all(_value(a, X) < _value(b, X) for a, b in pairs):
            lo = min(X.values())
            return {v: x - lo for v, x in X.items()}
    raise InternalError("could not round the row-order program exactly")


def _value(item, X):
    return sum(w * X[v] for v, w in item.items())


def _verify(d, stage: str, source=None):
    from .validation import check_planar, same_rows_and_orders

    report = check_planar(d)
    if not report.ok:
        v = report.violations[0]
        raise InternalError(f"{stage} produced a non-planar drawing: {v.kind} {v.elements}")
    if source is not None and not same_rows_and_orders(source, d):
        raise InternalError(f"{stage} changed a row order")
    if source is not None and metrics(source).height != metrics(d).height:
        raise InternalError(f"{stage} changed the height")


@dataclass(frozen=True)
class WidthBoundTable:
    h: int
    W: dict[int, int]
    W_prime: dict[int, int]

    @staticmethod
    def closed_form(i: int, h: int) -> int:
        """1 + (h-2) + ... + (h-2)**(i-3); zero for i = 2."""
        return sum((h - 2) ** k for k in range(i - 2))


def width_bound_table(n: int, h: int) -> WidthBoundTable:
    if h < 3:
        raise DrawingError("width bound recurrence needs h >= 3")
    if n < 2:
        raise DrawingError("width bound recurrence needs n >= 2")
    W, Wp = {2: 0}, {2: 0}
    for i in range(3, n + 1):
        Wp[i] = 1 + (h - 2) * Wp[i - 1]
        W[i] = 1 + (h - 1) * Wp[i - 1]
    return WidthBoundTable(h, W, Wp)


# -- flat orthogonal -> poly-line --------------------------------------------

def _subdivide(od: FlatOrthogonalDrawing):
    """Layered graph: original boxes plus a pseudo-vertex at every bend and
    every row crossed by a vertical segment. Returns (boxes, links, chains)."""
    from .model import Box

    boxes = list(od.boxes)
    links: list[tuple[int, int]] = []
    chains: list[list[int]] = []
    for (u, v), route in zip(od.graph.edges, od.routes):
        route = simplify_path(route)
        pts = [route[0]]
        for p, q in zip(route, route[1:]):
            if p.x == q.x and abs(q.y - p.y) > 1:
                step = 1 if q.y > p.y else -1
                pts.extend(type(p)(p.x, y) for y in range(p.y + step, q.y, step))
            pts.append(q)
        chain = [u]
        for p in pts[1:-1]:
            boxes.append(Box(p.y, p.x, p.x))
            chain.append(len(boxes) - 1)
        chain.append(v)
        links.extend(zip(chain, chain[1:]))
        chains.append(chain)
    return boxes, links, chains


def ortho_to_polyline(od: FlatOrthogonalDrawing, verify: bool = True,
                      normalize_output: bool = True, straighten: bool = True) -> PolylineDrawing:
    """Poly-line drawing with the same rows, row orders and no larger width.

    After subdivision every neighbour of a vertex lies in its own or an
    adjacent row, so each vertex lands on the leftmost free spot of its row.
    With ``straighten`` bend points are then dropped greedily wherever the
    shortcut keeps the drawing planar; this never moves a vertex, widens
    the drawing or empties its top or bottom row.
    """
    if not isinstance(od, FlatOrthogonalDrawing):
        raise DrawingError("flat orthogonal drawing required")
    boxes, links, chains = _subdivide(od)
    layered = Graph(len(boxes), tuple(links))
    engine = place(layered, boxes)
    X = engine.state.X
    pos = tuple(Point(X[v], od.boxes[v].y) for v in range(od.graph.n))
    paths = [list(simplify_path([Point(X[w], boxes[w].y) for w in chain])) for chain in chains]
    if straighten:
        _straighten(pos, paths, od.graph.edges)
    out = PolylineDrawing(od.graph, pos, tuple(tuple(pth[1:-1]) for pth in paths), {"method": "layered"})
    if verify:
        _verify(out, "ortho_to_polyline", od)
    if straighten and count_bends(out) > count_bends(od):
        alt = _anchored(od)
        if alt is not None and count_bends(alt) < count_bends(out):
            out = alt
    return normalize(out, rows=False) if normalize_output else out


def _anchored(od: FlatOrthogonalDrawing) -> PolylineDrawing | None:
    """Poly-line drawing whose bends sit only at the input's bends.

    Each vertex and each bend of ``od`` becomes an integer anchor; edges run
    straight between consecutive anchors. Keeping, in every row, the input's
    left-to-right order of anchors and segment crossings rules out crossings,
    so the anchors are found by a small integer program capped at the input
    width. Returns None if it has no solution or fails the exact check.
    """
    import numpy as np
    from math import lcm
    from scipy.optimize import LinearConstraint, milp

    n = od.graph.n
    anchors = [(od.boxes[v].xl, od.boxes[v].y) for v in range(n)]
    chains = []
    for (u, v), route in zip(od.graph.edges, od.routes):
        route = simplify_path(route)
        chain = [u]
        for p in route[1:-1]:
            anchors.append((p.x, p.y))
            chain.append(len(anchors) - 1)
        chain.append(v)
        chains.append((chain, route))
    rows: dict[int, list] = {}
    for a, (x, y) in enumerate(anchors):
        rows.setdefault(y, []).append((x, {a: Fraction(1)}, 1))
    for chain, route in chains:
        for k, (a, b) in enumerate(zip(chain, chain[1:])):
            ya, yb = anchors[a][1], anchors[b][1]
            col = route[k].x  # piece k is route segment k
            for y in range(min(ya, yb) + 1, max(ya, yb)):
                t = Fraction(y - ya, yb - ya)
                rows.setdefault(y, []).append((col, {a: 1 - t, b: t}, yb - ya if yb > ya else ya - yb))
    N = len(anchors)
    A, lb = [], []
    for items in rows.values():
        items.sort(key=lambda it: it[0])
        for (_, pa, da), (_, pb, db) in zip(items, items[1:]):
            scale = lcm(da, db)
            row = np.zeros(N + 1)
            for v, w in pb.items():
                row[v] += float(w * scale)
            for v, w in pa.items():
                row[v] -= float(w * scale)
            A.append(row)
            lb.append(1.0)
    width = metrics(od).width
    for a in range(N):
        row = np.zeros(N + 1)
        row[N], row[a] = 1.0, -1.0
        A.append(row)
        lb.append(0.0)
    c = np.zeros(N + 1)
    c[N] = 1.0
    ub_vars = np.full(N + 1, float(width - 1))
    res = milp(
        c,
        constraints=LinearConstraint(np.array(A), np.array(lb), np.inf),
        integrality=np.ones(N + 1),
        bounds=(np.zeros(N + 1), ub_vars),
        options={"time_limit": 10.0},
    )
    if res.x is None:
        return None
    X = [int(round(v)) for v in res.x[:N]]
    pts = [Point(X[a], anchors[a][1]) for a in range(N)]
    bends = tuple(tuple(simplify_path([pts[a] for a in chain])[1:-1]) for chain, _ in chains)
    try:
        out = PolylineDrawing(od.graph, tuple(pts[:n]), bends, {"method": "anchored"})
        _verify(out, "ortho_to_polyline", od)
    except (InternalError, DrawingError):
        return None
    if metrics(out).width > width:
        return None
    return out


def _spans(p: Point, q: Point):
    lo, hi = sorted((p.y, q.y))
    return [("row", y) for y in range(lo, hi + 1)] + [("gap", y) for y in range(lo, hi)]


def _straighten(pos, paths, edges):
    """Drop interior path points while the drawing stays planar (in place).

    Points outside the vertices' rows stay, so the height is kept.
    """
    from collections import Counter, defaultdict

    index: dict = defaultdict(Counter)

    def register(e, sign):
        for p, q in zip(paths[e], paths[e][1:]):
            for key in _spans(p, q):
                index[key][e] += sign

    for e in range(len(paths)):
        register(e, 1)
    by_row = defaultdict(list)
    for w, p in enumerate(pos):
        by_row[p.y].append(w)
    ylo, yhi = min(by_row, default=0), max(by_row, default=0)

    def attached(e, path, j, w):
        # segment j of path is the first/last one and starts/ends at w
        u, v = edges[e]
        return (w == u and j == 0) or (w == v and j == len(path) - 2)

    def legal(e, i):
        path = paths[e]
        a, c = path[i - 1], path[i + 1]
        if a == c or not ylo <= path[i].y <= yhi:
            return False
        new = path[:i] + path[i + 1:]
        seg = Segment(a, c)
        j0 = i - 1
        lo, hi = sorted((a.y, c.y))
        for y in range(lo, hi + 1):
            for w in by_row.get(y, ()):
                if on_segment(pos[w], seg) and not (
                    (w == edges[e][0] and j0 == 0 and pos[w] == a)
                    or (w == edges[e][1] and j0 == len(new) - 2 and pos[w] == c)
                ):
                    return False
        others = set()
        for key in _spans(a, c):
            others.update(f for f, k in index[key].items() if k > 0 and f != e)
        shared = set(edges[e])
        for f in others:
            pf = paths[f]
            for j in range(len(pf) - 1):
                t = Segment(pf[j], pf[j + 1])
                kind = segments_intersect(seg, t)
                if kind is IntersectionKind.NONE:
                    continue
                if kind is not IntersectionKind.ENDPOINT_SHARED:
                    return False
                hit = intersection_point(seg, t)
                if not any(
                    pos[w] == hit and attached(e, new, j0, w) and attached(f, pf, j, w)
                    for w in shared & set(edges[f])
                ):
                    return False
        for j in range(len(new) - 1):
            if j == j0:
                continue
            kind = segments_intersect(seg, Segment(new[j], new[j + 1]))
            if abs(j - j0) == 1:
                if kind is not IntersectionKind.ENDPOINT_SHARED:
                    return False
            elif kind is not IntersectionKind.NONE:
                return False
        return True

    changed = True
    while changed:
        changed = False
        for e, path in enumerate(paths):
            i = 1
            while i < len(path) - 1:
                if legal(e, i):
                    register(e, -1)
                    del path[i]
                    paths[e] = path = list(simplify_path(path))
                    register(e, 1)
                    changed = True
                else:
                    i += 1
