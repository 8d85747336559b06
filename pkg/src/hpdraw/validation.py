"""Exact validity checks for drawings and the height-preservation predicates."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .geometry import IntersectionKind, Point, Segment, intersection_point, on_segment, segments_intersect
from .model import (
    DrawingError,
    FlatOrthogonalDrawing,
    FlatVisibilityRep,
    PolylineDrawing,
    StraightLineDrawing,
    ValidationError,
    VisibilityRep,
)

__all__ = [
    "Violation",
    "ValidationReport",
    "check_planar",
    "check_structure",
    "check_y_monotone",
    "count_plateaus",
    "row_orders",
    "same_rows_and_orders",
    "validate",
    "check_drawing",
]


@dataclass(frozen=True)
class Violation:
    kind: str
    elements: tuple
    witness: tuple = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "elements": [list(e) if isinstance(e, tuple) else e for e in self.elements],
            "witness": [str(c) for c in self.witness],
        }


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind, elements, witness=()):
        self.violations.append(Violation(kind, tuple(elements), tuple(witness)))

    def extend(self, other: "ValidationReport") -> "ValidationReport":
        self.violations.extend(other.violations)
        self.notes.update(other.notes)
        return self

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [v.to_json() for v in self.violations],
            "notes": self.notes,
        }


def _vertex_shapes(d) -> list[Segment]:
    return [d.vertex_segment(v) for v in range(d.graph.n)]


class _Item:
    __slots__ = ("seg", "tag", "xmin", "xmax", "ymin", "ymax")

    def __init__(self, seg: Segment, tag: tuple):
        self.seg = seg
        self.tag = tag
        a, b = seg
        self.xmin, self.xmax = (a.x, b.x) if a.x <= b.x else (b.x, a.x)
        self.ymin, self.ymax = (a.y, b.y) if a.y <= b.y else (b.y, a.y)


def _candidate_pairs(items: list[_Item]) -> Iterable[tuple[_Item, _Item]]:
    items = sorted(items, key=lambda it: it.xmin)
    for i, a in enumerate(items):
        for j in range(i + 1, len(items)):
            b = items[j]
            if b.xmin > a.xmax:
                break
            if b.ymin > a.ymax or a.ymin > b.ymax:
                continue
            yield a, b


def check_planar(d) -> ValidationReport:
    """Report every illegal contact between vertex shapes and edge segments.

    Works for straight-line, poly-line and flat orthogonal drawings (flat
    visibility representations included). A segment may touch its own
    endpoint's shape only at its attachment point; two edges may meet only
    at a common attachment point on a shared endpoint.
    """
    if isinstance(d, VisibilityRep):
        return _check_planar_tall(d)
    report = ValidationReport()
    edges = d.graph.edges
    paths = list(d.paths())
    items = [_Item(s, ("v", v)) for v, s in enumerate(_vertex_shapes(d))]
    for e, path in enumerate(paths):
        for k in range(len(path) - 1):
            items.append(_Item(Segment(path[k], path[k + 1]), ("e", e, k)))

    for a, b in _candidate_pairs(items):
        kind = segments_intersect(a.seg, b.seg)
        if kind is IntersectionKind.NONE:
            continue
        if a.tag[0] == "e" and b.tag[0] == "v":
            a, b = b, a
        witness = intersection_point(a.seg, b.seg) or ()
        ta, tb = a.tag, b.tag
        if ta[0] == "v" and tb[0] == "v":
            if not _touching_allowed(d, ta[1], tb[1], witness, kind):
                report.add("vertex-overlap", [ta[1], tb[1]], witness)
        elif ta[0] == "v":
            w, e, k = ta[1], tb[1], tb[2]
            u, v = edges[e]
            path = paths[e]
            if w not in (u, v):
                report.add("edge-through-vertex", [tuple(edges[e]), w], witness)
                continue
            if kind is IntersectionKind.OVERLAPPING:
                report.add("edge-along-vertex", [tuple(edges[e]), w], witness)
                continue
            ok = (w == u and k == 0 and witness == path[0]) or (
                w == v and k == len(path) - 2 and witness == path[-1]
            )
            if not ok:
                report.add("edge-touches-own-vertex", [tuple(edges[e]), w], witness)
        else:
            e, k = ta[1], ta[2]
            f, l = tb[1], tb[2]
            if e == f:
                if abs(k - l) == 1 and kind is IntersectionKind.ENDPOINT_SHARED:
                    continue
                report.add("self-intersection", [tuple(edges[e]), k, l], witness)
                continue
            if kind is not IntersectionKind.ENDPOINT_SHARED or not _shared_attachment(
                edges[e], paths[e], k, edges[f], paths[f], l, witness
            ):
                report.add("edge-crossing", [tuple(edges[e]), tuple(edges[f])], witness)
    return report


def _attachment(edge, path, k, vertex):
    u, v = edge
    if vertex == u and k == 0:
        return path[0]
    if vertex == v and k == len(path) - 2:
        return path[-1]
    return None


def _shared_attachment(e1, p1, k1, e2, p2, k2, witness) -> bool:
    for w in set(e1) & set(e2):
        a1 = _attachment(e1, p1, k1, w)
        a2 = _attachment(e2, p2, k2, w)
        if a1 is not None and a1 == a2 == witness:
            return True
    return False


def _touching_allowed(d, v1, v2, witness, kind) -> bool:
    """Boxes in one row may touch only through a zero-length edge between them."""
    if kind is not IntersectionKind.ENDPOINT_SHARED or not isinstance(d, FlatOrthogonalDrawing):
        return False
    for (u, v), path in zip(d.graph.edges, d.routes):
        if {u, v} == {v1, v2} and len(path) == 2 and path[0] == path[1] == witness:
            return True
    return False


def _check_planar_tall(d: VisibilityRep) -> ValidationReport:
    report = ValidationReport()
    boxes = d.boxes
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            a, b = boxes[i], boxes[j]
            if a.xl <= b.xr and b.xl <= a.xr and a.y0 <= b.y1 and b.y0 <= a.y1:
                report.add("vertex-overlap", [i, j])
    for e, ((u, v), (p, q)) in enumerate(zip(d.graph.edges, d.routes)):
        seg = Segment(p, q)
        for w, b in enumerate(boxes):
            contact = _seg_rect_contact(seg, b)
            if contact is None:
                continue
            if w not in (u, v):
                report.add("edge-through-vertex", [(u, v), w])
            elif contact != (p if w == u else q):
                report.add("edge-touches-own-vertex", [(u, v), w])
        for f in range(e + 1, d.graph.m):
            s2 = Segment(*d.routes[f])
            kind = segments_intersect(seg, s2)
            if kind is IntersectionKind.NONE:
                continue
            witness = intersection_point(seg, s2)
            shared = set(d.graph.edges[e]) & set(d.graph.edges[f])
            if kind is IntersectionKind.ENDPOINT_SHARED and shared:
                w = shared.pop()
                if witness in _attach_points(d.graph.edges[e], d.routes[e], w) and witness in _attach_points(
                    d.graph.edges[f], d.routes[f], w
                ):
                    continue
            report.add("edge-crossing", [d.graph.edges[e], d.graph.edges[f]], witness or ())
    return report


def _attach_points(edge, route, w):
    return {route[0]} if edge[0] == w else {route[1]}


def _seg_rect_contact(seg: Segment, b):
    """Contact of an axis-parallel segment with a closed rectangle.

    Returns None, the single common Point, or "many".
    """
    (p, q) = seg
    x0, x1 = sorted((p.x, q.x))
    y0, y1 = sorted((p.y, q.y))
    lx, hx = max(x0, b.xl), min(x1, b.xr)
    ly, hy = max(y0, b.y0), min(y1, b.y1)
    if lx > hx or ly > hy:
        return None
    if lx == hx and ly == hy:
        return Point(lx, ly)
    return "many"


def _axis_parallel(p: Point, q: Point) -> bool:
    return p.x == q.x or p.y == q.y


def check_structure(d) -> ValidationReport:
    """Style invariants that are not about crossings."""
    report = ValidationReport()
    coords = [c for path in d.paths() for p in path for c in p]
    if isinstance(d, (StraightLineDrawing, PolylineDrawing)):
        coords += [c for p in d.pos for c in p]
    else:
        coords += [c for b in d.boxes for c in b]
    if any(not isinstance(c, int) for c in coords):
        report.add("non-integral-coordinate", [])

    if isinstance(d, PolylineDrawing):
        for e, path in enumerate(d.paths()):
            if any(path[k] == path[k + 1] for k in range(len(path) - 1)):
                report.add("zero-length-segment", [d.graph.edges[e]])
    if isinstance(d, VisibilityRep):
        for v, b in enumerate(d.boxes):
            if b.xl > b.xr or b.y0 > b.y1:
                report.add("inverted-box", [v])
        for e, ((u, v), (p, q)) in enumerate(zip(d.graph.edges, d.routes)):
            bu, bv = d.boxes[u], d.boxes[v]
            if p.x == q.x and p.y != q.y:
                ok = all(bx.xl <= p.x <= bx.xr for bx in (bu, bv))
                ok = ok and p.y in (bu.y0, bu.y1) and q.y in (bv.y0, bv.y1)
            elif p.y == q.y:
                ok = all(bx.y0 <= p.y <= bx.y1 for bx in (bu, bv)) and {p.x, q.x} <= {bu.xl, bu.xr, bv.xl, bv.xr}
            else:
                ok = False
            if not ok:
                report.add("bad-visibility-segment", [(u, v)])
    if isinstance(d, FlatOrthogonalDrawing):
        for v, b in enumerate(d.boxes):
            if b.xl > b.xr:
                report.add("inverted-box", [v])
        for e, ((u, v), path) in enumerate(zip(d.graph.edges, d.routes)):
            zero = len(path) == 2 and path[0] == path[1]
            for k in range(len(path) - 1):
                if not _axis_parallel(path[k], path[k + 1]):
                    report.add("non-rectilinear-segment", [(u, v), k], path[k] + path[k + 1])
                elif path[k] == path[k + 1] and not zero:
                    report.add("zero-length-segment", [(u, v), k])
            if not on_segment(path[0], d.boxes[u].segment) or not on_segment(path[-1], d.boxes[v].segment):
                report.add("detached-route", [(u, v)])
            if zero and d.boxes[u].y != d.boxes[v].y:
                report.add("detached-route", [(u, v)])
        if isinstance(d, FlatVisibilityRep):
            for e, ((u, v), (p, q)) in enumerate(zip(d.graph.edges, d.routes)):
                bu, bv = d.boxes[u], d.boxes[v]
                if p.y == q.y and bu.y == bv.y:
                    ok = (p.x == bu.xr and q.x == bv.xl and p.x <= q.x) or (
                        p.x == bu.xl and q.x == bv.xr and q.x <= p.x
                    )
                elif p.x == q.x:
                    ok = p.y == bu.y and q.y == bv.y and p.y != q.y
                else:
                    ok = False
                if not ok:
                    report.add("bad-visibility-segment", [(u, v)])
    if d.graph.directed and isinstance(d, StraightLineDrawing) and d.meta.get("upward"):
        for u, v in d.graph.edges:
            if not d.pos[u].y < d.pos[v].y:
                report.add("not-upward", [(u, v)])
    if d.graph.directed and isinstance(d, VisibilityRep) and d.meta.get("upward"):
        for (u, v), (p, q) in zip(d.graph.edges, d.routes):
            if not (p.x == q.x and p.y < q.y):
                report.add("not-upward", [(u, v)])
    return report


def count_plateaus(d) -> int:
    """Interior horizontal segments of poly-line edges (allowed, but reported)."""
    if not isinstance(d, PolylineDrawing):
        return 0
    count = 0
    for path in d.paths():
        for k in range(1, len(path) - 2):
            if path[k].y == path[k + 1].y:
                count += 1
    return count


def check_y_monotone(d) -> bool:
    """Every edge path is y-monotone (horizontal runs allowed)."""
    for path in d.paths():
        ys = [p.y for p in path]
        up = all(a <= b for a, b in zip(ys, ys[1:]))
        down = all(a >= b for a, b in zip(ys, ys[1:]))
        if not (up or down):
            return False
    return True


def row_orders(d) -> dict[int, list[int]]:
    rows: dict[int, list[int]] = {}
    for v in range(d.graph.n):
        rows.setdefault(d.vertex_y(v), []).append(v)
    return {r: sorted(vs, key=lambda v: (d.vertex_x(v), v)) for r, vs in sorted(rows.items())}


def same_rows_and_orders(d1, d2) -> bool:
    if d1.graph.n != d2.graph.n:
        raise DrawingError("drawings have different vertex sets")
    if any(d1.vertex_y(v) != d2.vertex_y(v) for v in range(d1.graph.n)):
        return False
    return row_orders(d1) == row_orders(d2)


def validate(d, planar: bool = True) -> ValidationReport:
    report = check_structure(d)
    if planar:
        report.extend(check_planar(d))
    report.notes["y_monotone"] = check_y_monotone(d)
    plateaus = count_plateaus(d)
    if plateaus:
        report.notes["plateaus"] = plateaus
    return report


_STYLE_TYPES = {
    "straightline": StraightLineDrawing,
    "polyline": PolylineDrawing,
    "flatortho": FlatOrthogonalDrawing,
    "flatvr": FlatVisibilityRep,
    "vr": VisibilityRep,
}


def check_drawing(d, styles: Iterable[str] | None = None, planar: bool = True):
    """Input validation helper for estimators and the CLI.

    Raises :class:`ValidationError` if ``d`` is not one of ``styles`` or
    breaks its invariants; returns ``d`` unchanged otherwise.
    """
    if styles is not None:
        allowed = tuple(_STYLE_TYPES[s] for s in styles)
        if not isinstance(d, allowed):
            raise ValidationError(
                f"expected a drawing of style {'/'.join(styles)}, got {getattr(d, 'style', type(d).__name__)}"
            )
    report = validate(d, planar=planar)
    if not report.ok:
        first = report.violations[0]
        raise ValidationError(f"invalid drawing: {first.kind} {first.elements}", report)
    return d
