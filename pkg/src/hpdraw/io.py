"""JSON file format (``"format": 1``) for drawings.

All coordinates are written as decimal strings so that exponentially large
values survive any JSON reader. On input, plain JSON integers are accepted
as well.
"""
from __future__ import annotations

import json
import re

from .geometry import Point
from .model import (
    Box,
    DrawingError,
    FlatOrthogonalDrawing,
    FlatVisibilityRep,
    Graph,
    PolylineDrawing,
    StraightLineDrawing,
    TallBox,
    ValidationError,
    VisibilityRep,
)

FORMAT_VERSION = 1
STYLES = ("straightline", "polyline", "flatortho", "flatvr", "vr")
_INT = re.compile(r"-?[0-9]+\Z")

__all__ = ["FORMAT_VERSION", "STYLES", "ParseError", "load", "loads", "save", "dumps", "to_dict", "from_dict"]


class ParseError(DrawingError):
    """The file does not follow the schema; the message names the field."""


def _int(value, where: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a decimal integer string")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _INT.match(value):
        return int(value)
    raise ParseError(f"{where}: expected a decimal integer string, got {value!r}")


def _str(c) -> str:
    if not isinstance(c, int):
        raise DrawingError(f"cannot serialize non-integral coordinate {c}")
    return str(c)


def _point(value, where: str) -> Point:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"{where}: expected [x, y]")
    return Point(_int(value[0], f"{where}[0]"), _int(value[1], f"{where}[1]"))


def _list(doc, key, where=None):
    value = doc.get(key)
    if not isinstance(value, list):
        raise ParseError(f"{where or key}: expected a list")
    return value


def _seg_to_json(p: Point, q: Point) -> dict:
    if p.x == q.x and p.y != q.y:
        return {"kind": "v", "x": _str(p.x), "from": _str(p.y), "to": _str(q.y)}
    return {"kind": "h", "y": _str(p.y), "from": _str(p.x), "to": _str(q.x)}


def _seg_from_json(s, where: str) -> tuple[Point, Point]:
    if not isinstance(s, dict) or s.get("kind") not in ("h", "v"):
        raise ParseError(f"{where}.kind: expected 'h' or 'v'")
    a, b = _int(s.get("from"), f"{where}.from"), _int(s.get("to"), f"{where}.to")
    if s["kind"] == "v":
        x = _int(s.get("x"), f"{where}.x")
        return Point(x, a), Point(x, b)
    y = _int(s.get("y"), f"{where}.y")
    return Point(a, y), Point(b, y)


def to_dict(d) -> dict:
    g = d.graph
    doc = {
        "format": FORMAT_VERSION,
        "style": d.style,
        "n": g.n,
        "edges": [[u, v] for u, v in g.edges],
        "directed": g.directed,
    }
    if isinstance(d, (StraightLineDrawing, PolylineDrawing)):
        doc["pos"] = [[_str(p.x), _str(p.y)] for p in d.pos]
    if isinstance(d, PolylineDrawing):
        doc["bends"] = [[[_str(p.x), _str(p.y)] for p in b] for b in d.bends]
    if isinstance(d, VisibilityRep):
        doc["box"] = [{"y0": _str(b.y0), "y1": _str(b.y1), "xl": _str(b.xl), "xr": _str(b.xr)} for b in d.boxes]
        doc["seg"] = [_seg_to_json(*r) for r in d.routes]
    elif isinstance(d, FlatOrthogonalDrawing):
        doc["box"] = [{"y": _str(b.y), "xl": _str(b.xl), "xr": _str(b.xr)} for b in d.boxes]
        if isinstance(d, FlatVisibilityRep):
            doc["seg"] = [_seg_to_json(*r) for r in d.routes]
        else:
            doc["route"] = [[[_str(p.x), _str(p.y)] for p in r] for r in d.routes]
    if d.meta:
        doc["meta"] = d.meta
    return doc


def from_dict(doc, validate: bool = True):
    if not isinstance(doc, dict):
        raise ParseError("document: expected a JSON object")
    if doc.get("format") != FORMAT_VERSION:
        raise ParseError(f"format: expected {FORMAT_VERSION}, got {doc.get('format')!r}")
    style = doc.get("style")
    if style not in STYLES:
        raise ParseError(f"style: expected one of {', '.join(STYLES)}, got {style!r}")
    n = doc.get("n")
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError("n: expected an integer")
    if n < 1:
        raise ParseError("n: the empty graph is not a drawing")
    edges = []
    for i, e in enumerate(_list(doc, "edges")):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise ParseError(f"edges[{i}]: expected [u, v] with integer ids")
        edges.append(tuple(e))
    directed = doc.get("directed", False)
    if not isinstance(directed, bool):
        raise ParseError("directed: expected a boolean")
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise ParseError("meta: expected an object")
    try:
        graph = Graph(n, tuple(edges), directed)
        d = _build(style, graph, doc, meta)
    except ParseError:
        raise
    except DrawingError as exc:
        raise ValidationError(str(exc)) from exc
    if validate:
        from .validation import validate as _validate

        report = _validate(d)
        if not report.ok:
            first = report.violations[0]
            raise ValidationError(f"invalid {style} drawing: {first.kind} {list(first.elements)}", report)
    return d


def _build(style, graph, doc, meta):
    if style in ("straightline", "polyline"):
        pos = [_point(p, f"pos[{i}]") for i, p in enumerate(_list(doc, "pos"))]
        if style == "straightline":
            return StraightLineDrawing(graph, pos, meta)
        bends = [
            [_point(p, f"bends[{i}][{j}]") for j, p in enumerate(_list({"b": b}, "b", f"bends[{i}]"))]
            for i, b in enumerate(_list(doc, "bends"))
        ]
        return PolylineDrawing(graph, pos, bends, meta)
    boxes = []
    for i, b in enumerate(_list(doc, "box")):
        if not isinstance(b, dict):
            raise ParseError(f"box[{i}]: expected an object")
        keys = ("y0", "y1", "xl", "xr") if style == "vr" else ("y", "xl", "xr")
        vals = [_int(b.get(k), f"box[{i}].{k}") for k in keys]
        boxes.append(TallBox(*vals) if style == "vr" else Box(*vals))
    if style == "flatortho":
        routes = [
            [_point(p, f"route[{i}][{j}]") for j, p in enumerate(_list({"r": r}, "r", f"route[{i}]"))]
            for i, r in enumerate(_list(doc, "route"))
        ]
        return FlatOrthogonalDrawing(graph, boxes, routes, meta)
    segs = [_seg_from_json(s, f"seg[{i}]") for i, s in enumerate(_list(doc, "seg"))]
    if style == "flatvr":
        return FlatVisibilityRep(graph, boxes, segs, meta)
    return VisibilityRep(graph, boxes, segs, meta)


def dumps(d) -> str:
    return json.dumps(to_dict(d), indent=1, sort_keys=True) + "\n"


def loads(text, validate: bool = True):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"document: not valid JSON ({exc})") from exc
    return from_dict(doc, validate=validate)


def save(d, path=None) -> bytes:
    data = dumps(d).encode()
    if path is not None:
        with open(path, "wb") as fh:
            fh.write(data)
    return data


def load(path_or_bytes, validate: bool = True):
    if isinstance(path_or_bytes, (bytes, bytearray)):
        return loads(path_or_bytes.decode(), validate)
    with open(path_or_bytes, "rb") as fh:
        return loads(fh.read().decode(), validate)
