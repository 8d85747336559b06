"""Exact planar predicates on grid points.

Coordinates are Python ``int`` (unbounded) or :class:`fractions.Fraction`.
Rows (``y``) are always integral; only ``x`` may be transiently rational.
No floating point is used anywhere.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import NamedTuple, Union

Rational = Union[int, Fraction]

__all__ = [
    "IntersectionKind",
    "Point",
    "Segment",
    "exact",
    "orient",
    "on_segment",
    "segments_intersect",
    "intersection_point",
    "line_row_intersection",
    "floor_plus_one",
]


class IntersectionKind(enum.Enum):
    NONE = "none"
    ENDPOINT_SHARED = "endpoint-shared"
    CROSSING = "crossing"
    OVERLAPPING = "overlapping"


class Point(NamedTuple):
    x: Rational
    y: Rational


class Segment(NamedTuple):
    a: Point
    b: Point

    @property
    def degenerate(self) -> bool:
        return self.a == self.b


def exact(value) -> Rational:
    """Collapse a Fraction with unit denominator to int; reject floats."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"inexact coordinate {value!r}")


def orient(a: Point, b: Point, c: Point) -> Rational:
    """Twice the signed area of triangle abc (positive if counter-clockwise)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _sign(v: Rational) -> int:
    return (v > 0) - (v < 0)


def on_segment(p: Point, s: Segment) -> bool:
    """True iff ``p`` lies on the closed segment ``s``."""
    a, b = s
    if orient(a, b, p) != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def _is_endpoint(p: Point, s: Segment) -> bool:
    return p == s.a or p == s.b


def _classify_single(p: Point, s1: Segment, s2: Segment) -> IntersectionKind:
    if _is_endpoint(p, s1) and _is_endpoint(p, s2):
        return IntersectionKind.ENDPOINT_SHARED
    return IntersectionKind.CROSSING


def segments_intersect(s1: Segment, s2: Segment) -> IntersectionKind:
    """Classify how two closed segments meet.

    ``ENDPOINT_SHARED`` means the only common point is an endpoint of both.
    A touch of an endpoint against the interior of the other segment is a
    ``CROSSING``. Collinear segments sharing more than one point are
    ``OVERLAPPING``.
    """
    a, b = s1
    c, d = s2
    if max(a.x, b.x) < min(c.x, d.x) or max(c.x, d.x) < min(a.x, b.x):
        return IntersectionKind.NONE
    if max(a.y, b.y) < min(c.y, d.y) or max(c.y, d.y) < min(a.y, b.y):
        return IntersectionKind.NONE

    if s1.degenerate and s2.degenerate:
        return IntersectionKind.ENDPOINT_SHARED if a == c else IntersectionKind.NONE
    if s1.degenerate:
        return _classify_single(a, s1, s2) if on_segment(a, s2) else IntersectionKind.NONE
    if s2.degenerate:
        return _classify_single(c, s1, s2) if on_segment(c, s1) else IntersectionKind.NONE

    o1 = _sign(orient(a, b, c))
    o2 = _sign(orient(a, b, d))
    o3 = _sign(orient(c, d, a))
    o4 = _sign(orient(c, d, b))

    if o1 == o2 == 0:
        # collinear: compare along the dominant axis
        if a.x != b.x:
            lo = max(min(a.x, b.x), min(c.x, d.x))
            hi = min(max(a.x, b.x), max(c.x, d.x))
        else:
            lo = max(min(a.y, b.y), min(c.y, d.y))
            hi = min(max(a.y, b.y), max(c.y, d.y))
        if lo > hi:
            return IntersectionKind.NONE
        if lo < hi:
            return IntersectionKind.OVERLAPPING
        common = next(p for p in (a, b) if p in (c, d)) if {a, b} & {c, d} else None
        if common is not None:
            return IntersectionKind.ENDPOINT_SHARED
        return IntersectionKind.CROSSING

    if o1 * o2 < 0 and o3 * o4 < 0:
        return IntersectionKind.CROSSING
    for p, s in ((c, s1), (d, s1), (a, s2), (b, s2)):
        if on_segment(p, s):
            return _classify_single(p, s1, s2)
    return IntersectionKind.NONE


def intersection_point(s1: Segment, s2: Segment) -> Point | None:
    """A witness common point of two segments, or None."""
    kind = segments_intersect(s1, s2)
    if kind is IntersectionKind.NONE:
        return None
    for p in (s1.a, s1.b):
        if on_segment(p, s2):
            return p
    for p in (s2.a, s2.b):
        if on_segment(p, s1):
            return p
    a, b = s1
    c, d = s2
    den = (b.x - a.x) * (d.y - c.y) - (b.y - a.y) * (d.x - c.x)
    t = Fraction((c.x - a.x) * (d.y - c.y) - (c.y - a.y) * (d.x - c.x)) / den
    return Point(exact(a.x + t * (b.x - a.x)), exact(a.y + t * (b.y - a.y)))


def line_row_intersection(p: Point, q: Point, row: Rational) -> Rational:
    """x-coordinate where the line through ``p`` and ``q`` meets ``y = row``."""
    if p.y == q.y:
        raise ValueError("degenerate line")
    return exact(p.x + Fraction(row - p.y) * (q.x - p.x) / (q.y - p.y))


def floor_plus_one(x: Rational) -> int:
    """Smallest integer strictly greater than ``x``."""
    return math.floor(x) + 1
