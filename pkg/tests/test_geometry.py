from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hpdraw.geometry import (
    IntersectionKind as K,
    Point,
    Segment,
    exact,
    floor_plus_one,
    intersection_point,
    line_row_intersection,
    on_segment,
    segments_intersect,
)


def seg(a, b, c, d):
    return Segment(Point(a, b), Point(c, d))


def oracle(s1, s2):
    """Brute-force classification by solving the 2x2 system (Cramer)."""
    (a, b), (c, d) = s1, s2
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    qx, qy = c.x - a.x, c.y - a.y
    den = rx * sy - ry * sx

    def shared(p):
        return p in (a, b) and p in (c, d)

    if s1.degenerate or s2.degenerate:
        p, other = (a, s2) if s1.degenerate else (c, s1)
        if s1.degenerate and s2.degenerate:
            return K.ENDPOINT_SHARED if a == c else K.NONE
        # parametric membership
        ox, oy = other.b.x - other.a.x, other.b.y - other.a.y
        if ox * (p.y - other.a.y) - oy * (p.x - other.a.x) != 0:
            return K.NONE
        t = Fraction(p.x - other.a.x, ox) if ox else Fraction(p.y - other.a.y, oy)
        if not 0 <= t <= 1:
            return K.NONE
        return K.ENDPOINT_SHARED if shared(p) else K.CROSSING
    if den != 0:
        t = Fraction(qx * sy - qy * sx, den)
        u = Fraction(qx * ry - qy * rx, den)
        if not (0 <= t <= 1 and 0 <= u <= 1):
            return K.NONE
        p = Point(exact(a.x + t * rx), exact(a.y + t * ry))
        return K.ENDPOINT_SHARED if shared(p) else K.CROSSING
    if qx * ry - qy * rx != 0:
        return K.NONE  # parallel, distinct lines
    # collinear: parameters of c and d along s1
    n2 = rx * rx + ry * ry
    tc = Fraction(qx * rx + qy * ry, n2)
    td = Fraction((d.x - a.x) * rx + (d.y - a.y) * ry, n2)
    lo, hi = max(0, min(tc, td)), min(1, max(tc, td))
    if lo > hi:
        return K.NONE
    if lo < hi:
        return K.OVERLAPPING
    p = Point(exact(a.x + lo * rx), exact(a.y + lo * ry))
    return K.ENDPOINT_SHARED if shared(p) else K.CROSSING


coord = st.integers(-4, 4)
segments = st.builds(seg, coord, coord, coord, coord)


@pytest.mark.parametrize(
    "s1, s2, kind",
    [
        (seg(0, 0, 2, 2), seg(0, 2, 2, 0), K.CROSSING),
        (seg(0, 0, 1, 1), seg(1, 1, 2, 0), K.ENDPOINT_SHARED),
        (seg(0, 0, 2, 0), seg(1, 0, 3, 0), K.OVERLAPPING),
        (seg(0, 0, 1, 0), seg(2, 0, 3, 0), K.NONE),
        (seg(0, 0, 2, 0), seg(1, 0, 1, 5), K.CROSSING),  # T-junction
        (seg(0, 0, 1, 0), seg(1, 0, 2, 0), K.ENDPOINT_SHARED),  # collinear touch
    ],
)
def test_fixed_cases(s1, s2, kind):
    assert segments_intersect(s1, s2) is kind
    assert segments_intersect(s2, s1) is kind


def test_crossing_witness():
    assert intersection_point(seg(0, 0, 2, 2), seg(0, 2, 2, 0)) == Point(1, 1)


@given(segments, segments)
def test_matches_cramer_oracle(s1, s2):
    assert segments_intersect(s1, s2) is oracle(s1, s2)


@given(segments, segments)
def test_symmetric_and_reversal_invariant(s1, s2):
    k = segments_intersect(s1, s2)
    assert segments_intersect(s2, s1) is k
    assert segments_intersect(Segment(s1.b, s1.a), s2) is k


@given(segments, segments)
def test_witness_lies_on_both(s1, s2):
    p = intersection_point(s1, s2)
    if segments_intersect(s1, s2) is K.NONE:
        assert p is None
    else:
        assert on_segment(p, s1) and on_segment(p, s2)


@given(segments, segments, st.integers(1, 5), st.integers(-3, 3), st.integers(-3, 3))
def test_translation_and_scaling_invariant(s1, s2, k, dx, dy):
    def f(s):
        return Segment(*(Point(k * p.x + dx, k * p.y + dy) for p in s))

    assert segments_intersect(f(s1), f(s2)) is segments_intersect(s1, s2)


def test_big_integers_stay_exact():
    big = 10**40
    s1 = seg(0, 0, big, big + 1)
    s2 = seg(0, 1, big, big + 2)  # parallel, never touch
    assert segments_intersect(s1, s2) is K.NONE
    s3 = seg(big, 0, 0, big + 1)
    assert segments_intersect(s1, s3) is K.CROSSING


@pytest.mark.parametrize(
    "p, q, row, x",
    [((0, 4), (1, 3), 1, 3), ((0, 2), (0, 1), 0, 0), ((2, 5), (5, 2), 3, 4), ((0, 0), (1, 2), 1, Fraction(1, 2))],
)
def test_line_row_intersection(p, q, row, x):
    assert line_row_intersection(Point(*p), Point(*q), row) == x


def test_line_row_intersection_rejects_horizontal():
    with pytest.raises(ValueError):
        line_row_intersection(Point(0, 1), Point(3, 1), 2)


@pytest.mark.parametrize("x, want", [(Fraction(7, 2), 4), (3, 4), (Fraction(-5, 2), -2), (0, 1)])
def test_floor_plus_one(x, want):
    assert floor_plus_one(x) == want


@given(st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000))
def test_floor_plus_one_is_smallest_strictly_greater(x):
    b = floor_plus_one(x)
    assert b > x and b - 1 <= x


def test_exact_rejects_floats():
    with pytest.raises(TypeError):
        exact(0.5)
    assert type(exact(Fraction(4, 2))) is int
