import pytest
from hypothesis import assume, given, settings, strategies as st

from hpdraw.generators import gen_random_polyline, gen_random_straightline
from hpdraw.geometry import Point
from hpdraw.model import (
    Box,
    DrawingError,
    FlatOrthogonalDrawing,
    Graph,
    PolylineDrawing,
    StraightLineDrawing,
    count_bends,
    metrics,
)
from hpdraw.orthogonal import (
    ZigZag,
    channel_drawing,
    expand_boxes,
    find_zigzags,
    layered_drawing,
    ortho_to_vr,
    poly_to_ortho,
    redundant_columns,
    remove_redundant_columns,
    remove_zigzag,
)
from hpdraw.validation import check_planar, check_y_monotone, same_rows_and_orders, validate
from conftest import random_cfg


def one_edge(boxes, route):
    return FlatOrthogonalDrawing(Graph(2, ((0, 1),)), boxes, [route])


Z = one_edge([(1, 1, 1), (3, 3, 3)], ((1, 1), (1, 2), (3, 2), (3, 3)))


class TestExpandBoxes:
    def test_side_bend_absorbed(self):
        od = one_edge([(1, 1, 1), (2, 3, 3)], ((1, 1), (3, 1), (3, 2)))
        out = expand_boxes(od)
        assert out.boxes[0] == Box(1, 1, 3)
        assert out.routes[0] == (Point(3, 1), Point(3, 2))

    def test_straight_horizontal_edge_untouched(self):
        od = one_edge([(1, 1, 1), (1, 3, 3)], ((1, 1), (3, 1)))
        assert expand_boxes(od).boxes == od.boxes

    def test_both_ends(self):
        od = one_edge([(1, 1, 1), (2, 5, 5)], ((1, 1), (3, 1), (3, 2), (5, 2)))
        out = expand_boxes(od)
        assert out.boxes == (Box(1, 1, 3), Box(2, 3, 5))
        assert count_bends(out) == 0


class TestZigZag:
    def test_found(self):
        assert find_zigzags(Z) == [ZigZag(0, 1, 2, 1, 3)]

    def test_removed(self):
        out = remove_zigzag(Z, find_zigzags(Z)[0])
        assert out.boxes == (Box(1, 3, 3), Box(3, 3, 3))
        assert out.routes[0] == (Point(3, 1), Point(3, 3))

    def test_mirror(self):
        od = one_edge([(1, 3, 3), (3, 1, 1)], ((3, 1), (3, 2), (1, 2), (1, 3)))
        z = find_zigzags(od)[0]
        assert z.shift == 2
        out = remove_zigzag(od, z)
        assert count_bends(out) == 0 and validate(out).ok

    def test_foreign_zigzag_rejected(self):
        with pytest.raises(DrawingError):
            remove_zigzag(Z, ZigZag(0, 1, 2, 5, 7))

    def test_staircase_and_confluence(self):
        g = Graph(4, ((0, 1), (2, 3)))
        od = FlatOrthogonalDrawing(
            g,
            [(1, 1, 1), (4, 5, 5), (1, 7, 7), (3, 8, 8)],
            [((1, 1), (1, 2), (3, 2), (3, 3), (5, 3), (5, 4)), ((7, 1), (7, 2), (8, 2), (8, 3))],
        )
        assert len(find_zigzags(od)) == 3
        steps = []
        vr = ortho_to_vr(od, on_step=lambda a, b, z: steps.append((count_bends(a), count_bends(b))))
        assert [a - b for a, b in steps] == [2, 2, 2]
        assert validate(vr).ok and same_rows_and_orders(od, vr)


class TestOrthoToVR:
    def test_single_zigzag(self):
        vr = ortho_to_vr(Z)
        assert vr.style == "flatvr" and validate(vr).ok
        assert [b.y for b in vr.boxes] == [1, 3]

    def test_rejects_non_monotone(self):
        od = one_edge([(1, 1, 1), (1, 3, 3)], ((1, 1), (1, 2), (3, 2), (3, 1)))
        with pytest.raises(DrawingError):
            ortho_to_vr(od)

    @settings(max_examples=40)
    @given(st.integers(0, 10**6))
    def test_random(self, seed):
        pl = gen_random_polyline(random_cfg(seed, n=(2, 25), h=(1, 8)))
        assume(check_y_monotone(pl))
        od = channel_drawing(pl)
        steps = []

        def check(before, after, z):
            assert count_bends(before) - count_bends(after) == 2
            assert [b.y for b in before.boxes] == [b.y for b in after.boxes]
            assert check_planar(after).ok
            steps.append(z)

        vr = ortho_to_vr(od, on_step=check)
        assert validate(vr).ok and same_rows_and_orders(od, vr)
        assert metrics(vr).height == metrics(od).height
        assert len(steps) * 2 <= count_bends(od)


class TestPolyToOrtho:
    def test_channel_drawing_has_zigzags(self):
        pl = gen_random_straightline(random_cfg(3))
        od = channel_drawing(pl)
        assert validate(od).ok and count_bends(od) > 0
        assert len(find_zigzags(od)) == count_bends(od) // 2

    def test_pseudo_vertices_per_row(self):
        ld = layered_drawing(StraightLineDrawing(Graph(2, ((0, 1),)), [(0, 1), (3, 4)]))
        assert len(ld.points) - ld.n_original == 2
        assert [p.y for p in ld.points[2:]] == [2, 3]

    def test_bend_becomes_pseudo_vertex(self):
        pl = PolylineDrawing(Graph(2, ((0, 1),)), [(0, 1), (0, 3)], [[(2, 2)]])
        ld = layered_drawing(pl)
        assert ld.points[2] == Point(2, 2) and ld.chains[0] == (0, 2, 1)

    def test_horizontal_edge(self):
        od = poly_to_ortho(StraightLineDrawing(Graph(2, ((0, 1),)), [(0, 1), (3, 1)]))
        (r,) = od.routes
        assert r[0].y == r[-1].y == 1 and count_bends(od) == 0

    def test_box_width_up_degree(self):
        g = Graph(4, ((0, 1), (0, 2), (0, 3)))
        sl = StraightLineDrawing(g, [(2, 1), (1, 2), (2, 2), (3, 2)])
        assert layered_drawing(sl).box_width(0) == 3
        od = poly_to_ortho(sl)
        assert validate(od).ok
        # three vertical edges leave the bottom box from three columns
        assert len({r[0].x for r in od.routes}) == 3

    @settings(max_examples=40)
    @given(st.integers(0, 10**6))
    def test_random(self, seed):
        pl = gen_random_polyline(random_cfg(seed))
        od = poly_to_ortho(pl)
        assert validate(od).ok and same_rows_and_orders(pl, od)
        assert metrics(od).height == metrics(pl).height
        if check_y_monotone(pl):
            assert check_y_monotone(od)


def _path_row(n):
    g = Graph(n, tuple((i, i + 1) for i in range(n - 1)))
    return poly_to_ortho(StraightLineDrawing(g, [(i, 1) for i in range(n)]))


class TestCompaction:
    def test_triangle(self):
        tri = StraightLineDrawing(Graph(3, ((0, 1), (1, 2), (0, 2))), [(0, 1), (0, 3), (5, 2)])
        out = remove_redundant_columns(poly_to_ortho(tri))
        assert metrics(out).width <= 3 and validate(out).ok

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_row_path_exactly_n(self, n):
        assert metrics(remove_redundant_columns(_path_row(n))).width == n

    def test_wide_box_shrinks(self):
        d = FlatOrthogonalDrawing(Graph(1, ()), [(1, 1, 5)], [])
        assert remove_redundant_columns(d).boxes == (Box(1, 1, 1),)

    def test_z_middle_column(self):
        # column 2 only carries the horizontal part of the zig-zag
        assert redundant_columns(Z) == [2]
        out = remove_redundant_columns(Z)
        assert out.boxes == (Box(1, 1, 1), Box(3, 2, 2))
        assert out.routes[0] == (Point(1, 1), Point(1, 2), Point(2, 2), Point(2, 3))

    def test_nothing_to_remove(self):
        d = one_edge([(1, 1, 1), (2, 1, 1)], ((1, 1), (1, 2)))
        assert remove_redundant_columns(d) is d

    def test_rejects_fractions(self):
        from fractions import Fraction

        d = FlatOrthogonalDrawing(Graph(1, ()), [(1, Fraction(1, 2), 5)], [])
        with pytest.raises(DrawingError):
            remove_redundant_columns(d)

    @settings(max_examples=40)
    @given(st.integers(0, 10**6))
    def test_random_idempotent(self, seed):
        od = poly_to_ortho(gen_random_straightline(random_cfg(seed)))
        out = remove_redundant_columns(od)
        assert validate(out).ok and same_rows_and_orders(od, out)
        assert redundant_columns(out) == [] or metrics(remove_redundant_columns(out)).width == metrics(out).width
        assert metrics(out).width <= metrics(od).width
