import json

import pytest

from hpdraw import io as dio
from hpdraw.cli import check_stages, main, stats, UsageError
from hpdraw.generators import GenConfig, gen_exponential_family, gen_random_polyline, gen_random_straightline
from hpdraw.model import Graph, StraightLineDrawing, metrics
from hpdraw.validation import same_rows_and_orders, validate
from conftest import triangle_vr


@pytest.fixture
def files(tmp_path):
    def put(name, d):
        p = tmp_path / name
        p.write_bytes(dio.save(d))
        return str(p)

    return put


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


CROSSING = StraightLineDrawing(Graph(4, ((0, 1), (2, 3))), [(0, 1), (2, 2), (2, 1), (0, 2)])


class TestExitCodes:
    def test_validate_ok(self, capsys, files):
        code, out = run(capsys, "validate", files("t.json", triangle_vr()))
        assert code == 0 and json.loads(out.out)["ok"] is True

    def test_validate_invalid(self, capsys, files):
        code, out = run(capsys, "validate", files("x.json", CROSSING))
        assert code == 1
        doc = json.loads(out.out)
        assert doc["ok"] is False and doc["style"] == "straightline"

    def test_transform_invalid_input(self, capsys, files):
        code, _ = run(capsys, "pl2od", files("x.json", CROSSING))
        assert code == 1

    def test_garbage_file(self, capsys, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        assert run(capsys, "stats", p)[0] == 1

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "stats", tmp_path / "nope.json")[0] == 2

    def test_unknown_flag(self, capsys):
        assert run(capsys, "gen", "--colour", "red")[0] == 2

    def test_no_command(self, capsys):
        assert run(capsys)[0] == 2

    def test_help(self, capsys):
        assert run(capsys, "--help")[0] == 0

    def test_wrong_style(self, capsys, files):
        assert run(capsys, "vr2sl", files("s.json", CROSSING.__class__(Graph(1, ()), [(1, 1)])))[0] == 2


class TestGen:
    def test_stdout_matches_library(self, capsys):
        code, out = run(capsys, "gen", "--style", "polyline", "--n", 12, "--height", 5, "--seed", 9)
        assert code == 0
        assert out.out.encode() == dio.save(gen_random_polyline(GenConfig(seed=9, n=12, h=5)))

    def test_exp_family(self, capsys):
        code, out = run(capsys, "gen", "--family", "exp", "--n", 6, "--height", 4)
        assert code == 0 and dio.loads(out.out) == gen_exponential_family(6, 4)

    def test_exp_bad_params(self, capsys):
        assert run(capsys, "gen", "--family", "exp", "--n", 3, "--height", 4)[0] == 2

    def test_unknown_style(self, capsys):
        assert run(capsys, "gen", "--style", "circles")[0] == 2

    @pytest.mark.parametrize("jobs", [1, 2])
    def test_batch(self, capsys, tmp_path, jobs):
        code, _ = run(capsys, "gen", "--count", 4, "--seed", 10, "--out-dir", tmp_path, "--jobs", jobs)
        assert code == 0
        names = sorted(p.name for p in tmp_path.iterdir())
        assert names == [f"straightline-{s}.json" for s in range(10, 14)]
        want = dio.save(gen_random_straightline(GenConfig(seed=12, n=10, h=4)))
        assert (tmp_path / "straightline-12.json").read_bytes() == want

    def test_count_without_dir(self, capsys):
        assert run(capsys, "gen", "--count", 3)[0] == 2


class TestPipeline:
    def test_full_chain(self, capsys, files, tmp_path):
        pl = gen_random_polyline(GenConfig(seed=4, n=15, h=5, bend_prob=0.0))
        src = files("pl.json", pl)
        out = tmp_path / "out.json"
        inter = tmp_path / "steps"
        code, _ = run(capsys, "pipeline", src, out, "--stages", "pl2od,od2vr,vr2sl", "--emit-intermediates", inter)
        assert code == 0
        sl = dio.load(out.read_bytes())
        assert sl.style == "straightline" and validate(sl).ok
        assert metrics(sl).height == metrics(pl).height and same_rows_and_orders(pl, sl)
        assert sorted(p.name for p in inter.iterdir()) == ["01-pl2od.json", "02-od2vr.json", "03-vr2sl.json"]

    def test_empty_is_copy(self, capsys, files):
        src = files("t.json", triangle_vr())
        code, out = run(capsys, "pipeline", src)
        assert code == 0 and out.out.encode() == dio.save(triangle_vr())

    def test_style_mismatch(self, capsys, files):
        code, out = run(capsys, "pipeline", files("t.json", triangle_vr()), "--stages", "vr2sl,od2vr")
        assert code == 2 and "od2vr" in out.err

    def test_check_stages(self):
        assert [s.name for s in check_stages(["od2vr", "vr2sl"], "flatortho")] == ["od2vr", "vr2sl"]
        with pytest.raises(UsageError):
            check_stages(["nope"], "flatvr")

    def test_upward_round_trip(self, capsys, files, tmp_path):
        from hpdraw.generators import gen_random_upward

        ud = gen_random_upward(GenConfig(seed=5, n=12, h=4))
        out = tmp_path / "u.json"
        code, _ = run(capsys, "pipeline", files("u.json", ud), out, "--stages", "upward2vr,vr2upward")
        assert code == 0
        back = dio.load(out.read_bytes())
        assert same_rows_and_orders(ud, back)

    def test_upward_needs_directed(self, capsys, files):
        code, _ = run(capsys, "upward2vr", files("s.json", gen_random_straightline(GenConfig(seed=1))))
        assert code == 1


class TestStats:
    def test_triangle(self, capsys, files):
        code, out = run(capsys, "stats", files("t.json", triangle_vr()))
        doc = json.loads(out.out)
        assert code == 0
        assert (doc["height"], doc["width"], doc["bends"], doc["n"], doc["m"]) == ("2", "3", 0, 3, 3)

    def test_single_vertex(self):
        doc = stats(StraightLineDrawing(Graph(1, ()), [(4, 7)]))
        assert (doc["height"], doc["width"], doc["bends"], doc["n"], doc["m"]) == ("1", "1", 0, 1, 0)
        assert doc["rows"] == {"7": 1}

    def test_exp_family_width(self, capsys, files, tmp_path):
        out = tmp_path / "sl.json"
        assert run(capsys, "vr2sl", files("e.json", gen_exponential_family(6, 4)), out)[0] == 0
        code, res = run(capsys, "stats", out)
        # x(6) = 1+2+4+8 next to the long boxes at 0
        assert json.loads(res.out)["width"] == "16"


class TestTraceAndMethod:
    def test_trace_bounds(self, capsys, files, tmp_path):
        trace = tmp_path / "trace.json"
        code, _ = run(capsys, "vr2sl", files("e.json", gen_exponential_family(6, 4)), tmp_path / "o.json",
                      "--trace-bounds", trace)
        assert code == 0
        recs = json.loads(trace.read_text())
        assert [r["x"] for r in recs if r["vertex"] >= 2] == ["1", "3", "7", "15"]

    @pytest.mark.parametrize("method", ["xl", "sweep", "lp"])
    def test_method(self, capsys, files, method):
        assert run(capsys, "vr2sl", files("t.json", triangle_vr()), "--method", method)[0] == 0


class TestRender:
    def test_deterministic(self, capsys, files):
        src = files("t.json", triangle_vr())
        a = run(capsys, "render-svg", src)[1].out
        b = run(capsys, "render-svg", src)[1].out
        assert a == b and a.startswith("<svg")

    def test_scale(self, capsys, files):
        src = files("t.json", triangle_vr())
        small = run(capsys, "render-svg", src, "--scale", 5)[1].out
        big = run(capsys, "render-svg", src, "--scale", 50)[1].out
        assert small != big


class TestValidateJobs:
    def test_parallel(self, capsys, files):
        paths = [files(f"{i}.json", gen_random_straightline(GenConfig(seed=i))) for i in range(4)]
        paths.append(files("x.json", CROSSING))
        code, out = run(capsys, "validate", "--jobs", 2, *paths)
        lines = [json.loads(s) for s in out.out.splitlines()]
        assert code == 1
        assert [d["file"] for d in lines] == paths
        assert [d["ok"] for d in lines] == [True] * 4 + [False]
