"""Command-line interface: ``hpdraw <subcommand> ...``.

Exit codes: 0 ok, 1 validation failure, 2 usage or configuration error,
3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from . import io as dio
from .generators import (
    GenConfig,
    gen_exponential_family,
    gen_random_flat_ortho,
    gen_random_flat_vr,
    gen_random_polyline,
    gen_random_straightline,
    gen_random_upward,
)
from .model import (
    DrawingError,
    FlatVisibilityRep,
    InternalError,
    StraightLineDrawing,
    TallBox,
    ValidationError,
    VisibilityRep,
    metrics,
)
from .orthogonal import ortho_to_vr, poly_to_ortho, remove_redundant_columns
from .svg import render_svg
from .upward import is_upward, upward_to_vertical_vr, vertical_vr_to_upward
from .validation import row_orders, same_rows_and_orders, validate
from .visibility import METHODS, ortho_to_polyline, trace_to_json, vr_to_straightline

OK, INVALID, USAGE, INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- stages ----------------------------------------------------------------

@dataclass(frozen=True)
class Stage:
    name: str
    accepts: tuple[str, ...]
    output: str | None  # None: same style as the input
    run: Callable


def _as_tall(d):
    if isinstance(d, FlatVisibilityRep):
        return VisibilityRep(d.graph, tuple(TallBox(b.y, b.y, b.xl, b.xr) for b in d.boxes), d.routes, dict(d.meta))
    return d


def _vr2sl(d, opts):
    trace = [] if opts.trace_bounds else None
    out = vr_to_straightline(d, verify=opts.verify, trace=trace, normalize_output=opts.normalize, method=opts.method)
    if trace is not None:
        Path(opts.trace_bounds).write_text(json.dumps(trace_to_json(trace), indent=1) + "\n")
    return out


def _upward2vr(d, opts):
    if not d.graph.directed or not is_upward(d):
        raise ValidationError("input is not an upward drawing of a directed graph")
    return upward_to_vertical_vr(d, normalize_output=opts.normalize)


STAGES = {
    s.name: s
    for s in (
        Stage("pl2od", ("polyline", "straightline"), "flatortho",
              lambda d, o: poly_to_ortho(d, normalize_output=o.normalize)),
        Stage("od2vr", ("flatortho", "flatvr"), "flatvr", lambda d, o: ortho_to_vr(d, normalize_output=o.normalize)),
        Stage("vr2sl", ("flatvr",), "straightline", _vr2sl),
        Stage("od2pl", ("flatortho", "flatvr"), "polyline",
              lambda d, o: ortho_to_polyline(d, verify=o.verify, normalize_output=o.normalize)),
        Stage("compact", ("flatortho", "flatvr"), None, lambda d, o: remove_redundant_columns(d)),
        Stage("upward2vr", ("straightline",), "vr", _upward2vr),
        Stage("vr2upward", ("vr", "flatvr"), "straightline",
              lambda d, o: vertical_vr_to_upward(_as_tall(d), verify=o.verify, normalize_output=o.normalize)),
    )
}


def check_stages(names: list[str], style: str) -> list[Stage]:
    """Resolve stage names and check that adjacent stages fit together."""
    stages = []
    for name in names:
        if name not in STAGES:
            raise UsageError(f"unknown stage {name!r}; choose from {', '.join(STAGES)}")
        stage = STAGES[name]
        if style not in stage.accepts:
            raise UsageError(f"stage {name} cannot take a {style} drawing")
        style = stage.output or style
        stages.append(stage)
    return stages


def _check_stage(stage: Stage, before, after):
    if stage.name == "vr2upward":
        if metrics(after).height > metrics(before).height:
            raise InternalError("vr2upward: height grew")
        flat = all(b.y0 == b.y1 for b in _as_tall(before).boxes)
        if flat and not same_rows_and_orders(_as_tall(before), after):
            raise InternalError("vr2upward: rows or row orders changed")
        return
    if metrics(after).height != metrics(before).height:
        raise InternalError(f"{stage.name}: height changed")
    if not same_rows_and_orders(_as_tall(before) if stage.name == "upward2vr" else before, after):
        raise InternalError(f"{stage.name}: rows or row orders changed")
    report = validate(after)
    if not report.ok:
        v = report.violations[0]
        raise InternalError(f"{stage.name}: invalid output ({v.kind} {v.elements})")


def run_stages(d, stages: list[Stage], opts, on_stage=None):
    for i, stage in enumerate(stages):
        try:
            out = stage.run(d, opts)
        except InternalError as ex:
            raise InternalError(f"{stage.name}: {ex}") from ex
        if opts.verify:
            _check_stage(stage, d, out)
        if on_stage is not None:
            on_stage(i, stage, out)
        d = out
    return d


# -- helpers ---------------------------------------------------------------

def _load(path: str):
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return dio.load(data)


def _write(text: str | bytes, path: str | None):
    if isinstance(text, str):
        text = text.encode()
    if path in (None, "-"):
        sys.stdout.buffer.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(text)


def stats(d) -> dict:
    m = metrics(d)
    rows = row_orders(d)
    return {
        "height": str(m.height),
        "width": str(m.width),
        "bends": m.bends,
        "n": d.graph.n,
        "m": d.graph.m,
        "rows": {str(y): len(rows[y]) for y in sorted(rows)},
    }


def _validate_one(path: str) -> tuple[str, dict, bool]:
    try:
        d = dio.load(Path(path).read_bytes(), validate=False)
    except DrawingError as ex:
        return path, {"ok": False, "error": str(ex)}, False
    report = validate(d)
    doc = report.to_json()
    doc["style"] = d.style
    return path, doc, report.ok


GENERATORS = {
    "straightline": gen_random_straightline,
    "polyline": gen_random_polyline,
    "flatortho": gen_random_flat_ortho,
    "flatvr": gen_random_flat_vr,
    "upward": gen_random_upward,
}


def _gen_one(args) -> bytes:
    style, n, h, seed, m, family = args
    if family == "exp":
        d = gen_exponential_family(n, h)
    else:
        d = GENERATORS[style](GenConfig(seed=seed, n=n, h=h, m=m))
    return dio.save(d)


# -- commands --------------------------------------------------------------

def cmd_validate(a) -> int:
    with ProcessPoolExecutor(a.jobs) if a.jobs > 1 and len(a.files) > 1 else _Serial() as ex:
        results = list(ex.map(_validate_one, a.files))
    ok = True
    for path, doc, good in results:
        ok = ok and good
        print(json.dumps({"file": path, **doc}, sort_keys=True))
    return OK if ok else INVALID


def cmd_gen(a) -> int:
    if a.family == "exp":
        if a.n < 5 or a.height < 4:
            raise UsageError("--family exp needs --n >= 5 and --height >= 4")
    elif a.style not in GENERATORS:
        raise UsageError(f"--style must be one of {', '.join(GENERATORS)}")
    seed = a.seed if a.seed is not None else 0
    if a.count == 1:
        _write(_gen_one((a.style, a.n, a.height, seed, a.m, a.family)), a.output)
        return OK
    if not a.out_dir:
        raise UsageError("--count > 1 needs --out-dir")
    out = Path(a.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    jobs = [(a.style, a.n, a.height, seed + k, a.m, a.family) for k in range(a.count)]
    with ProcessPoolExecutor(a.jobs) if a.jobs > 1 else _Serial() as ex:
        for k, data in enumerate(ex.map(_gen_one, jobs)):
            (out / f"{a.style}-{seed + k}.json").write_bytes(data)
    return OK


def cmd_transform(a) -> int:
    d = _load(a.input)
    stages = check_stages([a.command], d.style)
    _write(dio.save(run_stages(d, stages, a)), a.output)
    return OK


def cmd_pipeline(a) -> int:
    d = _load(a.input)
    names = [s for s in (a.stages or "").split(",") if s]
    stages = check_stages(names, d.style)
    hook = None
    if a.emit_intermediates:
        folder = Path(a.emit_intermediates)
        folder.mkdir(parents=True, exist_ok=True)

        def hook(i, stage, out):
            (folder / f"{i + 1:02d}-{stage.name}.json").write_bytes(dio.save(out))

    _write(dio.save(run_stages(d, stages, a, hook)), a.output)
    return OK


def cmd_stats(a) -> int:
    print(json.dumps(stats(_load(a.input)), sort_keys=True))
    return OK


def cmd_render(a) -> int:
    compress = None if a.compress_above <= 0 else a.compress_above
    _write(render_svg(_load(a.input), scale=a.scale, compress_above=compress), a.output)
    return OK


class _Serial:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def map(self, fn, items):
        return map(fn, items)


# -- parser ----------------------------------------------------------------

def _common(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=["json"], default=default("json"), help="file format (json only)")
    p.add_argument("--seed", type=int, default=default(None))
    p.add_argument("--no-verify", dest="verify", action="store_false", default=default(True),
                   help="skip the exact output checks")
    p.add_argument("--no-normalize", dest="normalize", action="store_false", default=default(True),
                   help="keep engine coordinates instead of translating to x >= 1")
    p.add_argument("--trace-bounds", metavar="FILE", default=default(None),
                   help="write every lower bound issued by vr2sl as JSON")
    p.add_argument("--jobs", type=int, default=default(1), help="worker processes for batch commands")
    p.add_argument("--method", choices=METHODS, default=default("auto"), help="vertex order used by vr2sl")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hpdraw", description=__doc__.splitlines()[0], parents=[_common(False)], allow_abbrev=False
    )
    sub = parser.add_subparsers(dest="command", metavar="command")
    common = _common(True)

    def add(name, text):
        return sub.add_parser(name, parents=[common], allow_abbrev=False, help=text)

    p = add("validate", "check drawings and print a JSON report per file")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = add("gen", "generate a random drawing")
    p.add_argument("--style", default="straightline", help=", ".join(GENERATORS))
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--height", type=int, default=4)
    p.add_argument("--m", type=int, default=None, help="target edge count")
    p.add_argument("--family", choices=["exp"], default=None, help="the exponential-width flat VR family")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--out-dir", default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_gen)

    helps = {
        "pl2od": "poly-line to flat orthogonal",
        "od2vr": "flat orthogonal to flat visibility representation",
        "vr2sl": "flat visibility representation to straight-line",
        "od2pl": "flat orthogonal to poly-line",
        "compact": "delete redundant columns",
        "upward2vr": "upward drawing to vertical visibility representation",
        "vr2upward": "vertical visibility representation to upward drawing",
    }
    for name, text in helps.items():
        p = add(name, text)
        p.add_argument("input")
        p.add_argument("output", nargs="?", default=None)
        p.set_defaults(func=cmd_transform)

    p = add("pipeline", "run several transformations in a row")
    p.add_argument("input")
    p.add_argument("output", nargs="?", default=None)
    p.add_argument("--stages", default="", help="comma separated, e.g. pl2od,od2vr,vr2sl")
    p.add_argument("--emit-intermediates", metavar="DIR", default=None)
    p.set_defaults(func=cmd_pipeline)

    p = add("stats", "height, width, bends and row counts as JSON")
    p.add_argument("input")
    p.set_defaults(func=cmd_stats)

    p = add("render-svg", "render a drawing as SVG")
    p.add_argument("input")
    p.add_argument("output", nargs="?", default=None)
    p.add_argument("--scale", type=float, default=20.0)
    p.add_argument("--compress-above", type=int, default=200,
                   help="log-compress columns when wider than this (0 disables)")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as ex:
        return USAGE if ex.code else OK
    if not getattr(a, "func", None):
        parser.print_usage(sys.stderr)
        return USAGE
    try:
        return a.func(a)
    except UsageError as ex:
        print(f"hpdraw: {ex}", file=sys.stderr)
        return USAGE
    except (ValidationError, dio.ParseError) as ex:
        print(f"hpdraw: {ex}", file=sys.stderr)
        return INVALID
    except InternalError as ex:
        print(f"hpdraw: internal error: {ex}", file=sys.stderr)
        return INTERNAL
    except DrawingError as ex:
        print(f"hpdraw: {ex}", file=sys.stderr)
        return USAGE
    except OSError as ex:
        print(f"hpdraw: {ex}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
