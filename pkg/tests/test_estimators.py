import pytest
from sklearn.base import clone
from sklearn.pipeline import make_pipeline

from hpdraw.estimators import (
    OrthoToPolyline,
    OrthoToVR,
    PolyToOrtho,
    RedundantColumnRemover,
    UpwardToVerticalVR,
    VerticalVRToUpward,
    VRToStraightLine,
)
from hpdraw.generators import GenConfig, gen_random_straightline, gen_random_upward
from hpdraw.model import DrawingError, metrics
from hpdraw.orthogonal import ortho_to_vr, poly_to_ortho
from hpdraw.validation import same_rows_and_orders
from hpdraw.visibility import vr_to_straightline
from conftest import triangle_vr


def test_pipeline_matches_functions():
    sl = gen_random_straightline(GenConfig(seed=11, n=14, h=5))
    pipe = make_pipeline(PolyToOrtho(), OrthoToVR(), VRToStraightLine())
    out = pipe.fit_transform(sl)
    assert out == vr_to_straightline(ortho_to_vr(poly_to_ortho(sl)))


def test_lists():
    batch = [gen_random_straightline(GenConfig(seed=s, n=8)) for s in range(3)]
    out = make_pipeline(PolyToOrtho(), RedundantColumnRemover(), OrthoToPolyline()).fit_transform(batch)
    assert len(out) == 3
    for a, b in zip(batch, out):
        assert same_rows_and_orders(a, b) and metrics(a).height == metrics(b).height


def test_params_and_clone():
    est = VRToStraightLine(method="sweep", verify=False)
    assert est.get_params() == {"method": "sweep", "verify": False, "normalize": True}
    c = clone(est).set_params(method="lp")
    assert c.method == "lp" and est.method == "sweep"


def test_fit_checks_style():
    with pytest.raises(DrawingError):
        OrthoToVR().fit(gen_random_straightline(GenConfig(seed=1)))


def test_fit_records_count():
    assert OrthoToVR().fit([triangle_vr(), triangle_vr()]).n_drawings_seen_ == 2


def test_transform_without_fit():
    assert VRToStraightLine().transform(triangle_vr()).style == "straightline"


def test_upward_pair():
    ud = gen_random_upward(GenConfig(seed=8, n=12, h=4))
    out = make_pipeline(UpwardToVerticalVR(), VerticalVRToUpward()).fit_transform(ud)
    assert same_rows_and_orders(ud, out)
