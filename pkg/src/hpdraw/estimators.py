"""scikit-learn style wrappers around the transformations.

Every transformer is stateless: ``fit`` only validates its input and
returns ``self``; ``transform`` maps one drawing (or a list of drawings) to
the converted drawing(s). They compose with :class:`sklearn.pipeline.Pipeline`::

    make_pipeline(PolyToOrtho(), OrthoToVR(), VRToStraightLine()).fit_transform(pl)
"""

from __future__ import annotations

from sklearn.base import BaseEstimator, TransformerMixin

from .orthogonal import ortho_to_vr, poly_to_ortho, remove_redundant_columns
from .upward import upward_to_vertical_vr, vertical_vr_to_upward
from .validation import check_drawing
from .visibility import ortho_to_polyline, vr_to_straightline

__all__ = [
    "PolyToOrtho",
    "OrthoToVR",
    "VRToStraightLine",
    "OrthoToPolyline",
    "RedundantColumnRemover",
    "UpwardToVerticalVR",
    "VerticalVRToUpward",
]


class _DrawingTransformer(TransformerMixin, BaseEstimator):
    styles: tuple[str, ...] = ()

    def _check(self, X):
        many = isinstance(X, (list, tuple))
        items = list(X) if many else [X]
        for d in items:
            check_drawing(d, self.styles)
        return items, many

    def fit(self, X, y=None):
        self._check(X)
        self.n_drawings_seen_ = len(X) if isinstance(X, (list, tuple)) else 1
        return self

    def transform(self, X):
        items, many = self._check(X)
        out = [self._apply(d) for d in items]
        return out if many else out[0]

    def _apply(self, d):
        raise NotImplementedError

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = False
        return tags


class PolyToOrtho(_DrawingTransformer):
    """Poly-line (or straight-line) drawing to flat orthogonal drawing."""

    styles = ("polyline", "straightline")

    def __init__(self, normalize=True):
        self.normalize = normalize

    def _apply(self, d):
        return poly_to_ortho(d, normalize_output=self.normalize)


class OrthoToVR(_DrawingTransformer):
    """Flat y-monotone orthogonal drawing to flat visibility representation."""

    styles = ("flatortho",)

    def __init__(self, normalize=True):
        self.normalize = normalize

    def _apply(self, d):
        return ortho_to_vr(d, normalize_output=self.normalize)


class VRToStraightLine(_DrawingTransformer):
    styles = ("flatvr",)

    def __init__(self, method="auto", verify=True, normalize=True):
        self.method = method
        self.verify = verify
        self.normalize = normalize

    def _apply(self, d):
        return vr_to_straightline(d, verify=self.verify, normalize_output=self.normalize, method=self.method)


class OrthoToPolyline(_DrawingTransformer):
    styles = ("flatortho",)

    def __init__(self, straighten=True, verify=True, normalize=True):
        self.straighten = straighten
        self.verify = verify
        self.normalize = normalize

    def _apply(self, d):
        return ortho_to_polyline(d, verify=self.verify, normalize_output=self.normalize, straighten=self.straighten)


class RedundantColumnRemover(_DrawingTransformer):
    styles = ("flatortho",)

    def _apply(self, d):
        return remove_redundant_columns(d)


class UpwardToVerticalVR(_DrawingTransformer):
    styles = ("straightline",)

    def __init__(self, normalize=True):
        self.normalize = normalize

    def _apply(self, d):
        return upward_to_vertical_vr(d, normalize_output=self.normalize)


class VerticalVRToUpward(_DrawingTransformer):
    styles = ("vr",)

    def __init__(self, verify=True, normalize=True):
        self.verify = verify
        self.normalize = normalize

    def _apply(self, d):
        return vertical_vr_to_upward(d, verify=self.verify, normalize_output=self.normalize)
