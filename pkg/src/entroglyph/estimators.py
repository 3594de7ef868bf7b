"""scikit-learn compatible estimators wrapping the core operations.

``VarianceGlyphEncoder`` learns the variance range from data and
transforms variance values to glyph level indices, so the uncertainty
encoding drops into sklearn pipelines; ``BradleyTerryRanker`` wraps the
paired-comparison fit with the usual fit/attributes surface.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .analysis.bradley_terry import (
    ComparisonRow,
    PairComparisonTable,
    bt_fit,
)
from .entropy import SampEnParams
from .scale import build_scale, map_uncertainty

__all__ = ["VarianceGlyphEncoder", "BradleyTerryRanker"]


def _as_variance_vector(X) -> np.ndarray:
    """Flatten (n,) or (n, 1) input to a float vector; NaN marks missing."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected shape (n,) or (n, 1), got {arr.shape}")
    if np.any(np.isinf(arr)):
        raise ValueError("variance values must be finite or NaN")
    if np.any(arr[np.isfinite(arr)] < 0):
        raise ValueError("variance values must be non-negative")
    return arr


class VarianceGlyphEncoder(BaseEstimator, TransformerMixin):
    """Quantize variances onto an entropy-ordered glyph scale.

    ``fit`` builds the scale and learns [v_min, v_max] from the finite
    values seen; ``transform`` returns level indices as floats with NaN
    for missing (NaN) variances, which render as the null glyph.

    Parameters
    ----------
    level_count, base_frequency, amplitude, sample_count :
        Passed to the scale builder (frequency doubles per level).
    spacing : "linear" or "log"
        Bin spacing over the learned range.
    """

    def __init__(self, level_count=7, base_frequency=1.5, amplitude=1.0,
                 sample_count=360, spacing="linear"):
        self.level_count = level_count
        self.base_frequency = base_frequency
        self.amplitude = amplitude
        self.sample_count = sample_count
        self.spacing = spacing

    def fit(self, X, y=None):
        values = _as_variance_vector(X)
        finite = values[np.isfinite(values)]
        if finite.size == 0:
            raise ValueError("need at least one finite variance to fit")
        v_min, v_max = float(finite.min()), float(finite.max())
        if v_min == v_max:
            raise ValueError(
                "degenerate variance range; set bounds explicitly via "
                "UncertaintyScale.with_bounds")
        scale = build_scale(self.level_count, self.base_frequency,
                            self.amplitude, self.sample_count,
                            SampEnParams())
        self.scale_ = scale.with_bounds(v_min, v_max, self.spacing)
        self.v_min_ = v_min
        self.v_max_ = v_max
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "scale_"):
            raise RuntimeError("encoder is not fitted")
        values = _as_variance_vector(X)
        out = np.empty(values.size, dtype=float)
        for i, v in enumerate(values):
            level = map_uncertainty(None if np.isnan(v) else float(v),
                                    self.scale_)
            out[i] = np.nan if level is None else float(level)
        return out


class BradleyTerryRanker(BaseEstimator):
    """Paired-comparison ranking model.

    ``fit`` accepts a PairComparisonTable or an iterable of
    (left, right, chose_left, chose_right) rows. Fitted attributes:
    ``result_`` (full statistics), ``abilities_`` and ``ranking_``.
    """

    def __init__(self, reference=None, max_iter=500, tol=1e-10):
        self.reference = reference
        self.max_iter = max_iter
        self.tol = tol

    def fit(self, X, y=None):
        if isinstance(X, PairComparisonTable):
            table = X
        else:
            table = PairComparisonTable(tuple(
                ComparisonRow(left, right, int(wl), int(wr))
                for left, right, wl, wr in X))
        self.result_ = bt_fit(table, self.reference, self.max_iter, self.tol)
        self.abilities_ = dict(self.result_.abilities)
        self.ranking_ = self.result_.ranking()
        return self

    def predict_proba(self, pairs) -> np.ndarray:
        """P(left beats right) for each (left, right) pair."""
        if not hasattr(self, "result_"):
            raise RuntimeError("ranker is not fitted")
        return np.array([self.result_.win_probability(left, right)
                         for left, right in pairs])
