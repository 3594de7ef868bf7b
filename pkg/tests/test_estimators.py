import numpy as np
import pytest
from sklearn.base import clone

from entroglyph.datasets import glyph_ranking_table
from entroglyph.estimators import BradleyTerryRanker, VarianceGlyphEncoder


class TestVarianceGlyphEncoder:
    def test_fit_learns_bounds(self):
        enc = VarianceGlyphEncoder(level_count=5, base_frequency=3.0)
        enc.fit([0.2, 1.0, 4.0, np.nan])
        assert (enc.v_min_, enc.v_max_) == (0.2, 4.0)
        assert len(enc.scale_) == 5

    def test_transform_levels_and_missing(self):
        enc = VarianceGlyphEncoder(level_count=5, base_frequency=3.0)
        enc.fit([0.0, 4.0])
        out = enc.transform([0.0, 4.0, np.nan, 1.9, 2.0])
        assert out[0] == 0.0
        assert out[1] == 4.0
        assert np.isnan(out[2])
        assert (out[3], out[4]) == (2.0, 2.0)

    def test_fit_transform_column_vector(self):
        enc = VarianceGlyphEncoder(level_count=5, base_frequency=3.0)
        out = enc.fit_transform(np.array([[0.0], [4.0], [2.0]]))
        assert out.shape == (3,)

    def test_transform_before_fit_rejected(self):
        with pytest.raises(RuntimeError):
            VarianceGlyphEncoder().transform([1.0])

    def test_degenerate_range_rejected(self):
        with pytest.raises(ValueError):
            VarianceGlyphEncoder().fit([2.0, 2.0])

    def test_negative_variance_rejected(self):
        with pytest.raises(ValueError):
            VarianceGlyphEncoder().fit([-1.0, 2.0])

    def test_get_params_round_trip(self):
        enc = VarianceGlyphEncoder(level_count=5, spacing="log")
        params = enc.get_params()
        assert params["level_count"] == 5
        assert params["spacing"] == "log"
        cloned = clone(enc)
        assert cloned.get_params() == params

    def test_sklearn_pipeline_composition(self):
        from sklearn.pipeline import Pipeline
        pipe = Pipeline([
            ("encode", VarianceGlyphEncoder(level_count=5, base_frequency=3.0)),
        ])
        out = pipe.fit_transform([0.0, 1.0, 4.0])
        assert list(out) == [0.0, 1.0, 4.0]


class TestBradleyTerryRanker:
    def test_fit_on_table(self):
        ranker = BradleyTerryRanker(reference="A").fit(glyph_ranking_table())
        assert ranker.ranking_[0] == "G"
        assert ranker.abilities_["A"] == 0.0
        assert ranker.result_.pseudo_r2 > 0.8

    def test_fit_on_row_tuples(self):
        ranker = BradleyTerryRanker(reference="A").fit(
            [("A", "B", 19, 19), ("B", "C", 10, 28), ("A", "C", 8, 30)])
        assert set(ranker.abilities_) == {"A", "B", "C"}

    def test_predict_proba(self):
        ranker = BradleyTerryRanker(reference="A").fit(glyph_ranking_table())
        probs = ranker.predict_proba([("G", "A"), ("A", "G"), ("D", "D")])
        assert probs[0] + probs[1] == pytest.approx(1.0)
        assert probs[2] == pytest.approx(0.5)
        assert probs[0] > 0.9

    def test_predict_before_fit_rejected(self):
        with pytest.raises(RuntimeError):
            BradleyTerryRanker().predict_proba([("A", "B")])

    def test_clone_keeps_params(self):
        ranker = BradleyTerryRanker(reference="C", max_iter=123)
        assert clone(ranker).get_params()["max_iter"] == 123
