import json
import re
from datetime import datetime, timedelta, timezone

import pytest

from entroglyph.errors import PlacementOutOfCanvas
from entroglyph.geometry import assemble_glyph, null_glyph
from entroglyph.ingest import SensorSummary
from entroglyph.render import (
    ColorMap,
    DEFAULT_TEMPERATURE_MAP,
    Placement,
    SceneSpec,
    render_glyph,
    render_scene,
    scene_from_json,
    scene_to_json,
    value_to_color,
)
from entroglyph.scale import build_scale, map_uncertainty

T0 = datetime(2019, 7, 1, 10, tzinfo=timezone.utc)
SHAPE_TAGS = re.compile(rb"<(circle|path|polygon|rect)\b")
FORBIDDEN = (b"Gradient", b"filter", b"<script", b"feGaussian", b"url(#")


def summary(sensor="s1", mean=13.5, variance=2.0, count=5):
    return SensorSummary(sensor, T0, T0 + timedelta(hours=1), mean, variance,
                         count)


@pytest.fixture(scope="module")
def bounded_scale():
    return build_scale(5, 3.0).with_bounds(0.0, 4.0)


class TestValueToColor:
    def test_first_threshold_inclusive(self):
        cmap = ColorMap("m", ((0.0, "#000001"), (10.0, "#000002")))
        assert value_to_color(0.0, cmap) == "#000001"

    def test_below_all_clamps_to_first(self):
        cmap = ColorMap("m", ((0.0, "#000001"), (10.0, "#000002")))
        assert value_to_color(-99.0, cmap) == "#000001"

    def test_above_all_clamps_to_last(self):
        cmap = ColorMap("m", ((0.0, "#000001"), (10.0, "#000002")))
        assert value_to_color(99.0, cmap) == "#000002"

    def test_band_membership(self):
        cmap = ColorMap("m", ((0.0, "#000001"), (10.0, "#000002"),
                              (20.0, "#000003")))
        assert value_to_color(9.999, cmap) == "#000001"
        assert value_to_color(10.0, cmap) == "#000002"
        assert value_to_color(19.0, cmap) == "#000002"

    def test_default_map_is_valid_and_used(self):
        assert value_to_color(13.5) == value_to_color(13.5, DEFAULT_TEMPERATURE_MAP)

    def test_color_map_validation(self):
        with pytest.raises(ValueError):
            ColorMap("m", ((0.0, "#000001"),))
        with pytest.raises(ValueError):
            ColorMap("m", ((0.0, "#000001"), (0.0, "#000002")))
        with pytest.raises(ValueError):
            ColorMap("m", ((0.0, "#000001"), (1.0, "red")))


class TestRenderGlyph:
    def test_level_zero_has_exactly_three_shapes(self, bounded_scale):
        doc = render_glyph(assemble_glyph(bounded_scale.levels[0], "#d9d548"))
        assert len(SHAPE_TAGS.findall(doc)) == 3

    def test_label_text_present(self, bounded_scale):
        doc = render_glyph(
            assemble_glyph(bounded_scale.levels[0], "#d9d548", label="13.5"))
        assert b">13.5</text>" in doc
        assert b'font-family="sans-serif"' in doc

    def test_byte_identical_renders(self, bounded_scale):
        g = assemble_glyph(bounded_scale.levels[4], "#d9d548", label="13.5")
        assert render_glyph(g) == render_glyph(g)

    def test_no_gradients_or_filters(self, bounded_scale):
        for level in bounded_scale.levels:
            doc = render_glyph(assemble_glyph(level, "#d9d548"))
            assert not any(tag in doc for tag in FORBIDDEN)

    def test_null_glyph_has_marker_shapes(self):
        doc = render_glyph(null_glyph("#d9d548"))
        # 3 layers + bar + dot
        assert len(SHAPE_TAGS.findall(doc)) == 5

    def test_wave_glyph_path_present_and_closed(self, bounded_scale):
        doc = render_glyph(assemble_glyph(bounded_scale.levels[2], "#d9d548"))
        assert doc.count(b"<path") == 1
        assert b' Z" fill="' in doc


class TestRenderScene:
    def make_spec(self, summaries, scale, **kwargs):
        placements = tuple(
            Placement(s, (100.0 + 150.0 * i, 100.0), 80.0)
            for i, s in enumerate(summaries))
        return SceneSpec((800, 300), placements, scale, **kwargs)

    def test_one_placement_one_group(self, bounded_scale):
        doc = render_scene(self.make_spec([summary()], bounded_scale))
        assert doc.count(b"<g ") == 1

    def test_group_count_equals_placement_count(self, bounded_scale):
        doc = render_scene(self.make_spec(
            [summary(f"s{i}") for i in range(5)], bounded_scale))
        assert doc.count(b"<g ") == 5

    def test_missing_variance_renders_null_glyph(self, bounded_scale):
        with_var = render_scene(self.make_spec(
            [summary(variance=1.0)], bounded_scale))
        without = render_scene(self.make_spec(
            [summary(variance=None, count=1)], bounded_scale))
        # marker adds two extra shapes relative to the flat glyph
        assert len(SHAPE_TAGS.findall(without)) == len(SHAPE_TAGS.findall(with_var)) + 2

    def test_exactly_one_top_level_glyph(self, bounded_scale):
        variances = [0.0, 0.5, 1.0, 2.0, 4.0]
        spec = self.make_spec(
            [summary(f"s{i}", variance=v) for i, v in enumerate(variances)],
            bounded_scale)
        levels = [map_uncertainty(v, bounded_scale) for v in variances]
        assert levels.count(len(bounded_scale) - 1) == 1
        # the top-level wave outline, rendered with the same proportions
        # the scene uses, must appear exactly once
        from entroglyph.geometry import GlyphProportions
        top = assemble_glyph(bounded_scale.levels[-1], "#000000",
                             prop=GlyphProportions(diameter=80.0))
        top_path = re.search(rb'd="([^"]+)"',
                             render_glyph(top)).group(1).decode()
        doc = render_scene(spec).decode()
        assert doc.count(top_path) == 1

    def test_disc_colors_match_value_to_color(self, bounded_scale):
        means = [-5.0, 6.0, 21.0]
        spec = self.make_spec(
            [summary(f"s{i}", mean=m) for i, m in enumerate(means)],
            bounded_scale, show_labels=False)
        doc = render_scene(spec).decode()
        for m in means:
            assert f'fill="{value_to_color(m)}"' in doc

    def test_labels_follow_show_labels_flag(self, bounded_scale):
        on = render_scene(self.make_spec([summary(mean=13.5)], bounded_scale))
        off = render_scene(self.make_spec([summary(mean=13.5)], bounded_scale,
                                          show_labels=False))
        assert b">13.5</text>" in on
        assert b"<text" not in off

    def test_deterministic(self, bounded_scale):
        spec = self.make_spec([summary(f"s{i}") for i in range(3)],
                              bounded_scale)
        assert render_scene(spec) == render_scene(spec)

    def test_background_layer_below_glyphs(self, bounded_scale):
        spec = self.make_spec([summary()], bounded_scale,
                              background="map.png")
        doc = render_scene(spec)
        assert doc.index(b"<image") < doc.index(b"<g ")

    def test_placement_out_of_canvas(self, bounded_scale):
        spec = SceneSpec((200, 200),
                         (Placement(summary(), (190.0, 100.0), 80.0),),
                         bounded_scale)
        with pytest.raises(PlacementOutOfCanvas):
            render_scene(spec)

    def test_no_gradients_or_filters(self, bounded_scale):
        doc = render_scene(self.make_spec(
            [summary("s1"), summary("s2", variance=None, count=1)],
            bounded_scale))
        assert not any(tag in doc for tag in FORBIDDEN)

    def test_scene_json_round_trip_renders_identically(self, bounded_scale):
        spec = self.make_spec([summary(f"s{i}") for i in range(3)],
                              bounded_scale, background="map.png")
        loaded = scene_from_json(scene_to_json(spec))
        assert render_scene(loaded) == render_scene(spec)

    def test_scene_json_fields_mirror_spec(self, bounded_scale):
        spec = self.make_spec([summary()], bounded_scale)
        doc = json.loads(scene_to_json(spec))
        assert set(doc) >= {"canvas", "placements", "scale", "color_map",
                            "show_labels", "background"}
        assert doc["placements"][0]["diameter"] == 80.0
