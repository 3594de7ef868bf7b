import math

import numpy as np
import pytest
from shapely.geometry import Polygon as ShapelyPolygon

from entroglyph.entropy import generate_message
from entroglyph.errors import InvalidProportions, RadiusUnderflow
from entroglyph.geometry import (
    Circle,
    DisplayGeometry,
    GlyphProportions,
    Polygon,
    assemble_glyph,
    encode_polar,
    max_cycles,
    null_glyph,
    wave_diameter_for_cycles,
)
from entroglyph.scale import build_scale
from oracles import display_inversion_oracle


class TestEncodePolar:
    def test_constant_zero_yields_circle(self):
        outline = encode_polar(generate_message(0, 1.0, 360), 10.0)
        assert outline.vertices.shape == (360, 2)
        assert outline.closed
        assert np.allclose(outline.radii(), 10.0, atol=1e-12)

    def test_six_cycles_have_six_maxima(self):
        outline = encode_polar(generate_message(6, 1.0, 360), 10.0)
        r = outline.radii()
        maxima = sum(
            1 for i in range(len(r))
            if r[i] > r[i - 1] and r[i] > r[(i + 1) % len(r)])
        assert maxima == 6

    def test_first_vertex_on_positive_x_axis(self):
        signal = generate_message(5, 0.8, 90)
        outline = encode_polar(signal, 4.0)
        assert outline.vertices[0] == pytest.approx(
            (4.0 + signal.samples[0], 0.0))

    def test_counter_clockwise_start(self):
        outline = encode_polar(generate_message(0, 1.0, 360), 1.0)
        # second vertex at +1 degree: positive y
        assert outline.vertices[1][1] > 0

    def test_radii_within_band(self):
        signal = generate_message(12, 3.0, 360)
        r = encode_polar(signal, 10.0).radii()
        assert np.all(r >= 7.0 - 1e-9)
        assert np.all(r <= 13.0 + 1e-9)

    def test_vertex_count_matches_signal(self):
        assert encode_polar(generate_message(2, 1.0, 73), 5.0).vertices.shape[0] == 73

    def test_radius_underflow(self):
        with pytest.raises(RadiusUnderflow):
            encode_polar(generate_message(3, 2.0, 60), 2.0)

    def test_default_wave_outlines_are_simple(self):
        for k in (1.5, 3, 6, 12, 24, 48):
            outline = encode_polar(generate_message(k, 5.0, 360), 40.0)
            assert ShapelyPolygon(outline.vertices).is_valid


class TestProportions:
    def test_defaults_valid(self):
        prop = GlyphProportions()
        assert prop.wave_mean_radius + prop.wave_amplitude <= 0.5

    def test_wave_exiting_ring_rejected(self):
        with pytest.raises(InvalidProportions):
            GlyphProportions(wave_mean_radius=0.48, wave_amplitude=0.08)

    def test_fraction_range_enforced(self):
        with pytest.raises(InvalidProportions):
            GlyphProportions(disc_radius=0.0)
        with pytest.raises(InvalidProportions):
            GlyphProportions(ring_band=0.6)

    def test_bad_diameter(self):
        with pytest.raises(InvalidProportions):
            GlyphProportions(diameter=0)


@pytest.fixture(scope="module")
def scale():
    return build_scale()


class TestAssembleGlyph:
    def test_level_zero_layer_sizes(self, scale):
        g = assemble_glyph(scale.levels[0], "#aabbcc",
                           prop=GlyphProportions(diameter=100))
        dark, light, value = g.layers
        assert g.kind == "flat"
        assert (dark.radius, light.radius, value.radius) == (50.0, 40.0, 30.0)
        assert isinstance(light, Circle)

    def test_wave_level_radius_band(self, scale):
        level = next(lv for lv in scale.levels if lv.frequency == 12)
        g = assemble_glyph(level, "#aabbcc", prop=GlyphProportions(diameter=100))
        assert g.kind == "wave"
        light = g.layers[1]
        assert isinstance(light, Polygon)
        radii = np.hypot(light.vertices[:, 0], light.vertices[:, 1])
        # oscillates through most of the 40 +/- 5 band without leaving it
        assert 35.0 - 1e-9 <= radii.min() < 35.1
        assert 44.9 < radii.max() <= 45.0 + 1e-9

    def test_wave_band_touched_exactly_when_grid_hits_extrema(self, scale):
        level = next(lv for lv in scale.levels if lv.frequency == 6)
        g = assemble_glyph(level, "#aabbcc", prop=GlyphProportions(diameter=100))
        radii = np.hypot(g.layers[1].vertices[:, 0], g.layers[1].vertices[:, 1])
        assert radii.min() == pytest.approx(35.0, abs=1e-9)
        assert radii.max() == pytest.approx(45.0, abs=1e-9)

    def test_null_case(self):
        g = assemble_glyph(None, "#aabbcc")
        assert g.kind == "null"
        assert g.null_marker is not None
        assert not any(isinstance(layer, Polygon) for layer in g.layers)

    def test_value_disc_color(self, scale):
        g = assemble_glyph(scale.levels[3], "#123456")
        assert g.layers[2].fill == "#123456"

    def test_label_carried(self, scale):
        g = assemble_glyph(scale.levels[0], "#aabbcc", label="13.5")
        assert g.label == "13.5"

    def test_deterministic(self, scale):
        a = assemble_glyph(scale.levels[4], "#aabbcc")
        b = assemble_glyph(scale.levels[4], "#aabbcc")
        assert np.array_equal(a.layers[1].vertices, b.layers[1].vertices)
        assert a.layers[0] == b.layers[0]
        assert a.layers[2] == b.layers[2]


class TestNullGlyph:
    def test_marker_in_dark_color(self):
        g = null_glyph("#aabbcc", dark_color="#101010")
        assert all(shape.fill == "#101010" for shape in g.null_marker)
        assert g.layers[0].fill == "#101010"

    def test_value_disc_keeps_data_color(self):
        g = null_glyph("#e3511e")
        assert g.layers[2].fill == "#e3511e"

    def test_shares_no_wave_layer_with_scale_levels(self):
        scale = build_scale()
        null = null_glyph("#aabbcc")
        null_shapes = list(null.layers) + list(null.null_marker)
        # the only polygon in the null glyph is the straight-edged marker
        # bar; no layer is a radius-modulated outline
        assert not any(isinstance(layer, Polygon) for layer in null.layers)
        for level in scale.levels[1:]:
            wave = assemble_glyph(level, "#aabbcc").layers[1]
            assert not any(
                isinstance(s, Polygon)
                and s.vertices.shape == wave.vertices.shape
                and np.array_equal(s.vertices, wave.vertices)
                for s in null_shapes)


class TestMaxCycles:
    def test_one_degree_at_10cpd(self):
        # pick the pixel size that subtends exactly 1 degree at 500 mm
        size_mm = 2 * 500 * math.tan(math.radians(0.5))
        d = DisplayGeometry(1.0, 500.0, size_mm, 10.0)
        assert max_cycles(d) == pytest.approx(10 * math.pi, rel=1e-12)

    def test_small_angle_doubling(self):
        d1 = DisplayGeometry(0.094, 500.0, 40.0)
        d2 = DisplayGeometry(0.094, 500.0, 80.0)
        ratio = max_cycles(d2) / max_cycles(d1)
        assert ratio == pytest.approx(2.0, rel=5e-3)

    def test_monotonicity(self):
        base = DisplayGeometry(0.094, 500.0, 71.0, 10.0)
        assert max_cycles(DisplayGeometry(0.094, 500.0, 90.0, 10.0)) > max_cycles(base)
        assert max_cycles(DisplayGeometry(0.094, 500.0, 71.0, 12.0)) > max_cycles(base)
        assert max_cycles(DisplayGeometry(0.094, 700.0, 71.0, 10.0)) < max_cycles(base)

    def test_inversion_round_trip(self):
        px = wave_diameter_for_cycles(24.0, 0.094, 500.0)
        d = DisplayGeometry(0.094, 500.0, px)
        assert max_cycles(d) == pytest.approx(24.0, rel=1e-12)

    def test_inversion_against_root_finding_oracle(self):
        ours = wave_diameter_for_cycles(24.0, 0.094, 500.0)
        oracle = display_inversion_oracle(24.0, 0.094, 500.0)
        assert ours == pytest.approx(oracle, abs=1e-6)

    def test_display_validation(self):
        with pytest.raises(ValueError):
            DisplayGeometry(0.0, 500.0, 71.0)
