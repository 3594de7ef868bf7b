"""Deterministic flat-color SVG output for glyphs and sensor scenes.

The emitted documents use a small SVG 1.1 subset (circle, path, text,
group, image) with solid fills only: no gradients, filters or scripts,
so a glyph's colors always equal the color map's band colors. Identical
input produces byte-identical output.
"""

from __future__ import annotations

import json
import re
from bisect import bisect_right
from dataclasses import dataclass

from .errors import PlacementOutOfCanvas
from .geometry import (
    Circle,
    GlyphGeometry,
    GlyphProportions,
    Polygon,
    assemble_glyph,
)
from .ingest import SensorSummary, summary_from_dict, summary_to_dict
from .scale import UncertaintyScale, map_uncertainty, scale_from_json, scale_to_json

__all__ = [
    "ColorMap",
    "DEFAULT_TEMPERATURE_MAP",
    "Placement",
    "SceneSpec",
    "value_to_color",
    "render_glyph",
    "render_scene",
    "scene_to_json",
    "scene_from_json",
]

_HEX_COLOR = re.compile(r"^#[0-9a-fA-F]{6}$")


@dataclass(frozen=True)
class ColorMap:
    """Discrete banded color scale: stop i colors [threshold_i, threshold_i+1)."""

    name: str
    stops: tuple  # ((threshold, "#rrggbb"), ...)

    def __post_init__(self):
        stops = tuple((float(t), str(c)) for t, c in self.stops)
        object.__setattr__(self, "stops", stops)
        if len(stops) < 2:
            raise ValueError("a color map needs at least 2 stops")
        thresholds = [t for t, _ in stops]
        if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
            raise ValueError("thresholds must be strictly increasing")
        for _, color in stops:
            if not _HEX_COLOR.match(color):
                raise ValueError(f"bad color {color!r}, want #rrggbb")


# Approximation of a public temperature banding (deep blues through reds);
# the authoritative broadcast palette is not published, so treat this as a
# stand-in and pass a project palette where fidelity matters.
DEFAULT_TEMPERATURE_MAP = ColorMap("temperature-bands-approx", (
    (-16.0, "#2a2e80"),
    (-12.0, "#31409f"),
    (-8.0, "#3a5cc0"),
    (-4.0, "#3f83c9"),
    (0.0, "#4fa8c6"),
    (4.0, "#6fc4b4"),
    (8.0, "#9ed383"),
    (12.0, "#d9d548"),
    (16.0, "#f2b02e"),
    (20.0, "#ef7f21"),
    (24.0, "#e3511e"),
    (28.0, "#c82c20"),
    (32.0, "#9c1c24"),
))


def value_to_color(v: float, color_map: ColorMap = DEFAULT_TEMPERATURE_MAP) -> str:
    """Color of the band containing ``v``; ends clamp (lower-inclusive bands)."""
    thresholds = [t for t, _ in color_map.stops]
    idx = bisect_right(thresholds, v) - 1
    idx = max(0, min(len(color_map.stops) - 1, idx))
    return color_map.stops[idx][1]


@dataclass(frozen=True)
class Placement:
    summary: SensorSummary
    position: tuple        # (x, y) canvas px, glyph center
    diameter: float        # px

    def __post_init__(self):
        object.__setattr__(self, "position",
                           (float(self.position[0]), float(self.position[1])))
        if self.diameter <= 0:
            raise ValueError("diameter must be positive")


@dataclass(frozen=True)
class SceneSpec:
    """Everything needed to render one multi-glyph scene."""

    canvas: tuple          # (width, height) px
    placements: tuple
    scale: UncertaintyScale
    color_map: ColorMap = DEFAULT_TEMPERATURE_MAP
    show_labels: bool = True
    background: str | None = None
    proportions: GlyphProportions = GlyphProportions()

    def __post_init__(self):
        object.__setattr__(self, "canvas",
                           (float(self.canvas[0]), float(self.canvas[1])))
        object.__setattr__(self, "placements", tuple(self.placements))
        if self.canvas[0] <= 0 or self.canvas[1] <= 0:
            raise ValueError("canvas must have positive size")


def _fmt(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


def _escape(text: str) -> str:
    return (text.replace("&", "&amp;").replace("<", "&lt;")
            .replace(">", "&gt;"))


def _shape_svg(shape, out: list) -> None:
    if isinstance(shape, Circle):
        out.append(f'<circle cx="{_fmt(shape.cx)}" cy="{_fmt(shape.cy)}" '
                   f'r="{_fmt(shape.radius)}" fill="{shape.fill}"/>')
    elif isinstance(shape, Polygon):
        points = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in shape.vertices)
        path = "M" + points.replace(" ", " L") + " Z"
        out.append(f'<path d="{path}" fill="{shape.fill}"/>')
    else:
        raise TypeError(f"unknown shape {type(shape).__name__}")


def _glyph_svg(geometry: GlyphGeometry, out: list,
               label_color: str = "#222222") -> None:
    for layer in geometry.layers:
        _shape_svg(layer, out)
    if geometry.null_marker:
        for shape in geometry.null_marker:
            _shape_svg(shape, out)
    if geometry.label is not None:
        size = 0.18 * geometry.diameter
        out.append(
            f'<text x="0" y="0" text-anchor="middle" '
            f'dominant-baseline="central" font-family="sans-serif" '
            f'font-size="{_fmt(size)}" fill="{label_color}">'
            f'{_escape(geometry.label)}</text>')


def render_glyph(geometry: GlyphGeometry, out_px: float = 256.0) -> bytes:
    """Render a single glyph to a standalone SVG document."""
    d = geometry.diameter
    half = _fmt(d / 2.0)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(out_px)}" '
        f'height="{_fmt(out_px)}" viewBox="-{half} -{half} {_fmt(d)} {_fmt(d)}">',
    ]
    _glyph_svg(geometry, parts)
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


def render_scene(spec: SceneSpec) -> bytes:
    """Render one glyph group per placement over an optional background.

    Wave level comes from the placement's variance through the scene
    scale (missing variance draws the null glyph); disc color comes from
    the mean through the color map.
    """
    width, height = spec.canvas
    for p in spec.placements:
        x, y = p.position
        r = p.diameter / 2.0
        if x - r < 0 or y - r < 0 or x + r > width or y + r > height:
            raise PlacementOutOfCanvas(
                f"glyph for {p.summary.sensor_id!r} at ({x}, {y}) "
                f"d={p.diameter} exceeds canvas {width}x{height}")

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
    ]
    if spec.background is not None:
        parts.append(f'<image href="{_escape(spec.background)}" x="0" y="0" '
                     f'width="{_fmt(width)}" height="{_fmt(height)}"/>')
    for p in spec.placements:
        level_index = map_uncertainty(p.summary.variance, spec.scale)
        level = None if level_index is None else spec.scale.levels[level_index]
        color = value_to_color(p.summary.mean, spec.color_map)
        label = f"{p.summary.mean:g}" if spec.show_labels else None
        prop = GlyphProportions(
            diameter=p.diameter,
            ring_band=spec.proportions.ring_band,
            wave_mean_radius=spec.proportions.wave_mean_radius,
            wave_amplitude=spec.proportions.wave_amplitude,
            disc_radius=spec.proportions.disc_radius)
        geometry = assemble_glyph(level, color, label, prop)
        x, y = p.position
        parts.append(f'<g transform="translate({_fmt(x)} {_fmt(y)})">')
        _glyph_svg(geometry, parts)
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts).encode("utf-8")


# --- scene spec JSON -------------------------------------------------------

def scene_to_json(spec: SceneSpec) -> str:
    doc = {
        "canvas": {"width": spec.canvas[0], "height": spec.canvas[1]},
        "placements": [
            {"summary": summary_to_dict(p.summary),
             "position": list(p.position), "diameter": p.diameter}
            for p in spec.placements
        ],
        "scale": json.loads(scale_to_json(spec.scale)),
        "color_map": {"name": spec.color_map.name,
                      "stops": [list(s) for s in spec.color_map.stops]},
        "show_labels": spec.show_labels,
        "background": spec.background,
        "proportions": {
            "diameter": spec.proportions.diameter,
            "ring_band": spec.proportions.ring_band,
            "wave_mean_radius": spec.proportions.wave_mean_radius,
            "wave_amplitude": spec.proportions.wave_amplitude,
            "disc_radius": spec.proportions.disc_radius,
        },
    }
    return json.dumps(doc, indent=2)


def scene_from_json(text: str) -> SceneSpec:
    doc = json.loads(text)
    placements = tuple(
        Placement(summary_from_dict(entry["summary"]),
                  tuple(entry["position"]), float(entry["diameter"]))
        for entry in doc["placements"]
    )
    cm = doc.get("color_map")
    color_map = (ColorMap(cm["name"], tuple(tuple(s) for s in cm["stops"]))
                 if cm else DEFAULT_TEMPERATURE_MAP)
    prop_doc = doc.get("proportions")
    proportions = (GlyphProportions(**prop_doc) if prop_doc
                   else GlyphProportions())
    return SceneSpec(
        (doc["canvas"]["width"], doc["canvas"]["height"]),
        placements,
        scale_from_json(json.dumps(doc["scale"])),
        color_map,
        bool(doc.get("show_labels", True)),
        doc.get("background"),
        proportions,
    )
