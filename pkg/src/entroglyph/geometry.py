"""Glyph geometry: polar coding of messages and layered target shapes.

A glyph is drawn as a stack of flat-colored layers: a dark disc spanning
the full diameter, a light layer on top (a circle, or a ring whose outer
boundary is the radius-modulated polygon coded from the message), and a
colored value disc in the middle. The missing-uncertainty variant swaps
the wavy boundary for a plain circle plus an exclamation-style marker so
the two shape families can never be confused.

Coordinates are model units centered on the glyph; the y axis points up
(renderers that draw y-down simply mirror, which leaves the shapes'
appearance unchanged).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import Signal, generate_message
from .errors import InvalidProportions, RadiusUnderflow

__all__ = [
    "GlyphProportions",
    "PolarOutline",
    "Circle",
    "Polygon",
    "GlyphGeometry",
    "DisplayGeometry",
    "DARK_COLOR",
    "LIGHT_COLOR",
    "encode_polar",
    "assemble_glyph",
    "null_glyph",
    "max_cycles",
    "wave_diameter_for_cycles",
]

DARK_COLOR = "#222222"
LIGHT_COLOR = "#f2f2f2"


@dataclass(frozen=True)
class GlyphProportions:
    """Relative layout of the glyph layers.

    All fractional fields are fractions of the total diameter. The two
    outer rings occupy ``ring_band`` of the diameter radially per side,
    split equally between the dark and the light ring, so with the
    defaults the dark ring spans radii [0.40 D, 0.50 D] and the light
    ring [0.30 D, 0.40 D].
    """

    diameter: float = 100.0
    ring_band: float = 0.20
    wave_mean_radius: float = 0.40
    wave_amplitude: float = 0.05
    disc_radius: float = 0.30

    def __post_init__(self):
        if self.diameter <= 0:
            raise InvalidProportions("diameter must be positive")
        for name in ("ring_band", "wave_mean_radius", "wave_amplitude",
                     "disc_radius"):
            v = getattr(self, name)
            if not 0.0 < v <= 0.5:
                raise InvalidProportions(f"{name}={v} outside (0, 0.5]")
        if self.wave_mean_radius + self.wave_amplitude > 0.5:
            raise InvalidProportions(
                "wave would exit the dark ring: wave_mean_radius + "
                "wave_amplitude must not exceed 0.5")


@dataclass(frozen=True, eq=False)
class PolarOutline:
    """Closed outline traced counter-clockwise from angle zero."""

    vertices: np.ndarray  # shape (n, 2)
    closed: bool = True

    def __post_init__(self):
        arr = np.asarray(self.vertices, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("vertices must have shape (n, 2)")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "vertices", arr)

    def radii(self) -> np.ndarray:
        return np.hypot(self.vertices[:, 0], self.vertices[:, 1])


@dataclass(frozen=True)
class Circle:
    """Solid-fill circle primitive."""

    cx: float
    cy: float
    radius: float
    fill: str


@dataclass(frozen=True, eq=False)
class Polygon:
    """Solid-fill closed polygon primitive."""

    vertices: np.ndarray
    fill: str

    def __post_init__(self):
        arr = np.asarray(self.vertices, dtype=float)
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "vertices", arr)


@dataclass(frozen=True)
class GlyphGeometry:
    """Renderable layer stack for one glyph.

    ``kind`` is "wave" (sinusoidal light layer), "flat" (circular light
    layer, the lowest scale level) or "null" (circular light layer plus
    the missing-uncertainty marker). ``layers`` is ordered bottom to top:
    dark disc, light layer, value disc.
    """

    kind: str
    diameter: float
    layers: tuple
    label: str | None = None
    null_marker: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("wave", "flat", "null"):
            raise ValueError(f"unknown glyph kind {self.kind!r}")
        if len(self.layers) != 3:
            raise ValueError("layers must be (dark disc, light layer, value disc)")
        wavy = isinstance(self.layers[1], Polygon)
        if self.kind == "wave" and (not wavy or self.null_marker is not None):
            raise ValueError("wave glyphs need a polygon light layer, no marker")
        if self.kind == "flat" and (wavy or self.null_marker is not None):
            raise ValueError("flat glyphs need a circular light layer, no marker")
        if self.kind == "null" and (wavy or not self.null_marker):
            raise ValueError("null glyphs need a circular light layer and a marker")


@dataclass(frozen=True)
class DisplayGeometry:
    """Physical viewing parameters for the spatial-frequency limit."""

    pixel_pitch: float            # mm per pixel
    viewing_distance: float       # mm
    glyph_wave_diameter_px: float
    acuity_limit: float = 10.0    # cycles per degree

    def __post_init__(self):
        for name in ("pixel_pitch", "viewing_distance",
                     "glyph_wave_diameter_px", "acuity_limit"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def encode_polar(signal: Signal, base_radius: float) -> PolarOutline:
    """Code a message as a closed polar outline.

    Vertex i sits at radius ``base_radius + samples[i]`` and angle
    ``2*pi*i/N``, starting at angle zero and proceeding counter-clockwise.
    """
    samples = signal.samples
    if base_radius + float(samples.min()) <= 0.0:
        raise RadiusUnderflow(
            f"base radius {base_radius} plus minimum sample "
            f"{samples.min()} is not positive")
    n = samples.size
    theta = 2.0 * np.pi * np.arange(n) / n
    r = base_radius + samples
    vertices = np.column_stack([r * np.cos(theta), r * np.sin(theta)])
    return PolarOutline(vertices)


def _exclamation_marker(d: float, color: str) -> tuple:
    # bar + dot, sized to sit inside the value disc
    half_w = 0.035 * d
    top, bottom = 0.16 * d, -0.04 * d
    bar = Polygon(np.array([
        [-half_w, top], [half_w, top], [half_w, bottom], [-half_w, bottom],
    ]), color)
    dot = Circle(0.0, -0.125 * d, 0.042 * d, color)
    return (bar, dot)


def assemble_glyph(level, value_color: str, label: str | None = None,
                   prop: GlyphProportions = GlyphProportions(),
                   dark_color: str = DARK_COLOR,
                   light_color: str = LIGHT_COLOR) -> GlyphGeometry:
    """Build the layer stack for a scale level, or the null-case glyph.

    ``level`` is a GlyphLevel (anything with ``frequency`` and a signal
    ``sample_count``); passing None builds the missing-uncertainty glyph.
    The dark ring is drawn as a full disc beneath the light layer, so the
    visible dark band is whatever the light layer does not cover.
    """
    d = prop.diameter
    dark = Circle(0.0, 0.0, 0.5 * d, dark_color)
    value = Circle(0.0, 0.0, prop.disc_radius * d, value_color)

    if level is None:
        light = Circle(0.0, 0.0, prop.wave_mean_radius * d, light_color)
        return GlyphGeometry("null", d, (dark, light, value), label,
                             _exclamation_marker(d, dark_color))

    if level.frequency == 0:
        light = Circle(0.0, 0.0, prop.wave_mean_radius * d, light_color)
        return GlyphGeometry("flat", d, (dark, light, value), label)

    n = level.signal.meta.sample_count if level.signal.meta else len(level.signal)
    wave = generate_message(level.frequency, prop.wave_amplitude * d, n)
    outline = encode_polar(wave, prop.wave_mean_radius * d)
    light = Polygon(outline.vertices, light_color)
    return GlyphGeometry("wave", d, (dark, light, value), label)


def null_glyph(value_color: str, prop: GlyphProportions = GlyphProportions(),
               dark_color: str = DARK_COLOR,
               light_color: str = LIGHT_COLOR,
               label: str | None = None) -> GlyphGeometry:
    """Missing-uncertainty glyph: standard rings, value disc, warning marker.

    The value disc keeps the data color (the datum is known, only its
    uncertainty is missing) and no layer is a radius-modulated polygon.
    """
    return assemble_glyph(None, value_color, label, prop, dark_color,
                          light_color)


def max_cycles(display: DisplayGeometry) -> float:
    """Highest wave cycle count resolvable on the given display.

    The wave contour is taken as the circumference of its mean-radius
    circle: angular diameter delta (degrees) from the on-screen wave
    size, contour angular length pi * delta, capacity acuity * pi * delta.
    """
    size_mm = display.glyph_wave_diameter_px * display.pixel_pitch
    delta_deg = math.degrees(2.0 * math.atan(size_mm / (2.0 * display.viewing_distance)))
    return display.acuity_limit * math.pi * delta_deg


def wave_diameter_for_cycles(cycles: float, pixel_pitch: float,
                             viewing_distance: float,
                             acuity_limit: float = 10.0) -> float:
    """Invert max_cycles: wave diameter in pixels that carries ``cycles``."""
    if cycles <= 0:
        raise ValueError("cycle count must be positive")
    delta_deg = cycles / (acuity_limit * math.pi)
    size_mm = 2.0 * viewing_distance * math.tan(math.radians(delta_deg) / 2.0)
    return size_mm / pixel_pitch
