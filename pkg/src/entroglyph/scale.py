"""Ordered glyph scales and value-to-level mapping.

A scale is a list of levels whose wave frequency doubles from level to
level (level 0 is the plain circle) and whose entropy scores strictly
increase, plus optional variance bounds for mapping measured uncertainty
onto level indices. Missing variance maps to None, which renderers draw
as the dedicated null glyph.
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass

from .entropy import SampEnParams, Signal, generate_message, sample_entropy
from .errors import BoundsUnset, FrequencyAboveNyquist, NonMonotoneEntropy, OutOfRange

__all__ = [
    "GlyphLevel",
    "UncertaintyScale",
    "build_scale",
    "map_uncertainty",
    "significance_to_level",
    "scale_to_json",
    "scale_from_json",
    "save_scale",
    "load_scale",
]

SCALE_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class GlyphLevel:
    """One rung of the scale: frequency, generating signal, entropy score."""

    index: int
    frequency: float
    amplitude: float
    signal: Signal
    entropy: float


@dataclass(frozen=True)
class UncertaintyScale:
    """Ordered glyph levels with optional variance bounds.

    ``spacing`` selects how [v_min, v_max] is quantized: "linear" (the
    default) or "log" (requires positive bounds).
    """

    levels: tuple
    v_min: float | None = None
    v_max: float | None = None
    spacing: str = "linear"

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(self.levels))
        if self.spacing not in ("linear", "log"):
            raise ValueError(f"unknown spacing {self.spacing!r}")
        if (self.v_min is None) != (self.v_max is None):
            raise ValueError("set both bounds or neither")
        if self.v_min is not None:
            if not self.v_min < self.v_max:
                raise ValueError("v_min must be below v_max")
            if self.spacing == "log" and self.v_min <= 0:
                raise ValueError("log spacing needs positive bounds")
        for j, level in enumerate(self.levels):
            if level.index != j:
                raise ValueError(f"level indices must run 0..{len(self.levels) - 1}")
            if (j == 0) != (level.frequency == 0):
                raise ValueError("exactly level 0 has frequency 0")
            if j >= 2 and level.frequency != 2 * self.levels[j - 1].frequency:
                raise ValueError("frequencies above level 1 must double")
        entropies = [lv.entropy for lv in self.levels]
        if any(b <= a for a, b in zip(entropies, entropies[1:])):
            raise NonMonotoneEntropy(
                f"entropies not strictly increasing: {entropies}")

    def __len__(self):
        return len(self.levels)

    @property
    def bounds_set(self) -> bool:
        return self.v_min is not None

    def with_bounds(self, v_min: float, v_max: float,
                    spacing: str | None = None) -> "UncertaintyScale":
        """New scale with the variance range set (levels shared)."""
        return dataclasses.replace(
            self, v_min=float(v_min), v_max=float(v_max),
            spacing=self.spacing if spacing is None else spacing)

    def entropies(self) -> list[float]:
        return [lv.entropy for lv in self.levels]

    def frequencies(self) -> list[float]:
        return [lv.frequency for lv in self.levels]


def build_scale(level_count: int = 7, base_frequency: float = 1.5,
                amplitude: float = 1.0, sample_count: int = 360,
                params: SampEnParams = SampEnParams()) -> UncertaintyScale:
    """Build the doubling-frequency scale and score every level.

    Level 0 has frequency 0 (a circle); level j >= 1 has frequency
    base_frequency * 2**(j-1). The top frequency must stay at or below
    the Nyquist limit, and the scored entropies must strictly increase.
    """
    if level_count < 2:
        raise ValueError("a scale needs at least 2 levels")
    if base_frequency <= 0:
        raise ValueError("base frequency must be positive")
    top = base_frequency * 2 ** (level_count - 2)
    if top > sample_count / 2:
        raise FrequencyAboveNyquist(
            f"top level at {top} cycles exceeds Nyquist limit "
            f"{sample_count / 2}")

    levels = []
    for j in range(level_count):
        freq = 0.0 if j == 0 else base_frequency * 2 ** (j - 1)
        signal = generate_message(freq, amplitude, sample_count)
        levels.append(GlyphLevel(j, freq, amplitude, signal,
                                 sample_entropy(signal, params)))
    # the constructor enforces ordering, doubling and strict entropy growth
    return UncertaintyScale(tuple(levels))


def map_uncertainty(v: float | None, scale: UncertaintyScale) -> int | None:
    """Level index for a variance value; None for missing variance.

    [v_min, v_max] is quantized uniformly (or uniformly in log space)
    into one bin per level, half-open except the last bin, which is
    closed; out-of-range values clamp to the end levels.
    """
    if v is None:
        return None
    if not scale.bounds_set:
        raise BoundsUnset("scale has no variance bounds")
    lo, hi = scale.v_min, scale.v_max
    if scale.spacing == "log":
        if v <= 0:
            return 0
        v, lo, hi = math.log(v), math.log(lo), math.log(hi)
    n = len(scale.levels)
    raw = math.floor((v - lo) / (hi - lo) * n)
    return max(0, min(n - 1, raw))


_SIGNIFICANCE_EDGES = (0.001, 0.01, 0.05, 0.1, 1.0)


def significance_to_level(p: float) -> int:
    """Map a p-value onto a five-level scale, strongest evidence first.

    Band edges follow the conventional significance-code cut points
    (0.001, 0.01, 0.05, 0.1, 1); the (0.1, 1] band gets a real level of
    its own rather than an empty symbol.
    """
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p-value {p} outside [0, 1]")
    for level, edge in enumerate(_SIGNIFICANCE_EDGES):
        if p <= edge:
            return level
    return len(_SIGNIFICANCE_EDGES) - 1  # p == 1.0 handled above; safety


# --- serialization ---------------------------------------------------------

def scale_to_json(scale: UncertaintyScale, version: str | None = None) -> str:
    """Serialize a scale; floats keep full precision so loads are lossless."""
    if version is None:
        from . import __version__ as version
    sample_count = (scale.levels[0].signal.meta.sample_count
                    if scale.levels else 0)
    doc = {
        "schema_version": SCALE_SCHEMA_VERSION,
        "levels": [
            {"index": lv.index, "frequency": lv.frequency,
             "amplitude": lv.amplitude, "entropy": lv.entropy}
            for lv in scale.levels
        ],
        "v_min": scale.v_min,
        "v_max": scale.v_max,
        "spacing": scale.spacing,
        "N": sample_count,
        "generated_by_version": version,
    }
    return json.dumps(doc, indent=2)


def scale_from_json(text: str) -> UncertaintyScale:
    """Rebuild a scale from its JSON form.

    Signals are regenerated from (frequency, amplitude, N), which is
    exact, and the stored entropy is kept verbatim.
    """
    doc = json.loads(text)
    n = doc["N"]
    levels = tuple(
        GlyphLevel(entry["index"], entry["frequency"], entry["amplitude"],
                   generate_message(entry["frequency"], entry["amplitude"], n),
                   entry["entropy"])
        for entry in doc["levels"]
    )
    return UncertaintyScale(levels, doc.get("v_min"), doc.get("v_max"),
                            doc.get("spacing", "linear"))


def save_scale(scale: UncertaintyScale, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(scale_to_json(scale))


def load_scale(path) -> UncertaintyScale:
    with open(path, encoding="utf-8") as fh:
        return scale_from_json(fh.read())
