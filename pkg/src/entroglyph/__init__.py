"""entroglyph: entropy-scored glyph scales for value-plus-uncertainty display.

The toolkit codes a sampled message as a radius-modulated ring glyph,
scores shape complexity with sample entropy to build an ordered glyph
scale, maps sensor variance onto the scale, renders deterministic SVG
scenes, and analyses ranking and visual-search experiments run over
those glyphs (Bradley-Terry abilities, regressions, detection indices).
"""

__version__ = "0.1.0"

from .entropy import (
    ProbabilityDistribution,
    SampEnParams,
    Signal,
    generate_message,
    sample_entropy,
    score_levels,
    shannon_entropy,
    template_match_counts,
)
from .geometry import (
    DisplayGeometry,
    GlyphGeometry,
    GlyphProportions,
    PolarOutline,
    assemble_glyph,
    encode_polar,
    max_cycles,
    null_glyph,
    wave_diameter_for_cycles,
)
from .scale import (
    GlyphLevel,
    UncertaintyScale,
    build_scale,
    load_scale,
    map_uncertainty,
    save_scale,
    scale_from_json,
    scale_to_json,
    significance_to_level,
)
from .ingest import SensorReading, SensorSummary, parse_readings, summarize_window
from .render import (
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
from .analysis import (
    BTResult,
    ComparisonRow,
    PairComparisonTable,
    RegressionResult,
    SDTCounts,
    SDTResult,
    TTestResult,
    bt_fit,
    fit_ols,
    merge_duplicates,
    rt_outliers,
    sdt_metrics,
    t_tests,
)
from .trials import (
    TrialManifest,
    TrialRecord,
    TrialResults,
    build_ranking_manifest,
    build_search_manifest,
    manifest_from_json,
    manifest_to_json,
    merge_results,
    results_from_json,
    results_to_json,
)
from .estimators import BradleyTerryRanker, VarianceGlyphEncoder
from .datasets import glyph_ranking_table
