"""Command-line interface.

Subcommands cover the full loop: scoring messages (``entropy``),
building scales and glyph/scene SVGs (``gen-scale``, ``gen-glyph``,
``render-scene``), preparing and merging experiment sessions
(``manifest-ranking``, ``manifest-search``, ``merge``, ``serve-trial``)
and the statistical analyses (``bt-fit``, ``regress``, ``sdt``,
``ttest``). Exit codes: 0 success, 1 validation error, 2 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    SDTCounts,
    bt_fit,
    fit_ols,
    format_bt_table,
    format_comparison_table,
    format_sdt_table,
    rt_outliers,
    sdt_metrics,
    t_tests,
    table_from_json,
    table_to_json,
)
from .entropy import SampEnParams, Signal, generate_message, sample_entropy
from .errors import EntroglyphError
from .geometry import (
    DisplayGeometry,
    GlyphProportions,
    assemble_glyph,
    max_cycles,
)
from .render import (
    ColorMap,
    DEFAULT_TEMPERATURE_MAP,
    render_glyph,
    render_scene,
    scene_from_json,
    value_to_color,
)
from .scale import build_scale, load_scale, scale_to_json
from .trials import (
    PairComparisonTable,
    build_ranking_manifest,
    build_search_manifest,
    manifest_to_json,
    merge_results,
    results_from_json,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; that code is reserved
    # for numerical failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_config(path) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _proportions_from_config(config: dict, diameter=None) -> GlyphProportions:
    section = dict(config.get("proportions", {}))
    if diameter is not None:
        section["diameter"] = diameter
    return GlyphProportions(**section)


def _color_map_from_config(config: dict) -> ColorMap:
    section = config.get("color_map")
    if not section:
        return DEFAULT_TEMPERATURE_MAP
    return ColorMap(section["name"], tuple(tuple(s) for s in section["stops"]))


def _write_out(data, out_path) -> None:
    if isinstance(data, str):
        data = data.encode("utf-8")
    if out_path is None:
        sys.stdout.buffer.write(data)
        if not data.endswith(b"\n"):
            sys.stdout.buffer.write(b"\n")
    else:
        Path(out_path).write_bytes(data)


def _read_values(spec: str) -> list[float]:
    """Values from a whitespace/comma separated file, or inline a,b,c."""
    path = Path(spec)
    text = path.read_text(encoding="utf-8") if path.exists() else spec
    return [float(tok) for tok in text.replace(",", " ").split()]


# --- subcommand handlers ----------------------------------------------------

def _cmd_entropy(args, config):
    params = SampEnParams(args.m, args.r_frac)
    if args.series is not None:
        signal = Signal(np.array(_read_values(args.series)))
    else:
        signal = generate_message(args.frequency, args.amplitude, args.samples)
    value = sample_entropy(signal, params)
    _write_out(json.dumps({
        "sample_entropy": value, "m": params.m, "r_frac": params.r_frac,
        "n": len(signal),
    }, indent=2), args.out)
    return 0


def _scale_kwargs(args, config):
    section = config.get("scale", {})
    return {
        "level_count": args.levels if args.levels is not None
        else section.get("level_count", 7),
        "base_frequency": args.base_frequency if args.base_frequency is not None
        else section.get("base_frequency", 1.5),
        "amplitude": args.amplitude if args.amplitude is not None
        else section.get("amplitude", 1.0),
        "sample_count": args.samples if args.samples is not None
        else section.get("sample_count", 360),
    }


def _cmd_gen_scale(args, config):
    scale = build_scale(**_scale_kwargs(args, config))
    display = config.get("display")
    if display:
        geometry = DisplayGeometry(
            display["pixel_pitch"], display["viewing_distance"],
            display["glyph_wave_diameter_px"],
            display.get("acuity_limit", 10.0))
        limit = max_cycles(geometry)
        top = scale.frequencies()[-1]
        if top > limit:
            raise EntroglyphError(
                f"top level at {top} cycles exceeds the display limit of "
                f"{limit:.1f} resolvable cycles; drop a level or enlarge "
                f"the glyph")
    if args.v_min is not None or args.v_max is not None:
        if args.v_min is None or args.v_max is None:
            raise EntroglyphError("give both --v-min and --v-max")
        scale = scale.with_bounds(args.v_min, args.v_max)
    _write_out(scale_to_json(scale, __version__), args.out)
    return 0


def _cmd_gen_glyph(args, config):
    prop = _proportions_from_config(config, args.diameter)
    if args.color is not None:
        color = args.color
    elif args.value is not None:
        color = value_to_color(args.value, _color_map_from_config(config))
    else:
        raise EntroglyphError("give --color or --value")
    if args.null:
        level = None
    else:
        if args.scale is None:
            raise EntroglyphError("give --scale (or --null)")
        scale = load_scale(args.scale)
        if not 0 <= args.level < len(scale.levels):
            raise EntroglyphError(
                f"level {args.level} outside scale of {len(scale.levels)}")
        level = scale.levels[args.level]
    geometry = assemble_glyph(level, color, args.label, prop)
    _write_out(render_glyph(geometry, args.size), args.out)
    return 0


def _cmd_render_scene(args, config):
    spec = scene_from_json(Path(args.scene).read_text(encoding="utf-8"))
    _write_out(render_scene(spec), args.out)
    return 0


def _require_seed(args):
    if args.seed is None:
        raise EntroglyphError("manifest generation needs --seed")
    return args.seed


def _cmd_manifest_ranking(args, config):
    manifest = build_ranking_manifest(args.assets, _require_seed(args),
                                      participant_id=args.participant)
    _write_out(manifest_to_json(manifest), args.out)
    return 0


def _cmd_manifest_search(args, config):
    buckets = {
        "low_present": args.low_present, "low_absent": args.low_absent,
        "high_present": args.high_present, "high_absent": args.high_absent,
    }
    manifest = build_search_manifest(buckets, _require_seed(args),
                                     participant_id=args.participant)
    _write_out(manifest_to_json(manifest), args.out)
    return 0


def _cmd_merge(args, config):
    results = [results_from_json(Path(p).read_text(encoding="utf-8"))
               for p in args.results]
    merged = merge_results(results)
    if isinstance(merged, PairComparisonTable):
        if args.format == "text":
            _write_out(format_comparison_table(merged), args.out)
        else:
            _write_out(table_to_json(merged), args.out)
    else:
        doc = {target: counts.to_dict() for target, counts in merged.items()}
        _write_out(json.dumps(doc, indent=2), args.out)
    return 0


def _cmd_bt_fit(args, config):
    table = table_from_json(Path(args.table).read_text(encoding="utf-8"))
    result = bt_fit(table, args.reference)
    if args.format == "text":
        _write_out(format_bt_table(result) + "\n\n"
                   f"null deviance: {result.null_deviance:.3f}\n"
                   f"residual deviance: {result.residual_deviance:.3f}\n"
                   f"pseudo R2: {100 * result.pseudo_r2:.1f}%", args.out)
    else:
        _write_out(json.dumps({
            "reference": result.reference,
            "abilities": result.abilities,
            "std_errors": result.std_errors,
            "z_values": result.z_values,
            "p_values": result.p_values,
            "null_deviance": result.null_deviance,
            "residual_deviance": result.residual_deviance,
            "pseudo_r2": result.pseudo_r2,
            "iterations": result.iterations,
        }, indent=2), args.out)
    return 0


def _cmd_regress(args, config):
    if args.data is not None:
        doc = json.loads(Path(args.data).read_text(encoding="utf-8"))
        x, y = doc["x"], doc["y"]
    elif args.bt is not None and args.scale is not None:
        # ability-vs-entropy fit: degree 1 regresses abilities on
        # log-entropy excluding the flat level, degree 2 keeps it and
        # uses raw entropy
        bt_doc = json.loads(Path(args.bt).read_text(encoding="utf-8"))
        scale = load_scale(args.scale)
        abilities = bt_doc["abilities"]
        ids = sorted(abilities)
        if len(ids) != len(scale.levels):
            raise EntroglyphError(
                f"{len(ids)} abilities vs {len(scale.levels)} scale levels")
        ent = scale.entropies()
        if args.degree == 1:
            x = [math.log(e) for e in ent[1:]]
            y = [abilities[g] for g in ids[1:]]
        else:
            x = ent
            y = [abilities[g] for g in ids]
    else:
        raise EntroglyphError("give --data, or both --bt and --scale")
    result = fit_ols(x, y, args.degree)
    _write_out(result.to_json(), args.out)
    return 0


def _cmd_sdt(args, config):
    counts = SDTCounts(args.hits, args.misses, args.false_alarms,
                       args.correct_rejections)
    result = sdt_metrics(counts, args.correction)
    if args.format == "text":
        _write_out(format_sdt_table(result), args.out)
    else:
        _write_out(result.to_json(), args.out)
    return 0


def _cmd_ttest(args, config):
    result = t_tests(_read_values(args.a), _read_values(args.b), args.paired)
    _write_out(result.to_json(), args.out)
    return 0


def _cmd_rt_outliers(args, config):
    values = _read_values(args.values)
    flags = rt_outliers(values)
    _write_out(json.dumps({
        "flags": flags,
        "outliers": [v for v, f in zip(values, flags) if f],
    }, indent=2), args.out)
    return 0


def _cmd_serve_trial(args, config):
    from .serve import serve_trials
    serve_trials(args.dir, args.results_dir, args.host, args.port)
    return 0


# --- parser wiring ----------------------------------------------------------

def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="seed for deterministic shuffles")
    common.add_argument("--config", default=None,
                        help="JSON config with scale/proportions/color_map sections")
    common.add_argument("--out", default=None,
                        help="output path (default: stdout)")

    parser = _Parser(prog="entroglyph",
                     description="entropy-scored uncertainty glyph toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p = sub.add_parser("entropy", parents=[common],
                       help="sample entropy of a generated or supplied series")
    p.add_argument("--frequency", "-k", type=float, default=3.0)
    p.add_argument("--amplitude", "-a", type=float, default=1.0)
    p.add_argument("--samples", "-n", type=int, default=360)
    p.add_argument("--series", default=None,
                   help="file of numbers (or inline comma list) instead of a sine")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r-frac", type=float, default=0.2)
    p.set_defaults(func=_cmd_entropy)

    p = sub.add_parser("gen-scale", parents=[common],
                       help="build a doubling-frequency scale as JSON")
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--base-frequency", type=float, default=None)
    p.add_argument("--amplitude", type=float, default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--v-min", type=float, default=None)
    p.add_argument("--v-max", type=float, default=None)
    p.set_defaults(func=_cmd_gen_scale)

    p = sub.add_parser("gen-glyph", parents=[common],
                       help="render one glyph to SVG")
    p.add_argument("--scale", default=None, help="scale JSON file")
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--null", action="store_true",
                   help="render the missing-uncertainty glyph")
    p.add_argument("--color", default=None, help="value disc color (#rrggbb)")
    p.add_argument("--value", type=float, default=None,
                   help="value mapped through the color map instead of --color")
    p.add_argument("--label", default=None)
    p.add_argument("--diameter", type=float, default=None,
                   help="model diameter (default from config or 100)")
    p.add_argument("--size", type=float, default=256.0, help="output pixels")
    p.set_defaults(func=_cmd_gen_glyph)

    p = sub.add_parser("render-scene", parents=[common],
                       help="render a scene JSON to SVG")
    p.add_argument("--scene", required=True)
    p.set_defaults(func=_cmd_render_scene)

    p = sub.add_parser("manifest-ranking", parents=[common],
                       help="all ordered glyph pairs, seeded shuffle")
    p.add_argument("--assets", nargs="+", required=True)
    p.add_argument("--participant", default=None)
    p.set_defaults(func=_cmd_manifest_ranking)

    p = sub.add_parser("manifest-search", parents=[common],
                       help="forty search trials from four ten-asset buckets")
    p.add_argument("--low-present", nargs="+", required=True)
    p.add_argument("--low-absent", nargs="+", required=True)
    p.add_argument("--high-present", nargs="+", required=True)
    p.add_argument("--high-absent", nargs="+", required=True)
    p.add_argument("--participant", default=None)
    p.set_defaults(func=_cmd_manifest_search)

    p = sub.add_parser("merge", parents=[common],
                       help="merge result files into a table or SDT counts")
    p.add_argument("--results", nargs="+", required=True)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_merge)

    p = sub.add_parser("bt-fit", parents=[common],
                       help="fit abilities from a comparison table")
    p.add_argument("--table", required=True)
    p.add_argument("--reference", default=None)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_bt_fit)

    p = sub.add_parser("regress", parents=[common],
                       help="polynomial fit with R2 and F-test p")
    p.add_argument("--data", default=None, help='JSON file {"x": [...], "y": [...]}')
    p.add_argument("--bt", default=None, help="bt-fit JSON output")
    p.add_argument("--scale", default=None, help="scale JSON file")
    p.add_argument("--degree", type=int, choices=(1, 2), default=1)
    p.set_defaults(func=_cmd_regress)

    p = sub.add_parser("sdt", parents=[common],
                       help="detection indices from a confusion matrix")
    p.add_argument("--hits", type=int, required=True)
    p.add_argument("--misses", type=int, required=True)
    p.add_argument("--false-alarms", type=int, required=True)
    p.add_argument("--correct-rejections", type=int, required=True)
    p.add_argument("--correction", choices=("none", "half_count", "loglinear"),
                   default="half_count")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=_cmd_sdt)

    p = sub.add_parser("ttest", parents=[common],
                       help="two-sided t test between two RT samples")
    p.add_argument("--a", required=True, help="file or inline comma list")
    p.add_argument("--b", required=True, help="file or inline comma list")
    p.add_argument("--paired", action="store_true")
    p.set_defaults(func=_cmd_ttest)

    p = sub.add_parser("rt-outliers", parents=[common],
                       help="3-sigma screen over mean response times")
    p.add_argument("--values", required=True, help="file or inline comma list")
    p.set_defaults(func=_cmd_rt_outliers)

    p = sub.add_parser("serve-trial", parents=[common],
                       help="serve the trial UI and store posted results")
    p.add_argument("--dir", required=True, help="static files root")
    p.add_argument("--results-dir", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.set_defaults(func=_cmd_serve_trial)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config)
        return args.func(args, config)
    except EntroglyphError as exc:
        print(f"entroglyph: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"entroglyph: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
