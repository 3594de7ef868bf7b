"""Bundled reference data.

``glyph_ranking_table`` returns the pairwise comparison counts and mean
response times collected in a 19-participant two-alternative forced
choice ranking study of the seven-glyph set (labels A through G, lowest
to highest wave frequency). Every pair was shown to every participant in
both orders, so each of the 21 unordered pairs holds 38 choices.
"""

from __future__ import annotations

import csv
from importlib import resources

from .analysis.bradley_terry import ComparisonRow, PairComparisonTable

__all__ = ["glyph_ranking_table"]


def glyph_ranking_table() -> PairComparisonTable:
    text = (resources.files("entroglyph") / "data" / "glyph_ranking.csv"
            ).read_text(encoding="utf-8")
    reader = csv.DictReader(text.splitlines())
    rows = tuple(
        ComparisonRow(r["left"], r["right"], int(r["chose_left"]),
                      int(r["chose_right"]), float(r["mean_rt"]))
        for r in reader
    )
    return PairComparisonTable(rows)
