"""Aligned plain-text tables for analysis results."""

from __future__ import annotations

from .bradley_terry import BTResult, PairComparisonTable
from .sdt import SDTResult

__all__ = ["format_comparison_table", "format_bt_table", "format_sdt_table"]


def _render(header: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def format_comparison_table(table: PairComparisonTable) -> str:
    """Pair counts with mean response times, one row per unordered pair."""
    header = ["Left glyph", "Right glyph", "Chose left", "Chose right",
              "mean RT (seconds)"]
    rows = [
        [r.left, r.right, str(r.chose_left), str(r.chose_right),
         "" if r.mean_rt is None else f"{r.mean_rt:.2f}"]
        for r in table.rows
    ]
    return _render(header, rows)


def format_bt_table(result: BTResult) -> str:
    """Ability coefficients with Wald statistics; reference row first."""
    header = ["Glyph", "Ability", "Std Error", "z value", "Pr>|z|"]
    rows = [[result.reference, "0", "", "", ""]]
    for item in sorted(result.std_errors):
        p = result.p_values[item]
        rows.append([
            item,
            f"{result.abilities[item]:.4f}",
            f"{result.std_errors[item]:.4f}",
            f"{result.z_values[item]:.3f}",
            "< 2e-16" if p < 2e-16 else f"{p:.2E}",
        ])
    return _render(header, rows)


def format_sdt_table(result: SDTResult) -> str:
    header = ["dprime", "beta", "aprime", "bppd"]
    rows = [[f"{result.d_prime:.4f}", f"{result.beta:.4f}",
             f"{result.a_prime:.4f}", f"{result.b_double_prime_d:.4g}"]]
    return _render(header, rows)
