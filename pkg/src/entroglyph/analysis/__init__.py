"""Statistical analyses for ranking and detection experiment results."""

from .bradley_terry import (
    BTResult,
    ComparisonRow,
    PairComparisonTable,
    bt_fit,
    merge_duplicates,
    table_from_json,
    table_to_json,
)
from .regression import RegressionResult, fit_ols
from .report import format_bt_table, format_comparison_table, format_sdt_table
from .sdt import CORRECTIONS, SDTCounts, SDTResult, sdt_metrics
from .stats import TTestResult, rt_outliers, t_tests

__all__ = [
    "BTResult",
    "ComparisonRow",
    "PairComparisonTable",
    "bt_fit",
    "merge_duplicates",
    "table_from_json",
    "table_to_json",
    "RegressionResult",
    "fit_ols",
    "SDTCounts",
    "SDTResult",
    "sdt_metrics",
    "CORRECTIONS",
    "TTestResult",
    "t_tests",
    "rt_outliers",
    "format_bt_table",
    "format_comparison_table",
    "format_sdt_table",
]
