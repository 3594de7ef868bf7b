"""Response-time screening and t tests."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import t as t_dist

from ..errors import InfiniteT, LengthMismatch, TooFewSamples

__all__ = ["TTestResult", "t_tests", "rt_outliers"]


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: float
    p: float

    def to_json(self) -> str:
        return json.dumps({"t": self.t, "df": self.df, "p": self.p}, indent=2)


def t_tests(a, b, paired: bool = False) -> TTestResult:
    """Two-sided Student t test between two RT samples.

    Paired data is tested on the per-pair differences; identical samples
    give t = 0, p = 1 by convention, while zero-variance differences
    with a nonzero mean raise InfiniteT. Unpaired data uses the Welch
    (unequal-variance) variant.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if paired:
        if a.size != b.size:
            raise LengthMismatch(f"paired samples of {a.size} and {b.size}")
        if a.size < 2:
            raise TooFewSamples("paired test needs at least 2 pairs")
        diff = a - b
        sd = diff.std(ddof=1)
        if sd == 0.0:
            if diff.mean() == 0.0:
                return TTestResult(0.0, float(a.size - 1), 1.0)
            raise InfiniteT(
                f"all differences equal {diff[0]}; t is unbounded")
        t_stat = diff.mean() / (sd / math.sqrt(diff.size))
        df = float(diff.size - 1)
    else:
        if a.size < 2 or b.size < 2:
            raise TooFewSamples("each sample needs at least 2 values")
        va, vb = a.var(ddof=1), b.var(ddof=1)
        se2 = va / a.size + vb / b.size
        if se2 == 0.0:
            if a.mean() == b.mean():
                return TTestResult(0.0, float(a.size + b.size - 2), 1.0)
            raise InfiniteT("zero variance in both samples; t is unbounded")
        t_stat = (a.mean() - b.mean()) / math.sqrt(se2)
        df = se2 ** 2 / (
            (va / a.size) ** 2 / (a.size - 1)
            + (vb / b.size) ** 2 / (b.size - 1))
    p = 2.0 * float(t_dist.sf(abs(t_stat), df))
    return TTestResult(float(t_stat), float(df), min(1.0, p))


def rt_outliers(mean_rts) -> list[bool]:
    """Flag values at or beyond 3 population SDs from the list mean.

    The boundary is inclusive (a value sitting exactly on mean + 3*SD is
    flagged), with a tiny relative epsilon so the comparison is stable
    under floating-point evaluation order.
    """
    values = np.asarray(mean_rts, dtype=float)
    if values.size < 2:
        raise TooFewSamples("outlier screen needs at least 2 values")
    sd = values.std()
    if sd == 0.0:
        return [False] * values.size
    cut = 3.0 * sd * (1.0 - 1e-12)
    return [bool(abs(v - values.mean()) >= cut) for v in values]
