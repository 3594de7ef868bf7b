"""Polynomial least squares with R-squared and the overall F test."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.stats import f as f_dist

from ..errors import SingularDesign, TooFewSamples

__all__ = ["RegressionResult", "fit_ols"]


@dataclass(frozen=True)
class RegressionResult:
    coefficients: tuple      # intercept first
    r_squared: float
    f_p_value: float
    residuals: tuple
    degree: int

    def predict(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        design = np.column_stack([x ** d for d in range(self.degree + 1)])
        return design @ np.array(self.coefficients)

    def to_json(self) -> str:
        return json.dumps({
            "coefficients": list(self.coefficients),
            "r_squared": self.r_squared,
            "f_p_value": self.f_p_value,
            "residuals": list(self.residuals),
            "degree": self.degree,
        }, indent=2)


def fit_ols(x, y, degree: int = 1) -> RegressionResult:
    """Least-squares fit of y on (1, x, ..., x**degree).

    Callers fitting against log-transformed predictors must drop the
    undefined points first; non-finite inputs are rejected here.
    """
    if degree not in (1, 2):
        raise ValueError("degree must be 1 or 2")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise ValueError("x and y must be finite")
    n = x.size
    if n < degree + 2:
        raise TooFewSamples(f"need at least {degree + 2} points, got {n}")

    design = np.column_stack([x ** d for d in range(degree + 1)])
    if np.linalg.matrix_rank(design) < design.shape[1]:
        raise SingularDesign("design matrix is rank deficient")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    residuals = y - design @ coef

    ss_res = float(residuals @ residuals)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res == 0.0 else 0.0
    else:
        r_squared = 1.0 - ss_res / ss_tot

    df_model, df_resid = degree, n - degree - 1
    if r_squared >= 1.0:
        p_value = 0.0
    else:
        f_stat = (r_squared / df_model) / ((1.0 - r_squared) / df_resid)
        p_value = float(f_dist.sf(f_stat, df_model, df_resid))

    return RegressionResult(tuple(float(c) for c in coef), r_squared,
                            p_value, tuple(float(r) for r in residuals),
                            degree)
