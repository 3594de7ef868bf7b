"""Signal-detection indices from a detection confusion matrix.

Parametric sensitivity d' = z(H) - z(F) and bias beta, plus the
non-parametric pair a' and b''d. Extreme rates (0 or 1) make the
parametric indices infinite, so a correction mode can adjust the rates:

* ``none``       rates used as observed (infinities possible);
* ``half_count`` when any rate is 0 or 1, every cell gains 0.5 and both
                 denominators gain 1;
* ``loglinear``  the same adjustment applied unconditionally.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from scipy.stats import norm

from ..errors import EmptyCondition

__all__ = ["SDTCounts", "SDTResult", "sdt_metrics", "CORRECTIONS"]

CORRECTIONS = ("none", "half_count", "loglinear")


@dataclass(frozen=True)
class SDTCounts:
    hits: int
    misses: int
    false_alarms: int
    correct_rejections: int

    def __post_init__(self):
        for name in ("hits", "misses", "false_alarms", "correct_rejections"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def present_total(self) -> int:
        return self.hits + self.misses

    @property
    def absent_total(self) -> int:
        return self.false_alarms + self.correct_rejections

    def to_dict(self) -> dict:
        return {"hits": self.hits, "misses": self.misses,
                "false_alarms": self.false_alarms,
                "correct_rejections": self.correct_rejections}


@dataclass(frozen=True)
class SDTResult:
    d_prime: float
    beta: float
    a_prime: float
    b_double_prime_d: float
    hit_rate: float
    fa_rate: float
    correction: str

    def to_json(self) -> str:
        return json.dumps({
            "d_prime": self.d_prime, "beta": self.beta,
            "a_prime": self.a_prime,
            "b_double_prime_d": self.b_double_prime_d,
            "hit_rate": self.hit_rate, "fa_rate": self.fa_rate,
            "correction": self.correction,
        }, indent=2)


def _adjusted_rates(c: SDTCounts, correction: str) -> tuple[float, float]:
    h = c.hits / c.present_total
    f = c.false_alarms / c.absent_total
    extreme = h in (0.0, 1.0) or f in (0.0, 1.0)
    if correction == "loglinear" or (correction == "half_count" and extreme):
        h = (c.hits + 0.5) / (c.present_total + 1)
        f = (c.false_alarms + 0.5) / (c.absent_total + 1)
    return h, f


def a_prime(h: float, f: float) -> float:
    """Non-parametric sensitivity; 0.5 at chance, complements under swap."""
    if h == f:
        return 0.5
    d = abs(h - f)
    value = (d * (1.0 + d)) / (4.0 * max(h, f) * (1.0 - min(h, f)))
    return 0.5 + math.copysign(value, h - f)


def b_double_prime_d(h: float, f: float) -> float:
    """Non-parametric bias; NaN when perfect performance makes it 0/0."""
    num = (1.0 - h) * (1.0 - f) - h * f
    den = (1.0 - h) * (1.0 - f) + h * f
    if den == 0.0:
        return float("nan")
    return num / den


def sdt_metrics(counts: SDTCounts, correction: str = "half_count") -> SDTResult:
    """All four indices from one confusion matrix.

    With ``correction="none"`` and an extreme rate, d' and beta come out
    infinite (or NaN); the non-parametric indices are always computed
    from the same (possibly adjusted) rates as the parametric ones.
    """
    if correction not in CORRECTIONS:
        raise ValueError(f"correction must be one of {CORRECTIONS}")
    if counts.present_total == 0 or counts.absent_total == 0:
        raise EmptyCondition(
            f"present={counts.present_total}, absent={counts.absent_total}")

    h, f = _adjusted_rates(counts, correction)
    z_h, z_f = float(norm.ppf(h)), float(norm.ppf(f))
    d_prime = z_h - z_f
    if math.isinf(z_h) or math.isinf(z_f):
        beta = float("nan") if math.isinf(z_h) and math.isinf(z_f) else (
            0.0 if math.isinf(z_h) else math.inf)
    else:
        beta = math.exp((z_f * z_f - z_h * z_h) / 2.0)
    return SDTResult(d_prime, beta, a_prime(h, f), b_double_prime_d(h, f),
                     h, f, correction)
