"""Message generation and entropy scoring.

The glyph pipeline starts from a sampled sinusoidal message. Its sample
entropy (the regularity statistic SampEn = -ln(A/B), where B counts
matching templates of length m and A the same templates extended by one
point) is the numerical score used to order glyph shapes; Shannon entropy
is provided for scoring discrete symbol distributions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    FrequencyAboveNyquist,
    InvalidDistribution,
    NoTemplateMatches,
    SeriesTooShort,
)

__all__ = [
    "ProbabilityDistribution",
    "Signal",
    "SignalMeta",
    "SampEnParams",
    "shannon_entropy",
    "generate_message",
    "sample_entropy",
    "template_match_counts",
    "score_levels",
]

_WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ProbabilityDistribution:
    """Discrete distribution over a finite symbol alphabet."""

    weights: tuple

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise InvalidDistribution("distribution needs at least one weight")
        if any(v < 0 for v in w):
            raise InvalidDistribution("negative probability weight")
        total = math.fsum(w)
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise InvalidDistribution(f"weights sum to {total!r}, not 1")


@dataclass(frozen=True)
class SignalMeta:
    """Generating parameters of a sampled sinusoidal message."""

    frequency: float
    amplitude: float
    sample_count: int


@dataclass(frozen=True, eq=False)
class Signal:
    """A sampled message plus the parameters that generated it (if any)."""

    samples: np.ndarray
    meta: SignalMeta | None = None

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "samples", arr)

    def __len__(self):
        return self.samples.size


@dataclass(frozen=True)
class SampEnParams:
    """Template length m and tolerance fraction of the series SD.

    The default embedding length is 1: matched pairs are extended from
    length 1 to length 2. See the package README for why length-2 base
    templates cannot order the default frequency ladder at 360 samples.
    """

    m: int = 1
    r_frac: float = 0.2

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("embedding length m must be >= 1")
        if self.r_frac <= 0:
            raise ValueError("tolerance fraction must be positive")


def shannon_entropy(dist: ProbabilityDistribution) -> float:
    """Average bits per symbol, sum of p*log2(1/p) over nonzero weights."""
    return -math.fsum(p * math.log2(p) for p in dist.weights if p > 0.0)


def generate_message(k: float, a: float, n: int) -> Signal:
    """Sample ``a*sin(2*pi*k*i/n)`` for i = 0..n-1.

    ``k`` is the cycle count over the full revolution; k = 0 yields the
    constant zero message used for the lowest scale level.
    """
    if n < 4:
        raise SeriesTooShort(f"need at least 4 samples, got {n}")
    if a < 0:
        raise ValueError("amplitude must be non-negative")
    if k < 0:
        raise ValueError("frequency must be non-negative")
    if k > n / 2:
        raise FrequencyAboveNyquist(f"{k} cycles exceeds Nyquist limit {n / 2}")
    i = np.arange(n)
    samples = a * np.sin(2.0 * np.pi * k * i / n)
    return Signal(samples, SignalMeta(float(k), float(a), int(n)))


def template_match_counts(samples, m: int, r: float) -> tuple[int, int]:
    """Ordered template-pair match counts (A, B) at tolerance ``r``.

    Templates start at every position where both the length-m and the
    length-(m+1) window exist; distances are Chebyshev; self-pairs are
    excluded; a pair matches when its distance is <= r.
    """
    x = np.asarray(samples, dtype=float)
    npos = x.size - m
    if npos < 2:
        raise SeriesTooShort(
            f"series of {x.size} samples has no template pairs at m={m}")
    diff = np.abs(x[:, None] - x[None, :])
    dist = diff[:npos, :npos].copy()
    for offset in range(1, m):
        np.maximum(dist, diff[offset:offset + npos, offset:offset + npos],
                   out=dist)
    b_hits = dist <= r
    np.maximum(dist, diff[m:m + npos, m:m + npos], out=dist)
    a_hits = dist <= r
    np.fill_diagonal(b_hits, False)
    np.fill_diagonal(a_hits, False)
    return int(a_hits.sum()), int(b_hits.sum())


def sample_entropy(signal: Signal, params: SampEnParams = SampEnParams()) -> float:
    """SampEn of the signal, -ln(A/B) with tolerance r_frac * SD.

    The SD is the population standard deviation of the full series. A
    constant series (SD = 0) scores 0 by convention so the flat level of
    a glyph scale stays scoreable.
    """
    x = signal.samples
    if x.size <= params.m + 1:
        raise SeriesTooShort(
            f"need more than m+1={params.m + 1} samples, got {x.size}")
    sd = float(x.std())
    if sd == 0.0:
        return 0.0
    a, b = template_match_counts(x, params.m, params.r_frac * sd)
    if b == 0 or a == 0:
        raise NoTemplateMatches(f"match counts A={a}, B={b}")
    return -math.log(a / b)


def score_levels(levels, params: SampEnParams = SampEnParams()) -> list[float]:
    """Sample entropy of each signal, order preserved.

    Failures are re-raised with the offending level index prepended.
    """
    scores = []
    for i, signal in enumerate(levels):
        try:
            scores.append(sample_entropy(signal, params))
        except (SeriesTooShort, NoTemplateMatches) as exc:
            raise type(exc)(f"level {i}: {exc}") from exc
    return scores
