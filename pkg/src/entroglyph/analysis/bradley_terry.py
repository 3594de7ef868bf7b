"""Bradley-Terry ranking from paired comparisons.

The model assigns each glyph an ability alpha with
P(i beats j) = exp(alpha_i) / (exp(alpha_i) + exp(alpha_j)); the
reference item is pinned at 0. Fitting is Newton/IRLS on the binomial
logit likelihood; standard errors come from the inverse observed
information, and deviances follow the no-intercept binomial GLM
convention (null model: every contest is 50/50).
"""

from __future__ import annotations

import json
import math
import statistics
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from ..errors import DisconnectedGraph, NonConvergence, SelfPair

__all__ = [
    "ComparisonRow",
    "PairComparisonTable",
    "BTResult",
    "bt_fit",
    "merge_duplicates",
    "table_to_json",
    "table_from_json",
]


@dataclass(frozen=True)
class ComparisonRow:
    """Merged counts for one unordered glyph pair."""

    left: str
    right: str
    chose_left: int
    chose_right: int
    mean_rt: float | None = None

    def __post_init__(self):
        if self.left == self.right:
            raise SelfPair(f"pair of {self.left!r} with itself")
        if self.chose_left < 0 or self.chose_right < 0:
            raise ValueError("choice counts must be non-negative")


@dataclass(frozen=True)
class PairComparisonTable:
    rows: tuple

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        seen = set()
        for row in rows:
            key = frozenset((row.left, row.right))
            if key in seen:
                raise ValueError(
                    f"duplicate unordered pair {sorted(key)}; merge first")
            seen.add(key)

    def items(self) -> list[str]:
        return sorted({g for r in self.rows for g in (r.left, r.right)})

    def mean_rts(self) -> list[float]:
        return [r.mean_rt for r in self.rows if r.mean_rt is not None]


@dataclass(frozen=True)
class BTResult:
    """Fitted abilities with Wald statistics and deviance summary."""

    reference: str
    abilities: dict          # every item, reference included at 0.0
    std_errors: dict         # free items only
    z_values: dict
    p_values: dict
    null_deviance: float
    residual_deviance: float
    pseudo_r2: float
    iterations: int

    def win_probability(self, left: str, right: str) -> float:
        delta = self.abilities[left] - self.abilities[right]
        return 1.0 / (1.0 + math.exp(-delta))

    def ranking(self) -> list[str]:
        return sorted(self.abilities, key=self.abilities.get, reverse=True)


def merge_duplicates(records) -> PairComparisonTable:
    """Aggregate per-trial choice records onto unordered pairs.

    Each record is (left, right, choice, rt) with choice "left"/"right";
    rt may be None. Counts are attributed to the lexicographically
    ordered pair, and mean_rt averages every trial of the pair.
    """
    counts: dict[tuple, list] = {}
    for rec in records:
        left, right, choice, rt = rec
        if left == right:
            raise SelfPair(f"trial pairs {left!r} with itself")
        if choice not in ("left", "right"):
            raise ValueError(f"choice must be left or right, got {choice!r}")
        winner = left if choice == "left" else right
        key = (left, right) if left < right else (right, left)
        entry = counts.setdefault(key, [0, 0, []])
        entry[0 if winner == key[0] else 1] += 1
        if rt is not None:
            entry[2].append(float(rt))
    rows = tuple(
        ComparisonRow(key[0], key[1], wl, wr,
                      statistics.fmean(rts) if rts else None)
        for key, (wl, wr, rts) in sorted(counts.items())
    )
    return PairComparisonTable(rows)


def _check_connected(rows, items) -> None:
    adjacency = {g: set() for g in items}
    for r in rows:
        if r.chose_left + r.chose_right > 0:
            adjacency[r.left].add(r.right)
            adjacency[r.right].add(r.left)
    seen = {items[0]}
    frontier = [items[0]]
    while frontier:
        for nxt in adjacency[frontier.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    if len(seen) != len(items):
        raise DisconnectedGraph(
            f"items {sorted(set(items) - seen)} unreachable from "
            f"{items[0]!r}")


def _binomial_deviance(y, n, mu) -> float:
    total = 0.0
    for yi, ni, mi in zip(y, n, mu):
        if yi > 0:
            total += yi * math.log(yi / mi)
        if ni - yi > 0:
            total += (ni - yi) * math.log((ni - yi) / (ni - mi))
    return 2.0 * total


def bt_fit(table: PairComparisonTable, reference: str | None = None,
           max_iter: int = 500, tol: float = 1e-10) -> BTResult:
    """Maximum-likelihood abilities with the reference pinned at zero."""
    items = table.items()
    if len(items) < 2:
        raise ValueError("need at least two compared items")
    if reference is None:
        reference = items[0]
    if reference not in items:
        raise ValueError(f"reference {reference!r} not among items {items}")
    _check_connected(table.rows, items)

    free = [g for g in items if g != reference]
    col = {g: i for i, g in enumerate(free)}
    rows = [r for r in table.rows if r.chose_left + r.chose_right > 0]

    x = np.zeros((len(rows), len(free)))
    for i, r in enumerate(rows):
        if r.left != reference:
            x[i, col[r.left]] += 1.0
        if r.right != reference:
            x[i, col[r.right]] -= 1.0
    y = np.array([r.chose_left for r in rows], dtype=float)
    n = np.array([r.chose_left + r.chose_right for r in rows], dtype=float)

    alpha = np.zeros(len(free))
    iterations = 0
    converged = False
    for iterations in range(1, max_iter + 1):
        p = 1.0 / (1.0 + np.exp(-(x @ alpha)))
        gradient = x.T @ (y - n * p)
        info = x.T @ (x * (n * p * (1.0 - p))[:, None])
        try:
            step = np.linalg.solve(info, gradient)
        except np.linalg.LinAlgError as exc:
            raise NonConvergence(iterations,
                                 float(np.abs(gradient).max())) from exc
        alpha += step
        if not np.all(np.isfinite(alpha)):
            raise NonConvergence(iterations, float("inf"))
        if np.abs(step).max() < tol:
            converged = True
            break
    if not converged:
        p = 1.0 / (1.0 + np.exp(-(x @ alpha)))
        raise NonConvergence(max_iter,
                             float(np.abs(x.T @ (y - n * p)).max()))

    p = 1.0 / (1.0 + np.exp(-(x @ alpha)))
    info = x.T @ (x * (n * p * (1.0 - p))[:, None])
    covariance = np.linalg.inv(info)
    se = np.sqrt(np.diag(covariance))
    z = alpha / se
    p_two_sided = 2.0 * norm.sf(np.abs(z))

    null_dev = _binomial_deviance(y, n, n * 0.5)
    resid_dev = _binomial_deviance(y, n, n * p)
    # an exactly balanced table leaves nothing for the model to explain
    pseudo_r2 = 0.0 if null_dev == 0.0 else 1.0 - resid_dev / null_dev

    abilities = {reference: 0.0}
    abilities.update({g: float(alpha[col[g]]) for g in free})
    return BTResult(
        reference=reference,
        abilities=abilities,
        std_errors={g: float(se[col[g]]) for g in free},
        z_values={g: float(z[col[g]]) for g in free},
        p_values={g: float(p_two_sided[col[g]]) for g in free},
        null_deviance=null_dev,
        residual_deviance=resid_dev,
        pseudo_r2=pseudo_r2,
        iterations=iterations,
    )


# --- JSON forms ------------------------------------------------------------

def table_to_json(table: PairComparisonTable) -> str:
    return json.dumps({
        "rows": [
            {"left": r.left, "right": r.right, "chose_left": r.chose_left,
             "chose_right": r.chose_right, "mean_rt": r.mean_rt}
            for r in table.rows
        ],
    }, indent=2)


def table_from_json(text: str) -> PairComparisonTable:
    doc = json.loads(text)
    return PairComparisonTable(tuple(
        ComparisonRow(e["left"], e["right"], int(e["chose_left"]),
                      int(e["chose_right"]), e.get("mean_rt"))
        for e in doc["rows"]
    ))
