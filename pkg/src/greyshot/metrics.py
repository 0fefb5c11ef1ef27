"""Evaluation metrics: MAE over held-out triplets and Degree of Matthew Effect.

MAE averages |r - r_hat| over the evaluated cells, optionally after an
affine min-max calibration of the prediction batch onto a target interval
(data-free scorers produce raw dot products on an arbitrary scale).

DME summarizes how skewed top-L exposure is:

    DME = 1 + n / sum_i ln(x_i / x_max)

over the per-item occurrence counts x_i of items appearing in at least one
top-L list.  The sum is nonpositive, so DME is at most 1; a perfectly even
profile makes the sum zero and the metric undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .scorers import Scorer


class DegenerateProfileError(ValueError):
    """All exposure counts equal: the DME denominator vanishes."""


@dataclass(frozen=True)
class RescalePolicy:
    """How raw predictions map onto the rating scale before MAE."""

    mode: str = "none"  # "none" | "minmax"
    target_min: float = 1.0
    target_max: float = 5.0

    def __post_init__(self):
        if self.mode not in ("none", "minmax"):
            raise ValueError(f"unknown rescale mode {self.mode!r}")
        if self.mode == "minmax" and not self.target_min < self.target_max:
            raise ValueError(
                f"need target_min < target_max, got [{self.target_min}, {self.target_max}]"
            )


NO_RESCALE = RescalePolicy("none")


def rescale(predictions: np.ndarray, policy: RescalePolicy) -> np.ndarray:
    """Apply the policy to a prediction batch (min-max hits the targets exactly)."""
    predictions = np.asarray(predictions, dtype=float)
    if policy.mode == "none":
        return predictions
    lo = predictions.min()
    hi = predictions.max()
    if hi == lo:
        raise ValueError("cannot min-max rescale a constant prediction batch")
    scale = (policy.target_max - policy.target_min) / (hi - lo)
    return policy.target_min + (predictions - lo) * scale


def mae(scorer: Scorer, test, policy: RescalePolicy = NO_RESCALE) -> float:
    """Mean absolute error of the scorer over test triplets (i, j, rating)."""
    users, items, ratings = _as_triplet_arrays(test)
    if users.size == 0:
        raise ValueError("cannot evaluate MAE on an empty test set")
    preds = scorer.score_pairs(users, items)
    preds = rescale(preds, policy)
    return float(np.mean(np.abs(ratings - preds)))


def _as_triplet_arrays(test):
    if hasattr(test, "users") and hasattr(test, "items") and hasattr(test, "ratings"):
        return (
            np.asarray(test.users, dtype=np.int64),
            np.asarray(test.items, dtype=np.int64),
            np.asarray(test.ratings, dtype=float),
        )
    rows = list(test)
    if not rows:
        return np.array([], dtype=np.int64), np.array([], dtype=np.int64), np.array([])
    users, items, ratings = zip(*rows)
    return (
        np.asarray(users, dtype=np.int64),
        np.asarray(items, dtype=np.int64),
        np.asarray(ratings, dtype=float),
    )


@dataclass(frozen=True)
class PopularityProfile:
    """Occurrence counts of items that made it into at least one top-L list."""

    counts: dict

    def __post_init__(self):
        if any(c < 1 for c in self.counts.values()):
            raise ValueError("profile counts must all be >= 1")

    @property
    def n(self) -> int:
        return len(self.counts)

    @property
    def x_max(self) -> float:
        return max(self.counts.values())

    @property
    def total(self) -> float:
        return sum(self.counts.values())


def popularity_profile(scorer: Scorer, m: int, n: int, top_l: int) -> PopularityProfile:
    """Count, per item, how many users' top-L lists contain it.

    Ties in scores break toward the smaller item id (stable sort on the
    negated scores).  Items never recommended do not appear.
    """
    if not 1 <= top_l <= n:
        raise ValueError(f"top_l must lie in [1, {n}], got {top_l}")
    counts = np.zeros(n, dtype=np.int64)
    for i in range(m):
        row = scorer.score_row(i)
        top = np.argsort(-row, kind="stable")[:top_l]
        counts[top] += 1
    nonzero = np.nonzero(counts)[0]
    return PopularityProfile({int(j): int(counts[j]) for j in nonzero})


def dme(profile: PopularityProfile) -> float:
    """Degree of Matthew Effect of an exposure profile.

    Raises DegenerateProfileError when every count equals the maximum
    (including single-item profiles); callers report such trials as
    undefined rather than inventing an infinity.
    """
    if profile.n < 1:
        raise ValueError("profile must contain at least one item")
    x_max = profile.x_max
    total = 0.0
    for x in profile.counts.values():
        total += math.log(x / x_max)
    if total == 0.0:
        raise DegenerateProfileError(
            "uniform exposure profile: DME is undefined (log-ratio sum is zero)"
        )
    return 1.0 + profile.n / total
