"""Seeded synthetic rating datasets for desk-scale benchmark runs.

The real MovieLens 1M and LDOS-CoMoDa files are not distributed with this
repository, so the benchmark and acceptance runs use generated stand-ins
that match the published user/item dimensions and carry a plausible rating
marginal.  Generation is fully deterministic given the seed, and every user
and item id is guaranteed to appear so compaction reproduces the requested
dimensions exactly.
"""

from __future__ import annotations

import numpy as np

from .data import RatingsDataset, _build_dataset

# Rating-level weights (levels 1..5).  The LDOS-like marginal is J-shaped:
# a polarized context-rating corpus dominated by 4s and 5s with a visible
# 1-star minority.  The ML-like marginal follows the widely reported
# MovieLens 1M histogram.
LDOS_LIKE_WEIGHTS = (0.12, 0.04, 0.07, 0.42, 0.35)
ML_LIKE_WEIGHTS = (0.057, 0.107, 0.261, 0.349, 0.226)

LDOS_LIKE_SHAPE = (121, 1232, 5000)
ML_SUBSAMPLE_SHAPE = (700, 3400, 100_000)


def synthetic_ratings(m: int, n: int, count: int, weights, seed: int) -> RatingsDataset:
    """Random (user, item, rating) triplets with full id coverage.

    The first max(m, n) triplets walk round-robin through user and item ids
    so every id appears at least once; the remainder picks cells uniformly.
    Ratings are drawn i.i.d. from the level weights.
    """
    base = max(m, n)
    if count < base:
        raise ValueError(f"need at least {base} ratings to cover all {m}x{n} ids")
    weights = np.asarray(weights, dtype=float)
    if weights.ndim != 1 or np.any(weights < 0) or weights.sum() <= 0:
        raise ValueError("weights must be nonnegative with positive sum")
    weights = weights / weights.sum()

    rng = np.random.default_rng(seed)
    users = np.concatenate([
        np.arange(base, dtype=np.int64) % m,
        rng.integers(0, m, size=count - base),
    ])
    items = np.concatenate([
        np.arange(base, dtype=np.int64) % n,
        rng.integers(0, n, size=count - base),
    ])
    levels = rng.choice(np.arange(1, weights.size + 1), size=count, p=weights)
    rows = [
        (str(u + 1), str(i + 1), float(r))
        for u, i, r in zip(users.tolist(), items.tolist(), levels.tolist())
    ]
    return _build_dataset(rows, rating_min=1.0, rating_max=5.0)


def ldos_like_dataset(seed: int = 2024) -> RatingsDataset:
    """Stand-in at LDOS-CoMoDa scale: 121 users x 1232 items."""
    m, n, count = LDOS_LIKE_SHAPE
    return synthetic_ratings(m, n, count, LDOS_LIKE_WEIGHTS, seed)


def ml_subsample_dataset(seed: int = 2024) -> RatingsDataset:
    """Stand-in for a 100k-rating MovieLens 1M subsample."""
    m, n, count = ML_SUBSAMPLE_SHAPE
    return synthetic_ratings(m, n, count, ML_LIKE_WEIGHTS, seed)


def write_movielens_file(dataset: RatingsDataset, path) -> None:
    """Write a dataset in the MovieLens ``::`` format (synthetic timestamps)."""
    inv_users = {idx: uid for uid, idx in dataset.user_ids.items()}
    inv_items = {idx: iid for iid, idx in dataset.item_ids.items()}
    with open(path, "w", encoding="utf-8") as fh:
        for counter, (i, j, r) in enumerate(dataset.triplets()):
            fh.write(f"{inv_users[i]}::{inv_items[j]}::{int(r)}::{978300000 + counter}\n")
