"""Dataset ingestion and splitting.

Both loaders compact original ids into dense indices in first-appearance
order, which is what makes the user/item counts of sparse id spaces match
published dataset dimensions.  Splits are views: they share the parent's
dimensions and id maps and only partition the triplet arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


class DatasetFormatError(ValueError):
    """A data file failed to parse; the message names the offending line."""


@dataclass
class RatingsDataset:
    """Sparse (user, item, rating) triplets over a dense M x N index space."""

    users: np.ndarray
    items: np.ndarray
    ratings: np.ndarray
    m: int
    n: int
    rating_min: float
    rating_max: float
    user_ids: dict = field(repr=False)
    item_ids: dict = field(repr=False)

    def __post_init__(self):
        self.users = np.asarray(self.users, dtype=np.int64)
        self.items = np.asarray(self.items, dtype=np.int64)
        self.ratings = np.asarray(self.ratings, dtype=float)
        if not (len(self.users) == len(self.items) == len(self.ratings)):
            raise ValueError("triplet arrays must have equal length")
        if len(self.users):
            if self.users.min() < 0 or self.users.max() >= self.m:
                raise ValueError("user index out of range")
            if self.items.min() < 0 or self.items.max() >= self.n:
                raise ValueError("item index out of range")
            if self.ratings.min() < self.rating_min or self.ratings.max() > self.rating_max:
                raise ValueError("rating outside the declared range")

    def __len__(self) -> int:
        return len(self.ratings)

    def triplets(self):
        for i, j, r in zip(self.users, self.items, self.ratings):
            yield int(i), int(j), float(r)

    def subset(self, indices: np.ndarray) -> "RatingsDataset":
        """A view over a subset of triplets sharing this dataset's id space."""
        return RatingsDataset(
            users=self.users[indices],
            items=self.items[indices],
            ratings=self.ratings[indices],
            m=self.m,
            n=self.n,
            rating_min=self.rating_min,
            rating_max=self.rating_max,
            user_ids=self.user_ids,
            item_ids=self.item_ids,
        )

    def equals(self, other: "RatingsDataset") -> bool:
        return (
            self.m == other.m
            and self.n == other.n
            and self.rating_min == other.rating_min
            and self.rating_max == other.rating_max
            and np.array_equal(self.users, other.users)
            and np.array_equal(self.items, other.items)
            and np.array_equal(self.ratings, other.ratings)
            and self.user_ids == other.user_ids
            and self.item_ids == other.item_ids
        )


def _build_dataset(rows, rating_min, rating_max) -> RatingsDataset:
    user_ids: dict = {}
    item_ids: dict = {}
    users = []
    items = []
    ratings = []
    for uid, iid, rating in rows:
        users.append(user_ids.setdefault(uid, len(user_ids)))
        items.append(item_ids.setdefault(iid, len(item_ids)))
        ratings.append(rating)
    ratings_arr = np.asarray(ratings, dtype=float)
    lo = float(ratings_arr.min()) if rating_min is None else float(rating_min)
    hi = float(ratings_arr.max()) if rating_max is None else float(rating_max)
    return RatingsDataset(
        users=np.asarray(users, dtype=np.int64),
        items=np.asarray(items, dtype=np.int64),
        ratings=ratings_arr,
        m=len(user_ids),
        n=len(item_ids),
        rating_min=lo,
        rating_max=hi,
        user_ids=user_ids,
        item_ids=item_ids,
    )


def load_movielens(path) -> RatingsDataset:
    """Parse MovieLens ``UserID::MovieID::Rating::Timestamp`` lines.

    The rating range is fixed to [1, 5]; timestamps are discarded.
    """
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("::")
            if len(parts) != 4:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: expected 4 '::'-separated fields, "
                    f"got {len(parts)}"
                )
            uid, iid, rating_text, _ = parts
            try:
                rating = float(rating_text)
            except ValueError:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: non-numeric rating {rating_text!r}"
                ) from None
            rows.append((uid, iid, rating))
    if not rows:
        raise DatasetFormatError(f"{path}: no ratings found")
    return _build_dataset(rows, rating_min=1.0, rating_max=5.0)


def load_delimited(
    path,
    delimiter: str = ",",
    user_col: int = 0,
    item_col: int = 1,
    rating_col: int = 2,
    skip_header: bool = False,
    rating_min: float | None = None,
    rating_max: float | None = None,
) -> RatingsDataset:
    """Generic delimited loader with configurable column positions.

    The rating range is inferred from the data unless overridden.  Duplicate
    (user, item) pairs are kept as separate triplets.
    """
    if len({user_col, item_col, rating_col}) != 3:
        raise ValueError("user, item and rating columns must be distinct")
    needed = max(user_col, item_col, rating_col) + 1
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if skip_header and lineno == 1:
                continue
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split(delimiter)
            if len(parts) < needed:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: expected at least {needed} columns, "
                    f"got {len(parts)}"
                )
            rating_text = parts[rating_col].strip()
            try:
                rating = float(rating_text)
            except ValueError:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: non-numeric rating {rating_text!r}"
                ) from None
            rows.append((parts[user_col].strip(), parts[item_col].strip(), rating))
    if not rows:
        raise DatasetFormatError(f"{path}: no ratings found")
    return _build_dataset(rows, rating_min, rating_max)


def write_delimited(dataset: RatingsDataset, path, delimiter: str = ",") -> None:
    """Write triplets back as delimited text using the original ids."""
    inv_users = {idx: uid for uid, idx in dataset.user_ids.items()}
    inv_items = {idx: iid for iid, idx in dataset.item_ids.items()}
    with open(path, "w", encoding="utf-8") as fh:
        for i, j, r in dataset.triplets():
            fh.write(f"{inv_users[i]}{delimiter}{inv_items[j]}{delimiter}{r:.17g}\n")


@dataclass(frozen=True)
class SplitSpec:
    test_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError(
                f"test_fraction must lie in (0, 1), got {self.test_fraction}"
            )


def split(dataset: RatingsDataset, spec: SplitSpec):
    """Seeded shuffle, then the first ceil(fraction * count) triplets become
    the test side.  Returns (train, test) views sharing the parent's id space.
    """
    count = len(dataset)
    if count == 0:
        raise ValueError("cannot split an empty dataset")
    n_test = math.ceil(spec.test_fraction * count)
    if n_test < 1 or count - n_test < 1:
        raise ValueError(
            f"test_fraction {spec.test_fraction} leaves an empty side "
            f"for {count} triplets"
        )
    perm = np.random.default_rng(spec.seed).permutation(count)
    test_idx = np.sort(perm[:n_test])
    train_idx = np.sort(perm[n_test:])
    return dataset.subset(train_idx), dataset.subset(test_idx)
