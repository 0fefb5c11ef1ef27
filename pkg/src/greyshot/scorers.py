"""Uniform scorer contract shared by GreyShot, matrix factorization and random.

A scorer is immutable after construction and answers predictions over a fixed
M x N index space.  Vectorized row/pair access exists because metric code
evaluates whole grids; score(i, j) stays as the scalar reference path.
"""

from __future__ import annotations

import numpy as np


class Scorer:
    """Deterministic prediction source over an M x N index space."""

    def __init__(self, name: str, m: int, n: int):
        self.name = name
        self.m = m
        self.n = n

    def _check(self, i: int, j: int) -> None:
        if not 0 <= i < self.m:
            raise IndexError(f"user index {i} out of range [0, {self.m})")
        if not 0 <= j < self.n:
            raise IndexError(f"item index {j} out of range [0, {self.n})")

    def score(self, i: int, j: int) -> float:
        raise NotImplementedError

    def score_row(self, i: int) -> np.ndarray:
        """Scores for every item for one user; default loops over score()."""
        return np.array([self.score(i, j) for j in range(self.n)])

    def score_pairs(self, users, items) -> np.ndarray:
        users = np.asarray(users)
        items = np.asarray(items)
        return np.array([self.score(int(i), int(j)) for i, j in zip(users, items)])


class DotProductScorer(Scorer):
    """Scores are rows of U times rows of V."""

    def __init__(self, name: str, u: np.ndarray, v: np.ndarray):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if u.ndim != 2 or v.ndim != 2 or u.shape[1] != v.shape[1]:
            raise ValueError(f"incompatible factor shapes {u.shape} and {v.shape}")
        super().__init__(name, u.shape[0], v.shape[0])
        self.u = u
        self.v = v

    def score(self, i: int, j: int) -> float:
        self._check(i, j)
        return float(self.u[i] @ self.v[j])

    def score_row(self, i: int) -> np.ndarray:
        self._check(i, 0)
        return self.u[i] @ self.v.T

    def score_pairs(self, users, items) -> np.ndarray:
        users = np.asarray(users, dtype=np.int64)
        items = np.asarray(items, dtype=np.int64)
        if users.size and (users.min() < 0 or users.max() >= self.m):
            raise IndexError("user index out of range")
        if items.size and (items.min() < 0 or items.max() >= self.n):
            raise IndexError("item index out of range")
        return np.einsum("ik,ik->i", self.u[users], self.v[items])


# SplitMix64 finalizer constants; arithmetic wraps mod 2**64.
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_GOLDEN = 0x9E3779B97F4A7C15
_MASK = 0xFFFFFFFFFFFFFFFF


def _mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * _MIX1 & _MASK
    z = (z ^ (z >> 27)) * _MIX2 & _MASK
    return z ^ (z >> 31)


class HashedUniformScorer(Scorer):
    """Uniform scores derived statelessly from a counter-based hash.

    Each cell's value is a pure function of (seed, i, j), so no M x N table
    is stored and scalar queries always agree with vectorized rows.
    """

    def __init__(self, m: int, n: int, low: float, high: float, seed: int,
                 name: str = "random"):
        if not low < high:
            raise ValueError(f"need low < high, got [{low}, {high}]")
        super().__init__(name, m, n)
        self.low = low
        self.high = high
        self.seed = int(seed)
        self._seed_mix = _mix64(self.seed & _MASK)

    def score(self, i: int, j: int) -> float:
        self._check(i, j)
        h = _mix64(((i * _GOLDEN & _MASK) ^ j) ^ self._seed_mix)
        return self.low + (self.high - self.low) * (h / 2.0**64)

    def score_row(self, i: int) -> np.ndarray:
        self._check(i, 0)
        z = np.full(self.n, (i * _GOLDEN) & _MASK, dtype=np.uint64)
        z ^= np.arange(self.n, dtype=np.uint64)
        z ^= np.uint64(self._seed_mix)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z ^= z >> np.uint64(31)
        return self.low + (self.high - self.low) * (z / 2.0**64)

    def score_pairs(self, users, items) -> np.ndarray:
        users = np.asarray(users, dtype=np.int64)
        items = np.asarray(items, dtype=np.int64)
        if users.size and (users.min() < 0 or users.max() >= self.m):
            raise IndexError("user index out of range")
        if items.size and (items.min() < 0 or items.max() >= self.n):
            raise IndexError("item index out of range")
        z = (users.astype(np.uint64) * np.uint64(_GOLDEN)) ^ items.astype(np.uint64)
        z ^= np.uint64(self._seed_mix)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z ^= z >> np.uint64(31)
        return self.low + (self.high - self.low) * (z / 2.0**64)
