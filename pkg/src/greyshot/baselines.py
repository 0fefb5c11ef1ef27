"""Reference algorithms behind the shared scorer contract.

Random placement draws each cell reproducibly from a counter-based hash;
classic matrix factorization runs plain SGD on squared error over the
observed triplets.  Both exist so the experiment harness can compare the
data-free model against something that does (and something that does not)
look at the ratings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .scorers import DotProductScorer, HashedUniformScorer, Scorer


def random_scorer(m: int, n: int, rating_min: float, rating_max: float,
                  seed: int) -> Scorer:
    """Uniform [rating_min, rating_max) predictions, reproducible per cell."""
    return HashedUniformScorer(m, n, rating_min, rating_max, seed)


@dataclass(frozen=True)
class MFConfig:
    """Classic matrix-factorization hyperparameters (rank matches GreyShot's
    default so comparisons are like-for-like)."""

    rank: int = 10
    learning_rate: float = 0.01
    regularization: float = 0.02
    epochs: int = 30
    seed: int = 0
    init_scale: float | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if self.learning_rate < 0:
            raise ValueError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if self.regularization < 0:
            raise ValueError(f"regularization must be >= 0, got {self.regularization}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.init_scale is None:
            object.__setattr__(self, "init_scale", 1.0 / math.sqrt(self.rank))

    def with_seed(self, seed: int) -> "MFConfig":
        return replace(self, seed=seed)


class MFScorer(DotProductScorer):
    """Trained MF factors plus the per-epoch training RMSE trace."""

    def __init__(self, u, v, epoch_rmse):
        super().__init__("mf", u, v)
        self.epoch_rmse = list(epoch_rmse)


def train_mf(dataset, config: MFConfig = MFConfig()) -> MFScorer:
    """SGD on squared error: e = r - U_i.V_j, with L2-regularized updates.

    Epochs visit the training triplets in a freshly shuffled order each time.
    """
    if len(dataset) == 0:
        raise ValueError("cannot train matrix factorization on an empty dataset")
    rng = np.random.default_rng(config.seed)
    u = rng.random((dataset.m, config.rank)) * config.init_scale
    v = rng.random((dataset.n, config.rank)) * config.init_scale

    users = dataset.users
    items = dataset.items
    ratings = dataset.ratings
    count = len(dataset)
    lr = config.learning_rate
    reg = config.regularization

    epoch_rmse = []
    for _ in range(config.epochs):
        order = rng.permutation(count)
        sq_sum = 0.0
        for idx in order.tolist():
            i = int(users[idx])
            j = int(items[idx])
            ui = u[i]
            vj = v[j]
            err = float(ratings[idx]) - float(ui @ vj)
            sq_sum += err * err
            # sequential rule: the item update sees the fresh user row
            ui_new = ui + lr * (err * vj - reg * ui)
            u[i] = ui_new
            v[j] = vj + lr * (err * ui_new - reg * vj)
        epoch_rmse.append(math.sqrt(sq_sum / count))
    return MFScorer(u, v, epoch_rmse)
