import numpy as np
import pytest

from greyshot.data import RatingsDataset

ACCEPTANCE_LINES = []


def record_acceptance(number, passed, detail):
    ACCEPTANCE_LINES.append(
        f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def make_dataset(m, n, count, seed=0, rating_min=1.0, rating_max=5.0):
    """Small random dataset with every user and item id present."""
    rng = np.random.default_rng(seed)
    base = max(m, n)
    assert count >= base
    users = np.concatenate([np.arange(base) % m, rng.integers(0, m, count - base)])
    items = np.concatenate([np.arange(base) % n, rng.integers(0, n, count - base)])
    ratings = rng.integers(int(rating_min), int(rating_max) + 1, count).astype(float)
    return RatingsDataset(
        users=users.astype(np.int64),
        items=items.astype(np.int64),
        ratings=ratings,
        m=m,
        n=n,
        rating_min=rating_min,
        rating_max=rating_max,
        user_ids={str(u): u for u in range(m)},
        item_ids={str(i): i for i in range(n)},
    )


@pytest.fixture
def tiny_dataset():
    return make_dataset(8, 12, 60, seed=3)
