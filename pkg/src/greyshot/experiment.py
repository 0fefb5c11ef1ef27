"""Seeded multi-trial experiment harness.

Each trial derives its seed as base_seed + trial_index, splits the dataset,
builds one scorer and evaluates MAE on the held-out split plus DME over the
full-grid top-L exposure profile.  GreyShot's scorer is constructed from the
grid dimensions alone; the train split never reaches it.  Results aggregate
into min/avg/max summaries per algorithm and serialize as CSV plus an
aligned text table.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from .baselines import MFConfig, random_scorer, train_mf
from .data import RatingsDataset, SplitSpec, load_delimited, load_movielens, split
from .metrics import (
    DegenerateProfileError,
    RescalePolicy,
    dme,
    mae,
    popularity_profile,
)
from .model import TrainConfig, train
from .scorers import DotProductScorer, Scorer

KNOWN_ALGORITHMS = ("greyshot", "mf", "random")


class ConfigError(ValueError):
    """The experiment configuration is invalid before any work starts."""


@dataclass(frozen=True)
class ExperimentConfig:
    algorithms: tuple = KNOWN_ALGORITHMS
    trials: int = 10
    base_seed: int = 0
    test_fraction: float = 0.2
    top_l: int = 10
    workers: int = 1
    greyshot: TrainConfig = field(default_factory=TrainConfig)
    mf: MFConfig = field(default_factory=MFConfig)
    # None means the per-algorithm default: min-max onto the dataset's
    # rating range for the data-free scorers, no rescaling for MF.
    greyshot_rescale: RescalePolicy | None = None
    random_rescale: RescalePolicy | None = None
    mf_rescale: RescalePolicy | None = None

    def __post_init__(self):
        if not self.algorithms:
            raise ConfigError("algorithm set must be non-empty")
        for algo in self.algorithms:
            if algo not in KNOWN_ALGORITHMS:
                raise ConfigError(
                    f"unknown algorithm {algo!r}; expected one of {KNOWN_ALGORITHMS}"
                )
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ConfigError(f"workers must be >= 1, got {self.workers}")
        if self.top_l < 1:
            raise ConfigError(f"top_l must be >= 1, got {self.top_l}")

    def rescale_for(self, algorithm: str, dataset: RatingsDataset) -> RescalePolicy:
        override = {
            "greyshot": self.greyshot_rescale,
            "random": self.random_rescale,
            "mf": self.mf_rescale,
        }[algorithm]
        if override is not None:
            return override
        if algorithm == "mf":
            return RescalePolicy("none")
        return RescalePolicy("minmax", dataset.rating_min, dataset.rating_max)


@dataclass(frozen=True)
class TrialReport:
    algorithm: str
    trial: int
    seed: int
    mae: float
    dme: float | None
    skipped_steps: int
    ms: int


@dataclass(frozen=True)
class AlgoSummary:
    algorithm: str
    mae_min: float
    mae_avg: float
    mae_max: float
    dme_min: float | None
    dme_avg: float | None
    dme_max: float | None
    dme_undefined: int


def make_scorer(algorithm: str, train_split: RatingsDataset, dataset: RatingsDataset,
                seed: int, config: ExperimentConfig) -> Scorer:
    """Build one trial's scorer.  GreyShot sees only (m, n, seeded config)."""
    if algorithm == "greyshot":
        params = train(dataset.m, dataset.n, config.greyshot.with_seed(seed))
        scorer = DotProductScorer("greyshot", params.u, params.v)
        scorer.skipped_steps = params.skipped_steps
        return scorer
    if algorithm == "mf":
        return train_mf(train_split, config.mf.with_seed(seed))
    if algorithm == "random":
        return random_scorer(dataset.m, dataset.n, dataset.rating_min,
                             dataset.rating_max, seed)
    raise ConfigError(f"unknown algorithm {algorithm!r}")


def run_trial(dataset: RatingsDataset, algorithm: str, trial_index: int,
              config: ExperimentConfig) -> TrialReport:
    if algorithm not in KNOWN_ALGORITHMS:
        raise ConfigError(f"unknown algorithm {algorithm!r}")
    seed = config.base_seed + trial_index
    started = time.perf_counter()
    train_split, test_split = split(dataset, SplitSpec(config.test_fraction, seed))
    scorer = make_scorer(algorithm, train_split, dataset, seed, config)
    policy = config.rescale_for(algorithm, dataset)
    mae_value = mae(scorer, test_split, policy)
    try:
        profile = popularity_profile(scorer, dataset.m, dataset.n, config.top_l)
        dme_value = dme(profile)
    except DegenerateProfileError:
        dme_value = None
    ms = int(round((time.perf_counter() - started) * 1000))
    return TrialReport(
        algorithm=algorithm,
        trial=trial_index,
        seed=seed,
        mae=mae_value,
        dme=dme_value,
        skipped_steps=getattr(scorer, "skipped_steps", 0),
        ms=ms,
    )


def _trial_task(args):
    dataset, algorithm, trial_index, config = args
    return run_trial(dataset, algorithm, trial_index, config)


def run_experiment(config: ExperimentConfig, dataset: RatingsDataset):
    """Run trials x algorithms and aggregate.  Returns (reports, summaries)."""
    jobs = [
        (dataset, algo, t, config)
        for algo in config.algorithms
        for t in range(config.trials)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            reports = list(pool.map(_trial_task, jobs))
    else:
        reports = [_trial_task(job) for job in jobs]
    reports.sort(key=lambda r: (config.algorithms.index(r.algorithm), r.trial))
    summaries = [
        summarize(algo, [r for r in reports if r.algorithm == algo])
        for algo in config.algorithms
    ]
    return reports, summaries


def summarize(algorithm: str, reports) -> AlgoSummary:
    maes = [r.mae for r in reports]
    dmes = [r.dme for r in reports if r.dme is not None]
    return AlgoSummary(
        algorithm=algorithm,
        mae_min=min(maes),
        mae_avg=sum(maes) / len(maes),
        mae_max=max(maes),
        dme_min=min(dmes) if dmes else None,
        dme_avg=sum(dmes) / len(dmes) if dmes else None,
        dme_max=max(dmes) if dmes else None,
        dme_undefined=len(reports) - len(dmes),
    )


def _fmt(value) -> str:
    return "" if value is None else format(value, ".9g")


def trials_csv(reports) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["algorithm", "trial", "seed", "mae", "dme", "skipped_steps", "ms"])
    for r in reports:
        writer.writerow(
            [r.algorithm, r.trial, r.seed, _fmt(r.mae), _fmt(r.dme),
             r.skipped_steps, r.ms]
        )
    return out.getvalue()


def summary_csv(summaries) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["algorithm", "mae_min", "mae_avg", "mae_max",
         "dme_min", "dme_avg", "dme_max", "dme_undefined_count"]
    )
    for s in summaries:
        writer.writerow(
            [s.algorithm, _fmt(s.mae_min), _fmt(s.mae_avg), _fmt(s.mae_max),
             _fmt(s.dme_min), _fmt(s.dme_avg), _fmt(s.dme_max), s.dme_undefined]
        )
    return out.getvalue()


def summary_text(summaries) -> str:
    headers = ["algorithm", "mae_min", "mae_avg", "mae_max",
               "dme_min", "dme_avg", "dme_max", "dme_undef"]
    rows = [headers] + [
        [s.algorithm, _fmt(s.mae_min), _fmt(s.mae_avg), _fmt(s.mae_max),
         _fmt(s.dme_min) or "-", _fmt(s.dme_avg) or "-", _fmt(s.dme_max) or "-",
         str(s.dme_undefined)]
        for s in summaries
    ]
    widths = [max(len(row[c]) for row in rows) for c in range(len(headers))]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ]
    return "\n".join(lines) + "\n"


def write_outputs(out_dir, reports, summaries) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "trials.csv").write_text(trials_csv(reports), encoding="utf-8")
    (out / "summary.csv").write_text(summary_csv(summaries), encoding="utf-8")
    (out / "summary.txt").write_text(summary_text(summaries), encoding="utf-8")


def load_dataset(path, data_format: str, **loader_options) -> RatingsDataset:
    if data_format == "movielens":
        return load_movielens(path)
    if data_format == "delimited":
        return load_delimited(path, **loader_options)
    raise ConfigError(f"unknown data format {data_format!r}")
