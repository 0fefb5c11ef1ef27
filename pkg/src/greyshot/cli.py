"""Command-line entry point.

Subcommands:
  gm11 fit    fit a GM(1,1) model to one column of numbers and forecast
  train       train GreyShot factors for an M x N grid and save them
  gradcheck   finite-difference verification of the analytic gradients
  experiment  multi-trial benchmark over a ratings dataset

Exit codes: 0 success, 2 configuration error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import sys

from .baselines import MFConfig
from .data import DatasetFormatError
from .experiment import (
    ConfigError,
    ExperimentConfig,
    load_dataset,
    run_experiment,
    summary_text,
    write_outputs,
)
from .gradcheck import REL_TOL, run_gradient_check
from .grey import GreyModelError, fit_gm11, forecast_restored
from .metrics import RescalePolicy
from .model import TrainConfig, save_params, train


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="greyshot")
    sub = parser.add_subparsers(dest="command", required=True)

    gm11 = sub.add_parser("gm11", help="GM(1,1) grey-model tools")
    gm11_sub = gm11.add_subparsers(dest="gm11_command", required=True)
    fit = gm11_sub.add_parser("fit", help="fit a series and print the forecast")
    fit.add_argument("--input", required=True, help="file with one number per line")
    fit.add_argument("--alpha", type=float, default=0.5)
    fit.add_argument("--horizon", type=int, default=4)
    fit.add_argument("--skip-header", action="store_true")

    tr = sub.add_parser("train", help="train GreyShot factors (no data needed)")
    tr.add_argument("--users", type=int, required=True)
    tr.add_argument("--items", type=int, required=True)
    tr.add_argument("--rank", type=int, default=10)
    tr.add_argument("--lr", type=float, default=0.01)
    tr.add_argument("--iters", type=int, default=100_000)
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--init-scale", type=float, default=None)
    tr.add_argument("--ascent", action="store_true",
                    help="flip the update direction (diverges; for ablation)")
    tr.add_argument("--out", required=True)

    gc = sub.add_parser("gradcheck", help="verify analytic gradients")
    gc.add_argument("--trials", type=int, default=1000)
    gc.add_argument("--seed", type=int, default=0)

    exp = sub.add_parser("experiment", help="run the benchmark protocol")
    exp.add_argument("--data", required=True)
    exp.add_argument("--format", choices=("movielens", "delimited"),
                     default="movielens")
    exp.add_argument("--delimiter", default=",")
    exp.add_argument("--user-col", type=int, default=0)
    exp.add_argument("--item-col", type=int, default=1)
    exp.add_argument("--rating-col", type=int, default=2)
    exp.add_argument("--skip-header", action="store_true")
    exp.add_argument("--rating-min", type=float, default=None)
    exp.add_argument("--rating-max", type=float, default=None)
    exp.add_argument("--algos", default="greyshot,mf,random",
                     help="comma-separated subset of greyshot,mf,random")
    exp.add_argument("--trials", type=int, default=10)
    exp.add_argument("--seed", type=int, default=0)
    exp.add_argument("--test-fraction", type=float, default=0.2)
    exp.add_argument("--top-l", type=int, default=10)
    exp.add_argument("--workers", type=int, default=1)
    exp.add_argument("--out-dir", default=None)
    exp.add_argument("--greyshot-rank", type=int, default=10)
    exp.add_argument("--greyshot-lr", type=float, default=0.01)
    exp.add_argument("--greyshot-iters", type=int, default=100_000)
    exp.add_argument("--greyshot-init-scale", type=float, default=None)
    exp.add_argument("--greyshot-rescale", default=None, metavar="MODE[:LO:HI]",
                     help="override, e.g. 'none' or 'minmax:3:5'")
    exp.add_argument("--random-rescale", default=None, metavar="MODE[:LO:HI]")
    exp.add_argument("--mf-rescale", default=None, metavar="MODE[:LO:HI]")
    exp.add_argument("--mf-rank", type=int, default=10)
    exp.add_argument("--mf-lr", type=float, default=0.01)
    exp.add_argument("--mf-reg", type=float, default=0.02)
    exp.add_argument("--mf-epochs", type=int, default=30)
    return parser


def _read_column(path, skip_header):
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if skip_header and lineno == 1:
                continue
            text = line.strip().split(",")[0]
            if not text:
                continue
            try:
                values.append(float(text))
            except ValueError:
                raise DatasetFormatError(
                    f"{path}: line {lineno}: not a number: {text!r}"
                ) from None
    return values


def _parse_policy(text) -> RescalePolicy | None:
    if text is None:
        return None
    parts = text.split(":")
    if parts[0] == "none":
        return RescalePolicy("none")
    if parts[0] == "minmax":
        if len(parts) == 3:
            return RescalePolicy("minmax", float(parts[1]), float(parts[2]))
        if len(parts) == 1:
            return None  # fall back to the dataset-range default
    raise ConfigError(f"cannot parse rescale policy {text!r}")


def cmd_gm11_fit(args) -> int:
    values = _read_column(args.input, args.skip_header)
    model = fit_gm11(values, alpha=args.alpha)
    print(f"a,{model.a:.9g}")
    print(f"b,{model.b:.9g}")
    for step, value in enumerate(forecast_restored(model, args.horizon), start=1):
        print(f"{step},{value:.9g}")
    return 0


def cmd_train(args) -> int:
    config = TrainConfig(
        rank=args.rank,
        learning_rate=args.lr,
        iterations=args.iters,
        seed=args.seed,
        init_scale=args.init_scale,
        ascent=args.ascent,
    )
    params = train(args.users, args.items, config)
    save_params(params, args.out)
    print(f"wrote {args.out}: {params.m}x{params.n} rank {params.rank} "
          f"a={params.a:.9g} b={params.b:.9g} skipped={params.skipped_steps}")
    return 0


def cmd_gradcheck(args) -> int:
    report = run_gradient_check(trials=args.trials, seed=args.seed)
    for name, err in report.max_rel_err.items():
        print(f"{name}: max relative error {err:.3g}")
    print(f"{report.evaluated} points checked, tolerance {REL_TOL:g}: "
          + ("PASS" if report.passed else "FAIL"))
    return 0 if report.passed else 1


def cmd_experiment(args) -> int:
    algorithms = tuple(a.strip() for a in args.algos.split(",") if a.strip())
    config = ExperimentConfig(
        algorithms=algorithms,
        trials=args.trials,
        base_seed=args.seed,
        test_fraction=args.test_fraction,
        top_l=args.top_l,
        workers=args.workers,
        greyshot=TrainConfig(
            rank=args.greyshot_rank,
            learning_rate=args.greyshot_lr,
            iterations=args.greyshot_iters,
            init_scale=args.greyshot_init_scale,
        ),
        mf=MFConfig(
            rank=args.mf_rank,
            learning_rate=args.mf_lr,
            regularization=args.mf_reg,
            epochs=args.mf_epochs,
        ),
        greyshot_rescale=_parse_policy(args.greyshot_rescale),
        random_rescale=_parse_policy(args.random_rescale),
        mf_rescale=_parse_policy(args.mf_rescale),
    )
    loader_options = {}
    if args.format == "delimited":
        loader_options = dict(
            delimiter=args.delimiter,
            user_col=args.user_col,
            item_col=args.item_col,
            rating_col=args.rating_col,
            skip_header=args.skip_header,
            rating_min=args.rating_min,
            rating_max=args.rating_max,
        )
    dataset = load_dataset(args.data, args.format, **loader_options)
    reports, summaries = run_experiment(config, dataset)
    if args.out_dir:
        write_outputs(args.out_dir, reports, summaries)
    print(summary_text(summaries), end="")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "gm11": cmd_gm11_fit,
        "train": cmd_train,
        "gradcheck": cmd_gradcheck,
        "experiment": cmd_experiment,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, ValueError) as exc:
        if isinstance(exc, (GreyModelError, DatasetFormatError)):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
