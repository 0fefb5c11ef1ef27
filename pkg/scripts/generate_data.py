#!/usr/bin/env python3
"""Write the synthetic benchmark datasets to data/.

Two files are produced:
  data/ldos_like.csv      121 x 1232, 5000 ratings, comma-delimited
  data/ml1m_subsample.dat 700 x 3400, 100k ratings, MovieLens '::' format

Both are deterministic stand-ins at the published dataset dimensions; see
greyshot/synth.py for the rating marginals.
"""

import argparse
from pathlib import Path

from greyshot.data import write_delimited
from greyshot.synth import ldos_like_dataset, ml_subsample_dataset, write_movielens_file


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="data")
    parser.add_argument("--seed", type=int, default=2024)
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    ldos = ldos_like_dataset(seed=args.seed)
    write_delimited(ldos, out / "ldos_like.csv")
    print(f"wrote {out / 'ldos_like.csv'}: {ldos.m}x{ldos.n}, {len(ldos)} ratings")

    ml = ml_subsample_dataset(seed=args.seed)
    write_movielens_file(ml, out / "ml1m_subsample.dat")
    print(f"wrote {out / 'ml1m_subsample.dat'}: {ml.m}x{ml.n}, {len(ml)} ratings")


if __name__ == "__main__":
    main()
