#!/usr/bin/env python3
"""Localization Monte-Carlo in the documented 10 x 10 x 3 m room: 1000
random device positions, per-distance noise sigma_d, per-axis and 3-D
error summaries from the fixes CSV."""

import argparse
import math

import numpy as np

from indradio.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--sigma-d", type=float, default=1.0)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    rc = cli_main(["loc", "sim", "--sigma-d", str(args.sigma_d),
                   "--trials", str(args.trials), "--seed", str(args.seed),
                   "--out-dir", args.out_dir, "--out", "fixes.csv"])
    if rc != 0:
        raise SystemExit(rc)

    rows = np.genfromtxt(f"{args.out_dir}/fixes.csv", delimiter=",",
                         skip_header=1)
    err = rows[:, 7]
    per_axis = math.sqrt(float(np.mean(err ** 2)) / 3.0)
    print(f"trials: {len(rows)}  sigma_d: {args.sigma_d} m")
    print(f"per-axis RMS error: {per_axis:.3f} m")
    print(f"3-D RMSE: {math.sqrt(float(np.mean(err ** 2))):.3f} m")
    print(f"median |error|: {float(np.median(err)):.3f} m")


if __name__ == "__main__":
    main()
