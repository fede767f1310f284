#!/usr/bin/env python3
"""NLOS identification study: generate the synthetic CIR set, evaluate the
four feature subsets, and print the accuracy table."""

import argparse

from indradio.cli import main as cli_main


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    for argv in (
        ["nlos", "gen", "--seed", str(args.seed), "--out-dir", args.out_dir,
         "--out", "cirs.bin"],
        ["nlos", "eval", "--data", f"{args.out_dir}/cirs.bin",
         "--subsets", "s1,s2,s3,s4", "--seed", str(args.seed),
         "--out-dir", args.out_dir, "--out", "acc.csv"],
    ):
        rc = cli_main(argv)
        if rc != 0:
            raise SystemExit(rc)

    with open(f"{args.out_dir}/acc.csv") as fh:
        print(fh.read().strip())


if __name__ == "__main__":
    main()
