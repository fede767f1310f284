#!/usr/bin/env python3
"""Full channel-access latency study: DCF vs PCF vs HCCA over 5..50 AR
stations, then the reference-vs-EDF scheduler comparison at 24 ms safety
MSI. Writes one CSV per curve into results/ (plus manifests).

The contention sweep is the slow part (minutes at full duration); pass
--quick for a 2 s-per-point smoke run.
"""

import argparse
import sys

from indradio.cli import main as cli_main


def run(argv):
    rc = cli_main(argv)
    if rc != 0:
        sys.exit(rc)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--duration", type=float, default=30.0)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    duration = 2.0 if args.quick else args.duration

    common = ["--out-dir", args.out_dir, "--seed", str(args.seed),
              "--threads", str(args.threads), "--duration", str(duration)]
    run(["repro", "fig-delay", "--n-ar", "5..50:5", *common])
    run(["repro", "fig-scheduler", "--n-ar", "5..50:5", *common])
    print(f"channel-access study complete; CSVs in {args.out_dir}/")


if __name__ == "__main__":
    main()
