"""Maximal discord response at fixed purity, for every supported distance.

For each requested measure this sweeps a purity grid, evaluating the analytic
ceiling (where one exists), the extremal state family, and a random-state
envelope, by driving the `geodiscord maxcurve` command. One CSV per measure.

Usage:
    python3 scripts/run_maxcurve.py --points 30 --envelope-samples 25
    python3 scripts/run_maxcurve.py --measures trace_response hellinger_response
"""

import argparse
import sys
import time

from geodiscord.cli import main as cli_main

ALL_MEASURES = ("trace_response", "bures_response", "hellinger_response",
                "hs_response")


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--measures", nargs="+", default=list(ALL_MEASURES),
                   choices=ALL_MEASURES)
    p.add_argument("--points", type=int, default=30)
    p.add_argument("--envelope-samples", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--prefix", default="maxcurve",
                   help="output files are <prefix>_<measure>.csv")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    worst_rc = 0
    for measure in args.measures:
        out = f"{args.prefix}_{measure}.csv"
        start = time.time()
        rc = cli_main(
            ["maxcurve", "--measure", measure,
             "--points", str(args.points),
             "--envelope-samples", str(args.envelope_samples),
             "--seed", str(args.seed),
             "--restarts", str(args.restarts),
             "--out", out]
        )
        print(f"{measure}: rc={rc}, {time.time() - start:.1f} s -> {out}")
        worst_rc = max(worst_rc, rc)
    return worst_rc


if __name__ == "__main__":
    sys.exit(main())
