"""Quantumness-breaking classification for named and random channels.

Classifies a small zoo of single-system channels by reshuffling their
normalized dynamical matrix into a bipartite state and testing its discord,
then verifies the reshuffling identity (superoperator reshuffles to n times
the Jamiolkowski state) on random channels.

Usage:
    python3 scripts/channel_demo.py --random 20 --seed 5 --out verdicts.json
"""

import argparse
import json
import sys

import numpy as np

from geodiscord.channels import (
    channel_to_json,
    depolarizing_channel,
    identity_channel,
    jamiolkowski_state,
    measure_z_channel,
    quantumness_breaking_verdict,
    random_channel,
    reshuffled_max_singular_value,
    superoperator,
    unitary_channel,
)
from geodiscord.linalg import reshuffle
from geodiscord.states import random_haar_unitary


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--random", type=int, default=20,
                   help="number of random channels for the identity check")
    p.add_argument("--seed", type=int, default=5)
    p.add_argument("--out", default=None, help="optional JSON output path")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    zoo = {
        "identity(2)": identity_channel(2),
        "identity(3)": identity_channel(3),
        "depolarizing(2)": depolarizing_channel(2),
        "depolarizing(3)": depolarizing_channel(3),
        "measure_z": measure_z_channel(),
        "random_unitary(2)": unitary_channel(random_haar_unitary(2, args.seed)),
    }
    results = {}
    print(f"{'channel':<20} {'verdict':<26} {'discord':>12} {'rank':>5}")
    for name, phi in zoo.items():
        v = quantumness_breaking_verdict(phi)
        disc = ("n/a" if v.jamiolkowski_discord is None
                else f"{v.jamiolkowski_discord:.6f}")
        print(f"{name:<20} {v.status:<26} {disc:>12} {v.superoperator_rank:>5}")
        results[name] = {
            "verdict": v.status,
            "jamiolkowski_discord": v.jamiolkowski_discord,
            "superoperator_rank": v.superoperator_rank,
            "residual_lower_bound": v.residual_lower_bound,
            "max_singular_value": reshuffled_max_singular_value(
                jamiolkowski_state(phi)
            ),
            "channel": json.loads(channel_to_json(phi)),
        }

    worst = 0.0
    for k in range(args.random):
        n = 2 if k % 2 == 0 else 3
        phi = random_channel(n, kraus_count=k % (n * n) + 1, seed=[args.seed, k])
        err = float(np.max(np.abs(
            reshuffle(superoperator(phi), n, n) - n * jamiolkowski_state(phi).mat
        )))
        worst = max(worst, err)
    print(f"\nreshuffling identity on {args.random} random channels: "
          f"worst deviation {worst:.3e}")
    results["_reshuffling_identity_worst_error"] = worst

    if args.out:
        with open(args.out, "w") as fh:
            json.dump(results, fh, indent=2)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
