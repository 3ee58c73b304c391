"""Relation-ledger fuzzing with per-relation slack statistics.

Audits the full identity/inequality registry over random two-qubit states and
aggregates, per relation, the number of checks, the tightest observed slack,
and the violation count. Useful for spotting which bounds are near-saturated.

Usage:
    python3 scripts/run_audit.py --samples 200 --seed 7 --out audit_stats.csv
"""

import argparse
import csv
import math
import sys
import time

from geodiscord import bounds
from geodiscord.measures import OptimizerConfig
from geodiscord.states import random_haar_state


def parse_args(argv):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--out", default="audit_stats.csv")
    return p.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    config = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    stats = {}
    start = time.time()
    for k in range(args.samples):
        rho = random_haar_state(2, 2, rank=k % 4 + 1, seed=[args.seed, k])
        report = bounds.audit(rho, tol=args.tol, config=config)
        for r in report.records:
            cur = stats.setdefault(
                r.name, {"kind": r.relation_kind, "n": 0, "min_slack": math.inf,
                         "violations": 0}
            )
            cur["n"] += 1
            if not math.isnan(r.slack):
                cur["min_slack"] = min(cur["min_slack"], r.slack)
            if not r.satisfied:
                cur["violations"] += 1
        if (k + 1) % 50 == 0:
            print(f"  {k + 1}/{args.samples} states audited")
    elapsed = time.time() - start

    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["relation", "kind", "checks", "min_slack", "violations"])
        for name in sorted(stats):
            s = stats[name]
            writer.writerow(
                [name, s["kind"], s["n"], f"{s['min_slack']:.6e}", s["violations"]]
            )

    total = sum(s["violations"] for s in stats.values()
                if s["kind"] != "conjecture")
    conj = sum(s["violations"] for s in stats.values()
               if s["kind"] == "conjecture")
    print(f"wrote {args.out}: {args.samples} states, {len(stats)} relations, "
          f"{total} violations, {conj} conjecture counterexamples, "
          f"{elapsed:.1f} s")
    return 1 if total else 0


if __name__ == "__main__":
    sys.exit(main())
