#!/usr/bin/env python3
"""Random-corpus benchmark: solve random sequents per logic and report
timing, verdict mix, witness sizes, and recursion shape.

Usage:
    python3 scripts/random_benchmark.py [--per-logic N] [--depth D] [--seed S]
"""

import argparse
import random
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from helpers import rand_metric_space, rand_sequent  # noqa: E402

from nexfuz.logics import LOGIC_NAMES, get_logic  # noqa: E402
from nexfuz.models import check_sequent  # noqa: E402
from nexfuz.solver import SolveStats, sat  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--per-logic", type=int, default=200)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--max-den", type=int, default=16)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()

    for name in LOGIC_NAMES:
        rng = random.Random(args.seed)
        times = []
        n_sat = 0
        depth_seen = 0
        sizes = []
        for _ in range(args.per_logic):
            space = rand_metric_space(rng) if name.startswith("metric") else None
            seq = rand_sequent(rng, name, depth=args.depth, space=space,
                               max_den=args.max_den)
            logic = get_logic(name, space)
            stats = SolveStats()
            t0 = time.perf_counter()
            verdict = sat(seq, logic, stats=stats, verify=False)
            times.append(time.perf_counter() - t0)
            depth_seen = max(depth_seen, stats.max_depth)
            if verdict.sat:
                n_sat += 1
                assert check_sequent(verdict.model, verdict.state, seq)
                sizes.append(len(verdict.model.states))
        print(
            f"{name:13s} n={args.per_logic:4d} sat={n_sat:4d} "
            f"mean={statistics.mean(times)*1e3:7.2f}ms "
            f"p95={sorted(times)[int(0.95 * len(times))]*1e3:7.2f}ms "
            f"max={max(times)*1e3:8.2f}ms depth<={depth_seen} "
            f"witness-states-mean={statistics.mean(sizes) if sizes else 0:.1f}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
