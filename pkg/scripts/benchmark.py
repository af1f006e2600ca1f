#!/usr/bin/env python3
"""Micro-benchmark: store growth and command latency as k varies.

Report-only; nothing here gates the test suite. Run as:

    python3 scripts/benchmark.py [--instances 30] [--seed 7]
"""

from __future__ import annotations

import argparse
import copy
import random
import statistics
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from gen import random_problem  # noqa: E402

from coins.conference import CONFERENCE_SCENARIO  # noqa: E402
from coins.engine import CONSISTENT, new_engine, propagate, reactivate, relax  # noqa: E402
from coins.session import session_from_doc  # noqa: E402


def bench_random(k: int, instances: int, seed: int) -> dict:
    load_times: list[float] = []
    move_times: list[float] = []
    expl_counts: list[int] = []
    for i in range(instances):
        p = random_problem(random.Random(seed + i), k=k)
        t0 = time.perf_counter()
        st = new_engine(p)
        propagate(st)
        load_times.append(time.perf_counter() - t0)
        rng = random.Random(seed * 1000 + i)
        for _ in range(8):
            active = sorted(st.problem.config.active)
            relaxed = sorted(st.problem.config.relaxed)
            t0 = time.perf_counter()
            if st.status == CONSISTENT and relaxed and rng.random() < 0.5:
                reactivate(st, rng.choice(relaxed))
            elif active:
                relax(st, rng.choice(active))
            move_times.append(time.perf_counter() - t0)
        expl_counts.append(st.store.stats().explanation_count)
    return {
        "load_ms": statistics.mean(load_times) * 1e3,
        "move_ms": statistics.mean(move_times) * 1e3,
        "expl_mean": statistics.mean(expl_counts),
        "expl_max": max(expl_counts),
    }


def bench_conference(k: int) -> dict:
    doc = copy.deepcopy(CONFERENCE_SCENARIO)
    t0 = time.perf_counter()
    session = session_from_doc(doc, k_override=k)
    load_ms = (time.perf_counter() - t0) * 1e3
    t0 = time.perf_counter()
    session.dispatch({"op": "conflicts"})
    conflicts_ms = (time.perf_counter() - t0) * 1e3
    stats = session.state.store.stats()
    return {
        "load_ms": load_ms,
        "conflicts_ms": conflicts_ms,
        "explanations": stats.explanation_count,
        "per_bucket": stats.per_bucket,
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=30)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    print(f"random instances ({args.instances} per k)")
    print(f"{'k':>2} {'load ms':>9} {'move ms':>9} {'expl mean':>10} {'expl max':>9}")
    for k in (1, 2, 3, 4):
        r = bench_random(k, args.instances, args.seed)
        print(
            f"{k:>2} {r['load_ms']:>9.2f} {r['move_ms']:>9.2f} "
            f"{r['expl_mean']:>10.1f} {r['expl_max']:>9}"
        )

    print("\nconference scenario")
    print(f"{'k':>2} {'load ms':>9} {'conflicts ms':>13} {'expl':>6}  per-bucket")
    for k in (1, 2, 3, 4):
        r = bench_conference(k)
        print(
            f"{k:>2} {r['load_ms']:>9.2f} {r['conflicts_ms']:>13.2f} "
            f"{r['explanations']:>6}  {r['per_bucket']}"
        )


if __name__ == "__main__":
    main()
