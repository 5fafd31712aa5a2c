"""Enumerate every 1-3 input experiment on KnotInfo, run each once, prune.

    python scripts/full_sweep.py --out-dir sweep/ --max-inputs 1
    python scripts/full_sweep.py --out-dir sweep/ --limit 200

Writes results_{one,two,three}_fin.txt, {one,two,three}_pruned.txt and
results_x_high.txt (pruned results above 90%). Runs are resumable: specs
already present in a results file are skipped.
"""

import argparse
import logging
import os
import warnings

os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

from knotsearch import experiments as ex  # noqa: E402
from knotsearch import neuralnet as nn  # noqa: E402
from knotsearch.errors import MissingSubsetResult  # noqa: E402
from knotsearch.knotinfo import INVARIANT_KINDS, load_dataset  # noqa: E402

WORDS = {1: "one", 2: "two", 3: "three"}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out-dir", default="sweep")
    ap.add_argument("--max-inputs", type=int, default=3)
    ap.add_argument("--min-knots", type=int, default=ex.DEFAULT_MIN_KNOTS)
    ap.add_argument("--epochs", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--limit", type=int, help="stop after this many new experiments")
    ap.add_argument("--threshold", type=float, default=ex.DEFAULT_PRUNE_THRESHOLD)
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    ds = load_dataset()
    cols = list(INVARIANT_KINDS)
    os.makedirs(args.out_dir, exist_ok=True)
    paths = {k: os.path.join(args.out_dir, f"results_{WORDS[k]}_fin.txt") for k in (1, 2, 3)}
    done = set()
    for p in paths.values():
        if os.path.exists(p):
            done |= {(r.inputs, r.output) for r in ex.read_results(p)}

    specs = ex.enumerate_experiments(ds, cols, cols, args.max_inputs, args.min_knots, runs=1, seed_base=args.seed)
    logging.info("%d specs pass the data filter, %d already done", len(specs), len(done))
    todo = [s for s in specs if (s.inputs, s.output) not in done]
    if args.limit is not None:
        todo = todo[: args.limit]

    def sink(res):
        ex.write_results(paths[len(res.inputs)], [res])

    ex.run_many(ds, todo, nn.NetworkConfig(task=nn.REGRESSION, epochs=args.epochs), args.min_knots, args.workers, sink)

    rows = [r for p in paths.values() if os.path.exists(p) for r in ex.read_results(p)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MissingSubsetResult)
        pruned = ex.prune_results(rows, args.threshold)
    for k in (1, 2, 3):
        ex.write_results(os.path.join(args.out_dir, f"{WORDS[k]}_pruned.txt"), [r for r in pruned if len(r.inputs) == k], append=False)
    high = [r for r in pruned if len(r.inputs) > 1 and r.accuracy > 0.9 and not r.flags]
    ex.write_results(os.path.join(args.out_dir, "results_x_high.txt"), high, append=False)
    logging.info("%d results, %d survive pruning, %d above 90%%", len(rows), len(pruned), len(high))


if __name__ == "__main__":
    main()
