"""Accuracy heatmap over Jones evaluation points in the upper half square.

    python scripts/heatmap_scan.py epsilon --out eps_heatmap.csv
    python scripts/heatmap_scan.py ozsvath_szabo_tau_invariant --step 0.2 --runs 1

The full 0.1 grid at five runs is 231 x 5 trainings (about an hour on one core).
"""

import argparse
import os

os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

from knotsearch import experiments as ex  # noqa: E402
from knotsearch import neuralnet as nn  # noqa: E402
from knotsearch.knotinfo import load_dataset  # noqa: E402
from knotsearch.report import emit_heatmap_plot_data  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("output")
    ap.add_argument("--poly", default="jones_polynomial_vector")
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--runs", type=int, default=5)
    ap.add_argument("--epochs", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out")
    args = ap.parse_args()

    ds = load_dataset()
    grid = ex.scan_grid(
        ds,
        args.poly,
        args.output,
        step=args.step,
        runs=args.runs,
        config=nn.NetworkConfig(task=nn.REGRESSION, epochs=args.epochs),
        min_knots=ex.DEFAULT_MIN_KNOTS,
        seed_base=args.seed,
        workers=args.workers,
        progress=lambda p, a: print(f"{p}\t{a:.4f}", flush=True),
    )
    text = emit_heatmap_plot_data(grid)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    best, acc = grid.best()
    print(f"best point {best}: {acc:.4f}")


if __name__ == "__main__":
    main()
