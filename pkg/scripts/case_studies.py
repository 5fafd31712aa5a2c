"""Rerun the Jones-polynomial case studies (five seeds each) on KnotInfo.

    python scripts/case_studies.py [--runs 5] [--results results_case.txt]
"""

import argparse
import os

os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

from knotsearch import experiments as ex  # noqa: E402
from knotsearch import neuralnet as nn  # noqa: E402
from knotsearch.knotinfo import load_dataset  # noqa: E402

J = "jones_polynomial_vector"
STUDIES = [
    ([J], "epsilon"),
    ([f"{J}@-0.6+0.1i"], "epsilon"),
    ([f"{J}@-0.6+0.1i.re"], "epsilon"),
    ([f"{J}@-0.7+0.1i"], "ozsvath_szabo_tau_invariant"),
    ([J], "ozsvath_szabo_tau_invariant"),
    ([f"turaev({J})"], "turaev_genus"),
    ([f"span({J})"], "turaev_genus"),
    ([J], "turaev_genus"),
    ([J], "longitude_length"),
    ([f"{J}@-1+0.2i"], "longitude_length"),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--runs", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--epochs", type=int, default=100)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--results")
    args = ap.parse_args()

    ds = load_dataset()
    specs = [ex.make_spec(ds, ins, out, runs=args.runs, seed_base=args.seed) for ins, out in STUDIES]
    cfg = nn.NetworkConfig(task=nn.REGRESSION, epochs=args.epochs)

    def show(res):
        runs = " ".join(f"{a:.4f}" for a in res.per_run)
        print(f"{' + '.join(res.inputs):42s} -> {res.output:28s} {res.accuracy:.4f}  base {res.baseline:.4f}  [{runs}]", flush=True)
        if args.results:
            ex.write_results(args.results, [res])

    ex.run_many(ds, specs, cfg, workers=args.workers, sink=show)


if __name__ == "__main__":
    main()
