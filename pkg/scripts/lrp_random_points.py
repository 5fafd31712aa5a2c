"""Relevance of Jones evaluations at random complex points for predicting epsilon.

Five random points of the upper half square give ten features (real and
imaginary part of each). A network is trained on them and LRP scores every
feature on the held-out knots; the rows belonging to one point usually
dominate.

    python scripts/lrp_random_points.py --out relevance.csv --meta relevance_meta.csv
"""

import argparse
import os

os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")

import numpy as np  # noqa: E402

from knotsearch import experiments as ex  # noqa: E402
from knotsearch import neuralnet as nn  # noqa: E402
from knotsearch.explain import export_heatmap, lrp, rank_features  # noqa: E402
from knotsearch.knotinfo import load_dataset  # noqa: E402


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--output", default="epsilon")
    ap.add_argument("--out")
    ap.add_argument("--meta")
    args = ap.parse_args()

    ds = load_dataset()
    pts = ex.random_points(args.points, args.seed)
    feats = [f"jones_polynomial_vector@{p}" for p in pts]
    # more than three inputs: assemble the design matrix by hand
    blocks, names = [], []
    spec = ex.make_spec(ds, feats[:1], args.output)
    design = ex.build_design(ds, spec)
    for f in feats:
        mat, nm = ex.Feature.parse(f).build(design.data)
        blocks.append(mat)
        names += nm
    X = np.hstack(blocks)
    tr, te = nn.split_indices(len(X), 0.8, args.seed)
    cfg = nn.NetworkConfig(task=spec.task, num_classes=design.num_classes, seed=args.seed)
    net = nn.train(X[tr], design.y[tr], cfg, label_offset=design.label_offset)
    acc = ex.accuracy_classification(nn.predict(net, X[te]), design.y[te] + design.label_offset)
    print(f"points: {', '.join(map(str, pts))}")
    print(f"test accuracy {acc:.4f}")

    rmap = lrp(net, X[te])
    for j in rank_features(rmap):
        print(f"{names[j]:45s} {np.abs(rmap.per_sample[:, j]).mean():.4f}")
    if args.out:
        export_heatmap(rmap, [design.knot_ids[i] for i in te], names, args.out, args.meta)


if __name__ == "__main__":
    main()
