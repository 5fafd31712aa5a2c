"""Layer-wise relevance propagation for :class:`TrainedNetwork`.

Relevance of an output neuron is split among its inputs in proportion to
their contributions ``a_i * w_ij``. The bias is not given a share, so each
layer passes on its full relevance and input relevances sum to the output
score. The stabilizer ``eps * sign(s)`` replaces a denominator only when
``|s| < eps``; adding it everywhere (the textbook epsilon rule) would absorb
a fraction ``eps / |s|`` of each neuron's relevance.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .neuralnet import CLASSIFICATION, TrainedNetwork, _forward

EPSILON = 1e-6


@dataclass(frozen=True, eq=False)
class RelevanceMap:
    per_sample: np.ndarray  # (samples, features)
    output_score: np.ndarray  # (samples,)

    def conservation_error(self) -> np.ndarray:
        return np.abs(self.per_sample.sum(axis=1) - self.output_score)


def _stabilize(s: np.ndarray, eps: float) -> np.ndarray:
    guard = eps * np.where(s >= 0, 1.0, -1.0)
    return np.where(np.abs(s) < eps, guard, s)


def lrp_dense(a: np.ndarray, w: np.ndarray, relevance_out: np.ndarray, eps: float = EPSILON) -> np.ndarray:
    """Epsilon-rule step through one dense layer for a batch.

    a: (n, d) layer inputs; w: (d, m); relevance_out: (n, m).
    """
    s = a @ w
    ratio = relevance_out / _stabilize(s, eps)
    return a * (ratio @ w.T)


def lrp(net: TrainedNetwork, samples, eps: float = EPSILON) -> RelevanceMap:
    """Relevance of every input feature for every sample.

    Classification networks start from the logit of the predicted class,
    regression networks from the (rectified) output value.
    """
    X = np.asarray(samples, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2 or X.shape[1] != net.input_width:
        raise DimensionMismatch(f"expected {net.input_width} features, got shape {X.shape}")
    pres, acts = _forward(net.weights, net.biases, X)
    z = pres[-1]
    n = len(X)
    R = np.zeros_like(z)
    if net.config.task == CLASSIFICATION:
        cls = np.argmax(z, axis=1)
        score = z[np.arange(n), cls]
        R[np.arange(n), cls] = score
    else:
        score = np.maximum(z[:, 0], 0.0)
        R[:, 0] = score
    for k in range(len(net.weights) - 1, -1, -1):
        R = lrp_dense(acts[k], net.weights[k], R, eps)
    return RelevanceMap(R, score)


def rank_features(rmap: RelevanceMap) -> list[int]:
    """Feature indices by mean |relevance|, descending; ties keep index order."""
    if rmap.per_sample.size == 0:
        raise ValueError("empty relevance map")
    mean_abs = np.abs(rmap.per_sample).mean(axis=0)
    return [int(i) for i in np.argsort(-mean_abs, kind="stable")]


def export_heatmap(rmap: RelevanceMap, knot_ids, feature_names, path, meta_path=None) -> None:
    """One column per knot, one row per input feature.

    The companion metadata file maps each row index to its feature name and,
    for evaluation features, the complex point and part.
    """
    knot_ids = list(knot_ids)
    feature_names = list(feature_names)
    if len(knot_ids) != rmap.per_sample.shape[0] or len(feature_names) != rmap.per_sample.shape[1]:
        raise DimensionMismatch("labels do not match relevance map shape")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["feature", *knot_ids])
        for j, name in enumerate(feature_names):
            w.writerow([name, *(repr(float(v)) for v in rmap.per_sample[:, j])])
    if meta_path is not None:
        with open(meta_path, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["row", "feature", "point", "part"])
            for j, name in enumerate(feature_names):
                point, part = _split_feature_name(name)
                w.writerow([j, name, point, part])


def _split_feature_name(name: str) -> tuple[str, str]:
    if "@" not in name:
        return "", ""
    base, rest = name.split("@", 1)
    if "." in rest and rest.rsplit(".", 1)[1] in ("re", "im", "abs", "arg"):
        point, part = rest.rsplit(".", 1)
        return point, part
    return rest, ""
