"""Dense ReLU network trained with Adam, written directly against numpy.

Hidden layers use ``max(0, x)``. Classification heads are softmax trained
with sparse categorical cross-entropy; regression heads are a rectifier
trained with mean squared error.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .errors import DimensionMismatch, InsufficientData, NonFiniteLoss

CLASSIFICATION = "classification"
REGRESSION = "regression"
MODEL_FORMAT = "knotsearch-mlp"
MODEL_VERSION = 1

_SEED_MASK = (1 << 64) - 1
_PROB_CLIP = 1e-7
MAX_INIT_ATTEMPTS = 20


@dataclass(frozen=True)
class AdamParams:
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon_hat: float = 1e-7


@dataclass(frozen=True)
class NetworkConfig:
    task: str = CLASSIFICATION
    num_classes: int | None = None
    hidden_layers: int = 3
    hidden_width: int = 100
    epochs: int = 100
    train_fraction: float = 0.8
    batch_size: int = 32
    adam: AdamParams = field(default_factory=AdamParams)
    seed: int = 0
    # Use -log v_k - sum_{i != k} log(1 - v_i) instead of -log v_k.
    footnote_loss: bool = False

    def __post_init__(self):
        if self.task not in (CLASSIFICATION, REGRESSION):
            raise ValueError(f"unknown task {self.task!r}")
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie strictly between 0 and 1")
        if self.task == CLASSIFICATION and (self.num_classes is None or self.num_classes < 2):
            raise ValueError("classification requires num_classes >= 2")
        if self.hidden_layers < 0 or self.hidden_width < 1:
            raise ValueError("bad hidden layer shape")
        if self.epochs < 0 or self.batch_size < 1:
            raise ValueError("epochs must be >= 0 and batch_size >= 1")

    @property
    def output_width(self) -> int:
        return self.num_classes if self.task == CLASSIFICATION else 1

    def layer_dims(self, input_width: int) -> list[int]:
        return [input_width] + [self.hidden_width] * self.hidden_layers + [self.output_width]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> NetworkConfig:
        d = dict(d)
        d["adam"] = AdamParams(**d.get("adam", {}))
        return cls(**d)


@dataclass(frozen=True, eq=False)
class TrainedNetwork:
    weights: tuple
    biases: tuple
    config: NetworkConfig
    label_offset: int = 0
    loss_history: tuple = ()

    def __post_init__(self):
        ws = tuple(np.array(w, dtype=float) for w in self.weights)
        bs = tuple(np.array(b, dtype=float) for b in self.biases)
        if len(ws) != len(bs) or not ws:
            raise DimensionMismatch("weights and biases must pair up")
        for k, (w, b) in enumerate(zip(ws, bs)):
            if w.ndim != 2 or b.shape != (w.shape[1],):
                raise DimensionMismatch(f"layer {k}: weight {w.shape} and bias {b.shape} do not match")
            if k and ws[k - 1].shape[1] != w.shape[0]:
                raise DimensionMismatch(f"layer {k} input width {w.shape[0]} != previous output")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValueError("non-finite parameters")
            w.setflags(write=False)
            b.setflags(write=False)
        if ws[-1].shape[1] != self.config.output_width:
            raise DimensionMismatch("output layer width does not match config")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "biases", bs)

    @property
    def input_width(self) -> int:
        return self.weights[0].shape[0]

    @property
    def dims(self) -> list[int]:
        return [self.input_width] + [w.shape[1] for w in self.weights]


# ---------------------------------------------------------------------------
# data split


def split_indices(n: int, fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Seeded shuffle; the first floor(fraction * n) indices train, the rest test."""
    if n < 2:
        raise InsufficientData(f"need at least 2 rows to split, got {n}")
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must lie strictly between 0 and 1")
    perm = np.random.default_rng(seed & _SEED_MASK).permutation(n)
    k = int(np.floor(fraction * n))
    return perm[:k], perm[k:]


def split(features, targets, fraction: float, seed: int):
    """Returns ``((X_train, y_train), (X_test, y_test))``."""
    X = np.asarray(features, dtype=float)
    y = np.asarray(targets)
    if len(X) != len(y):
        raise DimensionMismatch("features and targets differ in length")
    tr, te = split_indices(len(X), fraction, seed)
    return (X[tr], y[tr]), (X[te], y[te])


# ---------------------------------------------------------------------------
# forward / backward


def init_params(dims: list[int], rng: np.random.Generator):
    """Glorot-uniform weights, zero biases."""
    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return weights, biases


def _forward(weights, biases, X):
    """Pre-activations and activations for every layer (output pre-activation last)."""
    acts = [X]
    pres = []
    a = X
    last = len(weights) - 1
    for k, (w, b) in enumerate(zip(weights, biases)):
        z = a @ w + b
        pres.append(z)
        if k < last:
            a = np.maximum(z, 0.0)
            acts.append(a)
    return pres, acts


def softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=1, keepdims=True)


def _loss_and_output_grad(z_out, y, config: NetworkConfig):
    """Batch-mean loss and its gradient with respect to the output pre-activation."""
    n = len(z_out)
    if config.task == CLASSIFICATION:
        idx = np.arange(n)
        if not config.footnote_loss:
            shifted = z_out - z_out.max(axis=1, keepdims=True)
            logsum = np.log(np.exp(shifted).sum(axis=1))
            loss = float(np.mean(logsum - shifted[idx, y]))
            grad = softmax(z_out)
            grad[idx, y] -= 1.0
            return loss, grad / n
        v = np.clip(softmax(z_out), _PROB_CLIP, 1.0 - _PROB_CLIP)
        onehot = np.zeros_like(v)
        onehot[idx, y] = 1.0
        per = -np.log(v[idx, y]) - np.sum((1.0 - onehot) * np.log(1.0 - v), axis=1)
        loss = float(np.mean(per))
        dv = np.where(onehot == 1.0, -1.0 / v, 1.0 / (1.0 - v))
        p = softmax(z_out)
        dz = p * (dv - np.sum(dv * p, axis=1, keepdims=True))
        return loss, dz / n
    pred = np.maximum(z_out[:, 0], 0.0)
    diff = pred - y
    loss = float(np.mean(diff * diff))
    grad = (2.0 / n) * diff * (z_out[:, 0] > 0)
    return loss, grad[:, None]


def loss_and_gradients(weights, biases, X, y, config: NetworkConfig):
    pres, acts = _forward(weights, biases, X)
    loss, delta = _loss_and_output_grad(pres[-1], y, config)
    gw = [None] * len(weights)
    gb = [None] * len(weights)
    for k in range(len(weights) - 1, -1, -1):
        gw[k] = acts[k].T @ delta
        gb[k] = delta.sum(axis=0)
        if k:
            delta = (delta @ weights[k].T) * (pres[k - 1] > 0)
    return loss, gw, gb


class Adam:
    """Bias-corrected Adam in the epsilon-hat form:

    lr_t = lr * sqrt(1 - beta2**t) / (1 - beta1**t)
    p   -= lr_t * m / (sqrt(v) + epsilon_hat)
    """

    def __init__(self, params: list[np.ndarray], hp: AdamParams):
        self.hp = hp
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]

    def step(self, params: list[np.ndarray], grads: list[np.ndarray]):
        hp = self.hp
        self.t += 1
        lr_t = hp.learning_rate * np.sqrt(1.0 - hp.beta2**self.t) / (1.0 - hp.beta1**self.t)
        for p, g, m, v in zip(params, grads, self.m, self.v):
            m *= hp.beta1
            m += (1.0 - hp.beta1) * g
            v *= hp.beta2
            v += (1.0 - hp.beta2) * g * g
            p -= lr_t * m / (np.sqrt(v) + hp.epsilon_hat)


def _check_inputs(X, y, config: NetworkConfig):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2:
        raise DimensionMismatch("features must be a 2-d matrix")
    y = np.asarray(y)
    if y.ndim != 1 or len(y) != len(X):
        raise DimensionMismatch("targets must be a vector matching the feature rows")
    if config.task == CLASSIFICATION:
        if not np.all(np.equal(np.mod(y, 1), 0)):
            raise ValueError("classification targets must be integers")
        y = y.astype(np.int64)
        if y.size and (y.min() < 0 or y.max() >= config.num_classes):
            raise ValueError("classification targets must lie in [0, num_classes)")
    else:
        y = y.astype(float)
    return X, y


def _initialize(X, config: NetworkConfig, seed: int):
    """Initial parameters from the ``[seed, 0]`` stream.

    A rectified regression head that is negative on every training row gets
    no gradient and never trains; that draw is replaced from the streams
    ``[seed, 0, k]``, k = 1..MAX_INIT_ATTEMPTS - 1.
    """
    dims = config.layer_dims(X.shape[1])
    weights, biases = init_params(dims, np.random.default_rng([seed, 0]))
    if config.task != REGRESSION:
        return weights, biases
    for k in range(1, MAX_INIT_ATTEMPTS):
        if np.any(_forward(weights, biases, X)[0][-1] > 0):
            break
        weights, biases = init_params(dims, np.random.default_rng([seed, 0, k]))
    return weights, biases


def train(features, targets, config: NetworkConfig, label_offset: int = 0) -> TrainedNetwork:
    """Run ``config.epochs`` passes of shuffled mini-batch Adam.

    Bit-reproducible for a fixed seed: initialization and every epoch's
    shuffle draw from generators keyed by ``(seed, stream)``.
    """
    X, y = _check_inputs(features, targets, config)
    if len(X) == 0:
        raise InsufficientData("no training rows")
    seed = config.seed & _SEED_MASK
    weights, biases = _initialize(X, config, seed)
    params = weights + biases
    opt = Adam(params, config.adam)
    history = []
    n = len(X)
    bs = config.batch_size
    for epoch in range(config.epochs):
        order = np.random.default_rng([seed, epoch + 1]).permutation(n)
        total = 0.0
        for b, start in enumerate(range(0, n, bs)):
            idx = order[start : start + bs]
            loss, gw, gb = loss_and_gradients(weights, biases, X[idx], y[idx], config)
            if not np.isfinite(loss):
                raise NonFiniteLoss(epoch, b)
            opt.step(params, gw + gb)
            total += loss * len(idx)
        history.append(total / n)
    for p in params:
        if not np.all(np.isfinite(p)):
            raise NonFiniteLoss(config.epochs - 1, -1)
    return TrainedNetwork(tuple(weights), tuple(biases), config, label_offset, tuple(history))


def output_scores(net: TrainedNetwork, features) -> np.ndarray:
    """Output-layer pre-activations (logits for classification)."""
    X = np.asarray(features, dtype=float)
    if X.ndim != 2 or X.shape[1] != net.input_width:
        raise DimensionMismatch(f"expected {net.input_width} features, got shape {X.shape}")
    pres, _ = _forward(net.weights, net.biases, X)
    return pres[-1]


def predict_proba(net: TrainedNetwork, features) -> np.ndarray:
    if net.config.task != CLASSIFICATION:
        raise ValueError("predict_proba needs a classification network")
    return softmax(output_scores(net, features))


def predict(net: TrainedNetwork, features) -> np.ndarray:
    """Class labels (with the label offset restored) or nonnegative reals."""
    z = output_scores(net, features)
    if net.config.task == CLASSIFICATION:
        return np.argmax(z, axis=1) + net.label_offset
    return np.maximum(z[:, 0], 0.0)


# ---------------------------------------------------------------------------
# gradient check


@dataclass
class GradientCheckReport:
    max_relative_error: float
    tolerance: float
    parameter_count: int
    worst_parameter: tuple = ()

    @property
    def passed(self) -> bool:
        return self.max_relative_error <= self.tolerance


def gradient_check(
    config: NetworkConfig,
    features,
    targets,
    tolerance: float = 1e-4,
    step: float = 1e-5,
    seed: int | None = None,
) -> GradientCheckReport:
    """Compare backprop gradients against central finite differences."""
    X, y = _check_inputs(features, targets, config)
    rng = np.random.default_rng([(config.seed if seed is None else seed) & _SEED_MASK, 0])
    weights, biases = init_params(config.layer_dims(X.shape[1]), rng)
    # nonzero biases so every term of the backward pass is exercised
    biases = [rng.normal(scale=0.1, size=b.shape) for b in biases]
    _, gw, gb = loss_and_gradients(weights, biases, X, y, config)
    worst = (0.0, ())
    count = 0
    for group, params, grads in (("W", weights, gw), ("b", biases, gb)):
        for k, (p, g) in enumerate(zip(params, grads)):
            for idx in np.ndindex(p.shape):
                orig = p[idx]
                p[idx] = orig + step
                lp = loss_and_gradients(weights, biases, X, y, config)[0]
                p[idx] = orig - step
                lm = loss_and_gradients(weights, biases, X, y, config)[0]
                p[idx] = orig
                numeric = (lp - lm) / (2 * step)
                denom = max(abs(numeric), abs(g[idx]), 1e-8)
                err = abs(numeric - g[idx]) / denom
                count += 1
                if err > worst[0]:
                    worst = (err, (group, k, idx))
    return GradientCheckReport(worst[0], tolerance, count, worst[1])


# ---------------------------------------------------------------------------
# persistence


def save_model(net: TrainedNetwork, path) -> None:
    doc = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "dims": net.dims,
        "config": net.config.to_dict(),
        "label_offset": int(net.label_offset),
        "weights": [w.tolist() for w in net.weights],
        "biases": [b.tolist() for b in net.biases],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)


def load_model(path) -> TrainedNetwork:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("format") != MODEL_FORMAT or doc.get("version") != MODEL_VERSION:
        raise ValueError(f"{path}: not a {MODEL_FORMAT} v{MODEL_VERSION} file")
    net = TrainedNetwork(
        tuple(np.array(w, dtype=float).reshape(a, b) for w, a, b in zip(doc["weights"], doc["dims"][:-1], doc["dims"][1:])),
        tuple(np.array(b, dtype=float) for b in doc["biases"]),
        NetworkConfig.from_dict(doc["config"]),
        doc["label_offset"],
    )
    if net.dims != doc["dims"]:
        raise DimensionMismatch("stored dims disagree with stored parameters")
    return net


def with_seed(config: NetworkConfig, seed: int) -> NetworkConfig:
    return replace(config, seed=seed)
