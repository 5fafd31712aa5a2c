import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from knotsearch import neuralnet as nn
from knotsearch.errors import DimensionMismatch, InsufficientData, NonFiniteLoss


def small(task=nn.CLASSIFICATION, **kw):
    kw.setdefault("hidden_layers", 2)
    kw.setdefault("hidden_width", 6)
    kw.setdefault("epochs", 5)
    if task == nn.CLASSIFICATION:
        kw.setdefault("num_classes", 3)
    return nn.NetworkConfig(task=task, **kw)


def blobs(n=120, seed=0):
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 3, n)
    X = rng.normal(size=(n, 2)) * 0.3 + np.array([[0, 0], [3, 0], [0, 3]])[y]
    return X, y


@pytest.mark.parametrize(
    "kw",
    [
        dict(task="ranking"),
        dict(task=nn.CLASSIFICATION, num_classes=1),
        dict(task=nn.CLASSIFICATION),
        dict(task=nn.REGRESSION, train_fraction=1.0),
        dict(task=nn.REGRESSION, batch_size=0),
    ],
)
def test_config_validation(kw):
    with pytest.raises(ValueError):
        nn.NetworkConfig(**kw)


def test_default_architecture():
    cfg = nn.NetworkConfig(task=nn.CLASSIFICATION, num_classes=3)
    assert cfg.layer_dims(30) == [30, 100, 100, 100, 3]
    assert (cfg.epochs, cfg.batch_size, cfg.train_fraction) == (100, 32, 0.8)
    assert cfg.adam == nn.AdamParams(1e-3, 0.9, 0.999, 1e-7)
    assert nn.NetworkConfig.from_dict(cfg.to_dict()) == cfg


@pytest.mark.parametrize("n, frac, n_train", [(10, 0.8, 8), (2970, 0.8, 2376), (7, 0.5, 3)])
def test_split_sizes(n, frac, n_train):
    tr, te = nn.split_indices(n, frac, seed=1)
    assert len(tr) == n_train
    assert sorted(np.concatenate([tr, te]).tolist()) == list(range(n))


def test_split_needs_two_rows():
    with pytest.raises(InsufficientData):
        nn.split_indices(1, 0.8, 0)


def test_adam_matches_hand_computation():
    # three steps on a scalar with gradients 1, -2, 0.5
    hp = nn.AdamParams(learning_rate=0.1)
    p = np.array([1.0])
    opt = nn.Adam([p], hp)
    expected = [0.9000003162267659, 0.9366106171503878, 0.9502796645796051]
    m = v = 0.0
    x = 1.0
    for t, g in enumerate([1.0, -2.0, 0.5], start=1):
        opt.step([p], [np.array([g])])
        m = 0.9 * m + 0.1 * g
        v = 0.999 * v + 0.001 * g * g
        x -= 0.1 * math.sqrt(1 - 0.999**t) / (1 - 0.9**t) * m / (math.sqrt(v) + 1e-7)
        assert p[0] == pytest.approx(x, rel=1e-12)
        assert p[0] == pytest.approx(expected[t - 1], rel=1e-6)


@given(arrays(float, (5, 4), elements=st.floats(-50, 50)))
def test_softmax_rows_sum_to_one(z):
    s = nn.softmax(z)
    assert np.all(s >= 0)
    np.testing.assert_allclose(s.sum(axis=1), 1.0, rtol=1e-12)


@pytest.mark.parametrize("footnote", [False, True])
def test_gradient_check_classification(footnote):
    X, y = blobs(8)
    rep = nn.gradient_check(small(footnote_loss=footnote), X, y)
    assert rep.passed, rep


def test_gradient_check_regression():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(8, 3))
    y = rng.uniform(1, 2, 8)
    assert nn.gradient_check(small(nn.REGRESSION), X, y).passed


def test_training_learns_blobs():
    X, y = blobs(300)
    net = nn.train(X, y, small(epochs=40, hidden_width=16))
    assert np.mean(nn.predict(net, X) == y) > 0.95
    assert net.loss_history[-1] < net.loss_history[0]


def test_label_offset_restored():
    X, y = blobs(60)
    net = nn.train(X, y, small(), label_offset=-1)
    assert set(np.unique(nn.predict(net, X))) <= {-1, 0, 1}


def test_regression_outputs_nonnegative():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(50, 2))
    net = nn.train(X, np.abs(X[:, 0]) + 1, small(nn.REGRESSION))
    assert np.all(nn.predict(net, X) >= 0)


def test_bit_reproducible():
    X, y = blobs(100)
    a = nn.train(X, y, small(seed=11))
    b = nn.train(X, y, small(seed=11))
    c = nn.train(X, y, small(seed=12))
    for wa, wb in zip(a.weights, b.weights):
        assert wa.tobytes() == wb.tobytes()
    assert a.loss_history == b.loss_history
    assert any(wa.tobytes() != wc.tobytes() for wa, wc in zip(a.weights, c.weights))


def test_non_finite_loss_raises():
    X = np.array([[np.nan, 1.0], [1.0, 2.0]])
    with pytest.raises(NonFiniteLoss):
        nn.train(X, np.array([1.0, 2.0]), small(nn.REGRESSION, hidden_width=2))


def test_dimension_mismatch():
    X, y = blobs(20)
    net = nn.train(X, y, small(epochs=1))
    with pytest.raises(DimensionMismatch):
        nn.predict(net, np.zeros((3, 5)))
    with pytest.raises(DimensionMismatch):
        nn.train(X, y[:-1], small())


def test_parameters_read_only():
    X, y = blobs(20)
    net = nn.train(X, y, small(epochs=1))
    with pytest.raises(ValueError):
        net.weights[0][0, 0] = 1.0


def test_save_load_round_trip(tmp_path):
    X, y = blobs(40)
    net = nn.train(X, y, small(epochs=2), label_offset=-1)
    path = tmp_path / "m.json"
    nn.save_model(net, path)
    back = nn.load_model(path)
    assert back.config == net.config and back.label_offset == -1
    np.testing.assert_array_equal(nn.predict(back, X), nn.predict(net, X))


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 200), st.floats(0.05, 0.95), st.integers(0, 2**63))
def test_split_partition_property(n, frac, seed):
    tr, te = nn.split_indices(n, frac, seed)
    assert len(tr) == math.floor(frac * n)
    assert not set(tr.tolist()) & set(te.tolist())
    np.testing.assert_array_equal(tr, nn.split_indices(n, frac, seed)[0])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_regression_head_alive_at_init(seed):
    # large raw 2-d inputs often leave a fresh rectified head dead everywhere
    rng = np.random.default_rng(seed)
    X = rng.normal(scale=200, size=(64, 2))
    cfg = small(nn.REGRESSION, epochs=0, seed=seed)
    net = nn.train(X, np.ones(64), cfg)
    assert np.any(nn.output_scores(net, X) > 0)


def test_live_initialization_is_unchanged():
    X, _ = blobs(50)
    for seed in range(5):
        cfg = small(nn.REGRESSION, epochs=0, seed=seed)
        w, b = nn.init_params(cfg.layer_dims(2), np.random.default_rng([seed, 0]))
        net = nn.train(X, np.ones(50), cfg)
        live = np.any(nn._forward(w, b, X)[0][-1] > 0)
        assert live == all(np.array_equal(a, c) for a, c in zip(net.weights, w))


def test_constant_regression_target():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(2000, 3))
    net = nn.train(X[:1600], np.full(1600, 5.0), nn.NetworkConfig(task=nn.REGRESSION))
    rel = np.abs(nn.predict(net, X[1600:]) - 5.0) / 5.0
    # last-step Adam jitter leaves a few rows near 1.5%
    assert rel.mean() <= 0.01
    assert rel.max() <= 0.02


def test_rectifier_blocks_gradient_below_zero():
    cfg = small(nn.REGRESSION, hidden_layers=0)
    w = [np.array([[1.0]])]
    b = [np.array([-10.0])]
    loss, gw, gb = nn.loss_and_gradients(w, b, np.array([[1.0]]), np.array([3.0]), cfg)
    assert loss == 9.0
    assert gw[0][0, 0] == 0.0 and gb[0][0] == 0.0
