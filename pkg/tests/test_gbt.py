import numpy as np
import pytest

from dgadiag.core import CLASS_ORDER, FaultLabel
from dgadiag.gbt import (
    GbtConfig,
    GbtModel,
    multiclass_log_loss,
    predict,
    predict_logits,
    predict_many,
    predict_proba,
    train,
    _softmax,
    _as_class_indices,
)


def test_config_defaults():
    cfg = GbtConfig()
    assert cfg.rounds == 100
    assert cfg.learning_rate == 0.3
    assert cfg.max_depth == 6
    assert cfg.reg_lambda == 1.0
    assert cfg.gamma == 0.0
    assert cfg.min_child_weight == 1.0
    assert cfg.n_classes == 6


def test_config_validation():
    with pytest.raises(ValueError):
        GbtConfig(rounds=0)
    with pytest.raises(ValueError):
        GbtConfig(learning_rate=0.0)
    with pytest.raises(ValueError):
        GbtConfig(max_depth=0)
    with pytest.raises(ValueError):
        GbtConfig(reg_lambda=-1)


def test_one_hot_separable_points():
    # six single points with feature j = class indicator; per-point hessians
    # are 5/36 at the uniform start, so the default min_child_weight=1 would
    # reject every split on data this small - run with the floor disabled
    x = np.eye(6)
    y = list(CLASS_ORDER)
    model = train(x, y, GbtConfig(min_child_weight=0.0), seed=0)
    assert predict_many(model, x) == y


def test_two_class_1d_split_in_gap():
    rng = np.random.default_rng(5)
    neg = -rng.uniform(0.5, 3.0, 50)
    pos = rng.uniform(0.5, 3.0, 50)
    x = np.concatenate([neg, pos])[:, None]
    y = [FaultLabel.PD] * 50 + [FaultLabel.D1] * 50
    model = train(x, y, GbtConfig(), seed=0)

    root = model.trees[0][0]  # first round, first class
    assert not root.is_leaf
    assert root.feature == 0
    assert neg.max() < root.threshold < pos.min()

    holdout = np.array([[-0.01], [-2.9], [0.01], [2.9]])
    expected = [FaultLabel.PD, FaultLabel.PD, FaultLabel.D1, FaultLabel.D1]
    assert predict_many(model, holdout) == expected


def test_constant_features_predict_majority():
    x = np.zeros((10, 3))
    y = [FaultLabel.T2] * 6 + [FaultLabel.D1] * 4
    model = train(x, y, GbtConfig(rounds=30), seed=0)
    assert predict(model, x[0]) == FaultLabel.T2


def test_constant_features_tied_counts_break_to_pd():
    x = np.zeros((8, 2))
    y = [FaultLabel.T3] * 4 + [FaultLabel.PD] * 4
    model = train(x, y, GbtConfig(rounds=30), seed=0)
    assert predict(model, x[0]) == FaultLabel.PD


def test_untrained_model_uniform_probabilities():
    model = GbtModel(trees=[], config=GbtConfig(), n_features=4)
    probs = predict_proba(model, np.zeros(4))
    assert np.allclose(probs, np.full(6, 1 / 6), atol=1e-15)
    assert predict(model, np.zeros(4)) == FaultLabel.PD  # tie -> first class


def test_probabilities_sum_to_one_and_positive():
    rng = np.random.default_rng(7)
    x = rng.normal(size=(40, 5))
    y = [CLASS_ORDER[i % 6] for i in range(40)]
    model = train(x, y, GbtConfig(rounds=15), seed=0)
    probs = np.array([predict_proba(model, row) for row in x])
    assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-12)
    assert np.all(probs > 0)


def test_argmax_example():
    proba = np.array([0, 0, 0.9, 0.1, 0, 0])
    assert CLASS_ORDER[int(np.argmax(proba))] == FaultLabel.D2


def test_row_length_mismatch():
    model = GbtModel(trees=[], config=GbtConfig(), n_features=4)
    with pytest.raises(ValueError, match="4 features"):
        predict_proba(model, np.zeros(3))


def test_degenerate_labels():
    x = np.random.default_rng(0).normal(size=(10, 2))
    with pytest.raises(ValueError, match="degenerate labels"):
        train(x, [FaultLabel.PD] * 10, GbtConfig(), seed=0)


def test_empty_matrix():
    with pytest.raises(ValueError):
        train(np.zeros((0, 3)), [], GbtConfig(), seed=0)


def test_non_finite_features():
    x = np.array([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(ValueError, match="finite"):
        train(x, [FaultLabel.PD, FaultLabel.D1], GbtConfig(), seed=0)


def test_training_log_loss_non_increasing():
    rng = np.random.default_rng(11)
    x = rng.normal(size=(90, 6))
    y = [CLASS_ORDER[i % 6] for i in range(90)]
    model = train(x, y, GbtConfig(rounds=20), seed=0)
    y_idx = _as_class_indices(y, 6)
    losses = []
    for r in range(21):
        p = _softmax(predict_logits(model, x, upto_round=r))
        losses.append(float(-np.mean(np.log(p[np.arange(len(y)), y_idx]))))
    for before, after in zip(losses, losses[1:]):
        assert after <= before + 1e-9


def test_deterministic_training():
    rng = np.random.default_rng(13)
    x = rng.normal(size=(60, 5))
    y = [CLASS_ORDER[i % 6] for i in range(60)]
    m1 = train(x, y, GbtConfig(rounds=10), seed=4)
    m2 = train(x, y, GbtConfig(rounds=10), seed=4)
    assert np.array_equal(predict_logits(m1, x), predict_logits(m2, x))


def test_per_feature_scale_invariance():
    rng = np.random.default_rng(17)
    x = rng.normal(size=(80, 4))
    y = [CLASS_ORDER[i % 6] for i in range(80)]
    x_test = rng.normal(size=(30, 4))

    scaled = x.copy()
    scaled[:, 2] *= 10.0
    scaled_test = x_test.copy()
    scaled_test[:, 2] *= 10.0

    m_base = train(x, y, GbtConfig(rounds=12), seed=0)
    m_scaled = train(scaled, y, GbtConfig(rounds=12), seed=0)
    assert predict_many(m_base, x_test) == predict_many(m_scaled, scaled_test)


def test_log_loss_helper_matches_direct():
    rng = np.random.default_rng(19)
    x = rng.normal(size=(30, 3))
    y = [CLASS_ORDER[i % 3] for i in range(30)]
    model = train(x, y, GbtConfig(rounds=5), seed=0)
    y_idx = _as_class_indices(y, 6)
    p = _softmax(predict_logits(model, x))
    direct = float(-np.mean(np.log(p[np.arange(30), y_idx])))
    assert multiclass_log_loss(model, x, y) == pytest.approx(direct, rel=1e-12)


def test_tree_depth_bounded():
    rng = np.random.default_rng(23)
    x = rng.normal(size=(200, 4))
    y = [CLASS_ORDER[int(i)] for i in rng.integers(0, 6, 200)]
    cfg = GbtConfig(rounds=3, max_depth=3)
    model = train(x, y, cfg, seed=0)

    def depth(node):
        if node.is_leaf:
            assert np.isfinite(node.weight)
            return 0
        assert 0 <= node.feature < x.shape[1]
        return 1 + max(depth(node.left), depth(node.right))

    for round_trees in model.trees:
        for tree in round_trees:
            assert depth(tree) <= cfg.max_depth


def _brute_force_best_split(x, g, h, lam, gamma, mcw):
    """Plain-loop enumeration of every admissible (feature, midpoint) split."""
    n, d = x.shape
    G, H = g.sum(), h.sum()
    parent = G * G / (H + lam)
    best = None
    for j in range(d):
        vals = sorted(set(x[:, j].tolist()))
        for lo, hi in zip(vals, vals[1:]):
            thr = (lo + hi) / 2
            mask = x[:, j] < thr
            GL, HL = g[mask].sum(), h[mask].sum()
            GR, HR = G - GL, H - HL
            if HL < mcw or HR < mcw:
                continue
            gain = 0.5 * (GL * GL / (HL + lam) + GR * GR / (HR + lam) - parent) - gamma
            if gain > 0 and (best is None or gain > best[0]):
                best = (gain, j, thr, mask)
    return best


@pytest.mark.parametrize("seed", range(8))
def test_root_split_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(25, 4))
    g = rng.normal(size=25)
    h = rng.uniform(0.05, 1.0, size=25)
    cfg = GbtConfig(rounds=1, max_depth=1, min_child_weight=0.3)

    from dgadiag.gbt import _build_tree

    root = _build_tree(x, g, h, cfg)
    oracle = _brute_force_best_split(
        x, g, h, cfg.reg_lambda, cfg.gamma, cfg.min_child_weight
    )
    if oracle is None:
        assert root.is_leaf
        return
    _, feat, thr, mask = oracle
    assert not root.is_leaf
    assert root.feature == feat
    assert root.threshold == pytest.approx(thr, rel=1e-12)
    eta, lam = cfg.learning_rate, cfg.reg_lambda
    assert root.left.weight == pytest.approx(
        -eta * g[mask].sum() / (h[mask].sum() + lam), rel=1e-12
    )
    assert root.right.weight == pytest.approx(
        -eta * g[~mask].sum() / (h[~mask].sum() + lam), rel=1e-12
    )
