"""Multiclass gradient-boosted regression trees with second-order splits.

One regression tree per class per boosting round, fit to the softmax
objective's gradient/hessian statistics (g = p - y, h = p(1 - p)).  Split
search is exact greedy over sorted unique feature values with the
regularized gain

    gain = 1/2 [ GL^2/(HL+lambda) + GR^2/(HR+lambda) - G^2/(H+lambda) ] - gamma

and leaf weights -eta * G / (H + lambda).  A split is kept only when its
gain is strictly positive and both children carry at least min_child_weight
of hessian mass.  Thresholds are midpoints between adjacent distinct sorted
values; ties in gain resolve to the lowest feature index, then the lowest
threshold, so training is fully deterministic.  The seed argument is
recorded for provenance but unused: with no row/column subsampling there is
nothing stochastic to drive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import CLASS_ORDER, FaultLabel

BASE_SCORE = 0.5  # initial logit for every class


@dataclass(frozen=True)
class GbtConfig:
    rounds: int = 100
    learning_rate: float = 0.3
    max_depth: int = 6
    reg_lambda: float = 1.0
    gamma: float = 0.0
    min_child_weight: float = 1.0
    n_classes: int = len(CLASS_ORDER)

    def __post_init__(self) -> None:
        if self.rounds < 1:
            raise ValueError("rounds must be >= 1")
        if not 0.0 < self.learning_rate <= 1.0:
            raise ValueError("learning_rate must be in (0, 1]")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if self.reg_lambda < 0 or self.gamma < 0 or self.min_child_weight < 0:
            raise ValueError("regularizers must be >= 0")
        if self.n_classes < 2:
            raise ValueError("n_classes must be >= 2")


@dataclass
class TreeNode:
    """Internal node (children set) or leaf (children None, weight set)."""

    feature: int = -1
    threshold: float = 0.0
    default_left: bool = True
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    weight: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.left is None


@dataclass
class GbtModel:
    trees: list[list[TreeNode]]  # [round][class]
    config: GbtConfig
    n_features: int
    class_order: tuple[FaultLabel, ...] = CLASS_ORDER
    base_score: float = BASE_SCORE
    seed: int = 0


def _as_class_indices(y: Sequence, n_classes: int) -> np.ndarray:
    if len(y) == 0:
        raise ValueError("empty label sequence")
    if isinstance(y[0], FaultLabel):
        idx = np.array([CLASS_ORDER.index(lbl) for lbl in y], dtype=np.intp)
    else:
        idx = np.asarray(y, dtype=np.intp)
    if idx.min() < 0 or idx.max() >= n_classes:
        raise ValueError("class index out of range")
    return idx


def _softmax(logits: np.ndarray) -> np.ndarray:
    z = logits - logits.max(axis=1, keepdims=True)
    p = np.exp(z)
    p /= p.sum(axis=1, keepdims=True)
    return p


def _build_tree(
    x: np.ndarray, g: np.ndarray, h: np.ndarray, cfg: GbtConfig
) -> TreeNode:
    eta = cfg.learning_rate
    lam = cfg.reg_lambda

    def grow(idx: np.ndarray, depth: int) -> TreeNode:
        g_sum = float(g[idx].sum())
        h_sum = float(h[idx].sum())
        leaf = TreeNode(weight=-eta * g_sum / (h_sum + lam))
        if (
            depth >= cfg.max_depth
            or idx.size < 2
            or h_sum < 2.0 * cfg.min_child_weight
        ):
            return leaf

        xs_node = x[idx]
        order = np.argsort(xs_node, axis=0, kind="stable")
        xs = np.take_along_axis(xs_node, order, axis=0)
        gs = g[idx][order]
        hs = h[idx][order]
        gl = np.cumsum(gs, axis=0)[:-1]
        hl = np.cumsum(hs, axis=0)[:-1]
        gr = g_sum - gl
        hr = h_sum - hl
        gain = (
            0.5
            * (gl * gl / (hl + lam) + gr * gr / (hr + lam) - g_sum * g_sum / (h_sum + lam))
            - cfg.gamma
        )
        valid = (
            (xs[1:] > xs[:-1])
            & (hl >= cfg.min_child_weight)
            & (hr >= cfg.min_child_weight)
        )
        gain = np.where(valid, gain, -np.inf)

        # Feature-major flat argmax: ties resolve to the lowest feature
        # index, then the lowest threshold.
        gain_fm = np.ascontiguousarray(gain.T)
        flat_best = int(np.argmax(gain_fm))
        feat, pos = divmod(flat_best, gain.shape[0])
        if not gain_fm.flat[flat_best] > 0.0:
            return leaf

        lo, hi = xs[pos, feat], xs[pos + 1, feat]
        threshold = 0.5 * lo + 0.5 * hi
        if threshold <= lo:  # adjacent floats: keep "< threshold" == "<= lo"
            threshold = hi
        mask = x[idx, feat] < threshold
        return TreeNode(
            feature=int(feat),
            threshold=float(threshold),
            default_left=True,
            left=grow(idx[mask], depth + 1),
            right=grow(idx[~mask], depth + 1),
        )

    return grow(np.arange(x.shape[0], dtype=np.intp), 0)


def _tree_add_scores(node: TreeNode, x: np.ndarray, out: np.ndarray) -> None:
    """Add the tree's leaf weights to `out` for every row of `x`."""
    stack = [(node, np.arange(x.shape[0], dtype=np.intp))]
    while stack:
        nd, idx = stack.pop()
        if idx.size == 0:
            continue
        if nd.is_leaf:
            out[idx] += nd.weight
            continue
        col = x[idx, nd.feature]
        finite = np.isfinite(col)
        go_left = np.where(finite, col < nd.threshold, nd.default_left)
        stack.append((nd.left, idx[go_left]))
        stack.append((nd.right, idx[~go_left]))


def train(
    x: np.ndarray,
    y: Sequence,
    config: GbtConfig = GbtConfig(),
    seed: int = 0,
) -> GbtModel:
    """Fit the boosted ensemble to labeled feature rows.

    `y` may be FaultLabel values or integer class indices.  Raises on empty
    input, non-finite features, or fewer than two distinct labels.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[0] == 0 or x.shape[1] == 0:
        raise ValueError("feature matrix must be 2-D and non-empty")
    if not np.all(np.isfinite(x)):
        raise ValueError("feature values must be finite")
    y_idx = _as_class_indices(y, config.n_classes)
    if len(y_idx) != x.shape[0]:
        raise ValueError("feature/label length mismatch")
    if np.unique(y_idx).size < 2:
        raise ValueError("degenerate labels: need at least two classes")

    n, _ = x.shape
    n_classes = config.n_classes
    onehot = np.zeros((n, n_classes), dtype=np.float64)
    onehot[np.arange(n), y_idx] = 1.0

    logits = np.full((n, n_classes), BASE_SCORE, dtype=np.float64)
    rounds: list[list[TreeNode]] = []
    for _ in range(config.rounds):
        p = _softmax(logits)
        grad = p - onehot
        hess = p * (1.0 - p)
        round_trees: list[TreeNode] = []
        for c in range(n_classes):
            tree = _build_tree(x, grad[:, c], hess[:, c], config)
            scores = np.zeros(n, dtype=np.float64)
            _tree_add_scores(tree, x, scores)
            logits[:, c] += scores
            round_trees.append(tree)
        rounds.append(round_trees)

    return GbtModel(
        trees=rounds,
        config=config,
        n_features=x.shape[1],
        seed=seed,
    )


def predict_logits(
    model: GbtModel, x: np.ndarray, upto_round: int | None = None
) -> np.ndarray:
    """Accumulated per-class logits for each row; optionally truncate rounds."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("expected a 2-D feature matrix")
    if x.shape[1] != model.n_features:
        raise ValueError(
            f"expected {model.n_features} features per row, got {x.shape[1]}"
        )
    n_classes = model.config.n_classes
    logits = np.full((x.shape[0], n_classes), model.base_score, dtype=np.float64)
    rounds = model.trees if upto_round is None else model.trees[:upto_round]
    for round_trees in rounds:
        for c, tree in enumerate(round_trees):
            scores = np.zeros(x.shape[0], dtype=np.float64)
            _tree_add_scores(tree, x, scores)
            logits[:, c] += scores
    return logits


def predict_proba_many(model: GbtModel, x: np.ndarray) -> np.ndarray:
    """Class-probability rows (softmax of accumulated logits)."""
    return _softmax(predict_logits(model, x))


def predict_proba(model: GbtModel, row: Sequence[float]) -> np.ndarray:
    """Probability vector over the six classes for a single feature row."""
    row = np.asarray(row, dtype=np.float64)
    if row.ndim != 1:
        raise ValueError("expected a single 1-D feature row")
    return predict_proba_many(model, row[None, :])[0]


def predict_many(model: GbtModel, x: np.ndarray) -> list[FaultLabel]:
    probs = predict_proba_many(model, x)
    return [model.class_order[int(i)] for i in np.argmax(probs, axis=1)]


def predict(model: GbtModel, row: Sequence[float]) -> FaultLabel:
    """Argmax class for one row; ties resolve to the earliest class in order."""
    probs = predict_proba(model, row)
    return model.class_order[int(np.argmax(probs))]


def multiclass_log_loss(model: GbtModel, x: np.ndarray, y: Sequence) -> float:
    """Mean negative log-likelihood of the true classes under the model."""
    y_idx = _as_class_indices(y, model.config.n_classes)
    probs = predict_proba_many(model, np.asarray(x, dtype=np.float64))
    picked = probs[np.arange(len(y_idx)), y_idx]
    return float(-np.mean(np.log(np.maximum(picked, 1e-300))))
