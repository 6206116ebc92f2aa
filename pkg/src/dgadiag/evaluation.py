"""Evaluation utilities: confusion matrices, derived metrics, splits, SMOTE,
and stratified cross-validation with per-fold retraining.

Class imbalance is the norm in DGA datasets, so beyond plain accuracy the
report carries per-class sensitivity/precision/F1, macro-F1 and Cohen's
kappa; cross-validation can oversample the training folds with SMOTE.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import CLASS_ORDER, FaultLabel, GasSample
from .gbt import GbtConfig, GbtModel, predict_many, train


@dataclass(frozen=True)
class ConfusionMatrix:
    """6x6 counts; rows are actual classes, columns predictions, both in
    canonical class order."""

    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def trace(self) -> int:
        return int(np.trace(self.counts))


@dataclass(frozen=True)
class EvalReport:
    matrix: ConfusionMatrix
    sensitivity: np.ndarray  # per class, recall on the actual rows
    precision: np.ndarray
    f1: np.ndarray
    accuracy: float
    macro_f1: float
    kappa: float


def confusion(
    actual: Sequence[FaultLabel], predicted: Sequence[FaultLabel]
) -> ConfusionMatrix:
    if len(actual) != len(predicted):
        raise ValueError("actual/predicted length mismatch")
    if len(actual) == 0:
        raise ValueError("empty label sequences")
    counts = np.zeros((len(CLASS_ORDER), len(CLASS_ORDER)), dtype=np.int64)
    index = {label: i for i, label in enumerate(CLASS_ORDER)}
    for a, p in zip(actual, predicted):
        counts[index[a], index[p]] += 1
    return ConfusionMatrix(counts=counts)


def metrics(matrix: ConfusionMatrix) -> EvalReport:
    """Derive all report metrics from a confusion matrix.

    Empty rows/columns contribute 0 sensitivity/precision; macro-F1 averages
    only over classes actually present (nonzero row).  kappa is defined as 1
    when chance agreement is total.
    """
    counts = matrix.counts.astype(np.float64)
    total = counts.sum()
    if total <= 0:
        raise ValueError("empty confusion matrix")
    row = counts.sum(axis=1)
    col = counts.sum(axis=0)
    tp = np.diag(counts)

    sensitivity = np.divide(tp, row, out=np.zeros_like(tp), where=row > 0)
    precision = np.divide(tp, col, out=np.zeros_like(tp), where=col > 0)
    denom = sensitivity + precision
    f1 = np.divide(
        2.0 * sensitivity * precision, denom, out=np.zeros_like(denom), where=denom > 0
    )

    accuracy = float(tp.sum() / total)
    present = row > 0
    macro_f1 = float(f1[present].mean()) if present.any() else 0.0

    p_o = tp.sum() / total
    p_e = float((row * col).sum() / (total * total))
    kappa = 1.0 if p_e == 1.0 else float((p_o - p_e) / (1.0 - p_e))

    return EvalReport(
        matrix=matrix,
        sensitivity=sensitivity,
        precision=precision,
        f1=f1,
        accuracy=accuracy,
        macro_f1=macro_f1,
        kappa=kappa,
    )


def _split_sizes(n: int, train_frac: float) -> tuple[int, int]:
    n_train = int(np.floor(n * train_frac + 0.5))  # round half up
    return n_train, n - n_train


def train_test_split(
    dataset: Sequence, train_frac: float = 0.85, seed: int = 0
) -> tuple[list, list]:
    """Seeded uniform shuffle split; train size is round(n * train_frac)."""
    if not 0.0 < train_frac < 1.0:
        raise ValueError("train_frac must be in (0, 1)")
    n = len(dataset)
    if n < 2:
        raise ValueError("need at least 2 items to split")
    n_train, n_test = _split_sizes(n, train_frac)
    if n_train == 0 or n_test == 0:
        raise ValueError(f"degenerate split sizes ({n_train}, {n_test}) for n={n}")
    perm = np.random.default_rng(seed).permutation(n)
    train_part = [dataset[i] for i in perm[:n_train]]
    test_part = [dataset[i] for i in perm[n_train:]]
    return train_part, test_part


def smote(
    features: np.ndarray,
    labels: Sequence,
    k_neighbors: int = 5,
    seed: int = 0,
) -> tuple[np.ndarray, list]:
    """Oversample every class up to the majority count by interpolation.

    Each synthetic row is x + u * (x_nn - x) for a seeded-random base row x
    of the class, one of its k nearest same-class neighbors x_nn, and
    u ~ Uniform(0, 1).  The input rows are returned unmodified as a prefix;
    synthetic rows follow, grouped by class in order of first appearance.
    k is capped at class size - 1 when a class is smaller than k_neighbors + 1.
    """
    features = np.asarray(features, dtype=np.float64)
    if features.ndim != 2 or features.shape[0] != len(labels):
        raise ValueError("features must be 2-D with one row per label")
    if k_neighbors < 1:
        raise ValueError("k_neighbors must be >= 1")

    labels = list(labels)
    class_rows: dict = {}
    for i, lbl in enumerate(labels):
        class_rows.setdefault(lbl, []).append(i)
    target = max(len(rows) for rows in class_rows.values())

    rng = np.random.default_rng(seed)
    new_rows: list[np.ndarray] = []
    new_labels: list = []
    for lbl, rows in class_rows.items():
        deficit = target - len(rows)
        if deficit == 0:
            continue
        if len(rows) < 2:
            raise ValueError(f"cannot interpolate: class {lbl} has a single sample")
        pts = features[rows]
        # pairwise distances within the class, self excluded
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        np.fill_diagonal(dist, np.inf)
        nn_order = np.argsort(dist, axis=1, kind="stable")[:, :-1]
        k = min(k_neighbors, len(rows) - 1)
        for _ in range(deficit):
            base = int(rng.integers(len(rows)))
            neighbor = int(nn_order[base, int(rng.integers(k))])
            u = rng.uniform()
            new_rows.append(pts[base] + u * (pts[neighbor] - pts[base]))
            new_labels.append(lbl)

    if not new_rows:
        return features.copy(), labels
    out = np.vstack([features, np.stack(new_rows)])
    return out, labels + new_labels


def stratified_folds(
    labels: Sequence[FaultLabel], folds: int, seed: int
) -> list[np.ndarray]:
    """Seeded stratified fold assignment; per-class counts differ by <= 1."""
    if folds < 2:
        raise ValueError("folds must be >= 2")
    rng = np.random.default_rng(seed)
    assignments = [[] for _ in range(folds)]
    for label in CLASS_ORDER:
        idx = np.array([i for i, lbl in enumerate(labels) if lbl == label])
        if idx.size == 0:
            continue
        if idx.size < folds:
            raise ValueError(
                f"stratification impossible: class {label.value} has "
                f"{idx.size} samples, fewer than {folds} folds"
            )
        idx = idx[rng.permutation(idx.size)]
        for j, i in enumerate(idx):
            assignments[j % folds].append(int(i))
    return [np.array(sorted(fold), dtype=np.intp) for fold in assignments]


@dataclass(frozen=True)
class CvResult:
    fold_reports: list[EvalReport]
    pooled: EvalReport  # metrics of the summed out-of-fold confusion matrix

    @property
    def kappa(self) -> float:
        return self.pooled.kappa

    @property
    def macro_f1(self) -> float:
        return self.pooled.macro_f1


def kfold_cv(
    dataset: Sequence[GasSample],
    folds: int = 5,
    seed: int = 0,
    use_smote: bool = False,
    k: int = 24,
    config: GbtConfig = GbtConfig(),
    rank_order: Sequence[int] | None = None,
    smote_neighbors: int = 5,
) -> CvResult:
    """Stratified k-fold cross-validation of the full feature+classifier
    pipeline.

    The parameter ranking is computed once on the whole dataset (or taken
    from `rank_order`); features are rebuilt per sample and the classifier is
    retrained per fold.  With `use_smote`, oversampling is applied to the
    training folds only, never the held-out fold.  Per-fold RNG streams are
    derived from (seed, fold index), so fold results do not depend on
    execution order.
    """
    from .features import build_features
    from .ranking import rank_params, validate_rank_order

    samples = list(dataset)
    if any(s.label is None for s in samples):
        raise ValueError("cross-validation requires labeled samples")
    order = rank_params(samples) if rank_order is None else validate_rank_order(rank_order)
    fm = build_features(samples, order, k)
    labels = [s.label for s in samples]

    fold_idx = stratified_folds(labels, folds, seed)
    fold_reports: list[EvalReport] = []
    pooled_counts = np.zeros((len(CLASS_ORDER), len(CLASS_ORDER)), dtype=np.int64)
    for fold_no, test_idx in enumerate(fold_idx):
        train_mask = np.ones(len(samples), dtype=bool)
        train_mask[test_idx] = False
        x_train = fm.x[train_mask]
        y_train = [labels[i] for i in np.flatnonzero(train_mask)]
        if use_smote:
            fold_seed = int(np.random.SeedSequence([seed, fold_no]).generate_state(1)[0])
            x_train, y_train = smote(
                x_train, y_train, k_neighbors=smote_neighbors, seed=fold_seed
            )
        model = train(x_train, y_train, config=config, seed=seed)
        predicted = predict_many(model, fm.x[test_idx])
        actual = [labels[i] for i in test_idx]
        cm = confusion(actual, predicted)
        fold_reports.append(metrics(cm))
        pooled_counts += cm.counts

    pooled = metrics(ConfusionMatrix(counts=pooled_counts))
    return CvResult(fold_reports=fold_reports, pooled=pooled)


def evaluate_model(
    model: GbtModel, x: np.ndarray, labels: Sequence[FaultLabel]
) -> EvalReport:
    """Score a trained model on feature rows with known labels."""
    predicted = predict_many(model, x)
    return metrics(confusion(list(labels), predicted))
