"""Per-sample rotation-component feature vectors and the feature-count search.

A sample's feature row is built by laying out its parameter values in rank
order (lowest skewness first), truncating to the first k, and taking the
proper rotation component of that k-point sequence as the features.  The
search sweeps k over a range, training and scoring the classifier on one
fixed holdout split per candidate, and keeps the smallest k attaining the
best accuracy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import N_PARAMS, FaultLabel, GasSample, param_vector
from .gbt import GbtConfig, predict_many, train
from .itd import itd_single_stage
from .ranking import validate_rank_order

K_DEFAULT_MIN = 18
K_DEFAULT_MAX = 37


@dataclass(frozen=True)
class FeatureMatrix:
    x: np.ndarray  # (n, k) rotation-component coefficients
    labels: list[FaultLabel | None]
    ids: list[str]
    k: int
    rank_order: tuple[int, ...]  # full 37-permutation the rows were built from


@dataclass(frozen=True)
class KSearchResult:
    accuracy_curve: dict[int, float]
    best_k: int
    seed: int


def build_features(
    samples: Sequence[GasSample],
    rank_order: Sequence[int],
    k: int,
    alpha: float = 0.5,
) -> FeatureMatrix:
    """Rotation-component feature rows for `samples` at feature count `k`."""
    if not samples:
        raise ValueError("empty sample list")
    order = validate_rank_order(rank_order)
    if not 2 <= k <= N_PARAMS:
        raise ValueError(f"k must be in 2..{N_PARAMS}, got {k}")
    if not K_DEFAULT_MIN <= k <= K_DEFAULT_MAX:
        warnings.warn(
            f"k={k} outside the usual {K_DEFAULT_MIN}..{K_DEFAULT_MAX} range",
            stacklevel=2,
        )
    prefix = order[:k]
    rows = np.empty((len(samples), k), dtype=np.float64)
    for i, sample in enumerate(samples):
        pv = param_vector(sample)
        signal = np.array([pv[num] for num in prefix], dtype=np.float64)
        rows[i] = itd_single_stage(signal, alpha=alpha).prc
    return FeatureMatrix(
        x=rows,
        labels=[s.label for s in samples],
        ids=[s.id for s in samples],
        k=k,
        rank_order=order,
    )


def optimal_k_search(
    samples: Sequence[GasSample],
    rank_order: Sequence[int],
    k_min: int = K_DEFAULT_MIN,
    k_max: int = K_DEFAULT_MAX,
    split_seed: int = 0,
    train_frac: float = 0.85,
    config: GbtConfig = GbtConfig(),
) -> KSearchResult:
    """Sweep the feature count and score each candidate on one fixed split.

    The same seeded train/test split of the samples is reused for every k so
    the curve isolates the effect of the feature count.  Ties for the best
    accuracy resolve to the smallest k.
    """
    from .evaluation import train_test_split

    samples = list(samples)
    if any(s.label is None for s in samples):
        raise ValueError("feature-count search requires labeled samples")
    if k_min > k_max:
        raise ValueError(f"k_min {k_min} exceeds k_max {k_max}")
    order = validate_rank_order(rank_order)

    train_samples, test_samples = train_test_split(samples, train_frac, split_seed)
    curve: dict[int, float] = {}
    for k in range(k_min, k_max + 1):
        fm_train = build_features(train_samples, order, k)
        fm_test = build_features(test_samples, order, k)
        model = train(fm_train.x, fm_train.labels, config=config, seed=split_seed)
        predicted = predict_many(model, fm_test.x)
        hits = sum(p == a for p, a in zip(predicted, fm_test.labels))
        curve[k] = hits / len(test_samples)

    best_k = min(curve, key=lambda k: (-curve[k], k))
    return KSearchResult(accuracy_curve=curve, best_k=best_k, seed=split_seed)
