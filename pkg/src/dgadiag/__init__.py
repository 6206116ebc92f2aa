"""Transformer fault diagnosis from dissolved-gas measurements.

Pipeline: 37 ratio parameters per sample -> skewness ranking -> rotation
component of the ranked prefix as features -> boosted-trees classifier,
with the Duval/Rogers/IEC rule methods and an imbalance-aware evaluation
harness alongside.
"""

from .conventional import DuvalCoords, duval, duval_coords, iec_ratio, rogers
from .core import (
    CLASS_ORDER,
    EPS_PPM,
    Aggregates,
    DiagnosisOutcome,
    FaultLabel,
    GasSample,
    ParamVector,
    aggregates,
    param_matrix,
    param_vector,
)
from .evaluation import (
    ConfusionMatrix,
    CvResult,
    EvalReport,
    confusion,
    kfold_cv,
    metrics,
    smote,
    stratified_folds,
    train_test_split,
)
from .features import FeatureMatrix, KSearchResult, build_features, optimal_k_search
from .gbt import GbtConfig, GbtModel, predict, predict_many, predict_proba, train
from .io import (
    ModelBundle,
    generate_synthetic,
    load_dataset,
    load_model,
    load_table_iv,
    save_model,
    write_dataset,
)
from .itd import ItdResult, find_extrema, itd_decompose, itd_single_stage
from .ranking import (
    CANONICAL_RANK_ORDER,
    AnovaResult,
    anova_pvalue,
    canonical_rank_order,
    rank_params,
    skewness,
)

__version__ = "0.1.0"

__all__ = [
    "Aggregates",
    "AnovaResult",
    "CANONICAL_RANK_ORDER",
    "CLASS_ORDER",
    "ConfusionMatrix",
    "CvResult",
    "DiagnosisOutcome",
    "DuvalCoords",
    "EPS_PPM",
    "EvalReport",
    "FaultLabel",
    "FeatureMatrix",
    "GasSample",
    "GbtConfig",
    "GbtModel",
    "ItdResult",
    "KSearchResult",
    "ModelBundle",
    "ParamVector",
    "aggregates",
    "anova_pvalue",
    "build_features",
    "canonical_rank_order",
    "confusion",
    "duval",
    "duval_coords",
    "find_extrema",
    "generate_synthetic",
    "iec_ratio",
    "itd_decompose",
    "itd_single_stage",
    "kfold_cv",
    "load_dataset",
    "load_model",
    "load_table_iv",
    "metrics",
    "optimal_k_search",
    "param_matrix",
    "param_vector",
    "predict",
    "predict_many",
    "predict_proba",
    "rank_params",
    "rogers",
    "save_model",
    "skewness",
    "smote",
    "stratified_folds",
    "train",
    "train_test_split",
    "write_dataset",
]
