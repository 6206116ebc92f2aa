"""Dataset CSV ingestion, synthetic data generation, and model persistence.

CSV schema (UTF-8, comma separator, dot decimal, header required):

    id,h2,ch4,c2h6,c2h4,c2h2,label

Gas fields are non-negative decimals; label is one of PD/D1/D2/T1/T2/T3 or
empty for unlabeled rows; a blank id is replaced by the file line number.
Model files are versioned JSON documents carrying the boosting config, class
order, the rank order and feature count the model was trained against, and
the full tree ensemble.  All writes go through a temp file + rename so
readers never observe partial output.
"""

from __future__ import annotations

import csv
import json
import math
import os
import tempfile
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

import numpy as np

from .core import CLASS_ORDER, GAS_NAMES, FaultLabel, GasSample
from .gbt import GbtConfig, GbtModel, TreeNode

CSV_HEADER = ["id", "h2", "ch4", "c2h6", "c2h4", "c2h2", "label"]
MODEL_FORMAT_VERSION = 1

# Per-class log-uniform gas ranges (ppm) for the synthetic generator, chosen
# so each class's draws land in its own Duval-triangle zone with probability
# well above one half (measured rates: PD/D1/T1/T3 ~1.0, T2 ~0.92, D2 ~0.75).
SYNTH_GAS_RANGES: dict[FaultLabel, dict[str, tuple[float, float]]] = {
    FaultLabel.PD: dict(
        h2=(600, 3000), ch4=(60, 250), c2h6=(5, 40), c2h4=(0.05, 0.8), c2h2=(0.01, 0.3)
    ),
    FaultLabel.D1: dict(
        h2=(150, 1200), ch4=(20, 120), c2h6=(2, 25), c2h4=(2, 15), c2h2=(30, 250)
    ),
    FaultLabel.D2: dict(
        h2=(80, 600), ch4=(130, 350), c2h6=(5, 40), c2h4=(95, 220), c2h2=(80, 220)
    ),
    FaultLabel.T1: dict(
        h2=(60, 400), ch4=(90, 300), c2h6=(40, 200), c2h4=(7, 16), c2h2=(0.001, 0.3)
    ),
    FaultLabel.T2: dict(
        h2=(40, 300), ch4=(160, 420), c2h6=(30, 150), c2h4=(95, 230), c2h2=(0.01, 1.5)
    ),
    FaultLabel.T3: dict(
        h2=(30, 250), ch4=(50, 180), c2h6=(10, 60), c2h4=(250, 900), c2h2=(2, 25)
    ),
}

DEFAULT_SYNTH_COUNTS: tuple[int, ...] = (42, 67, 113, 80, 21, 53)


def _atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_dataset(path) -> list[GasSample]:
    """Read gas samples from a CSV file; raises ValueError naming the first
    bad line."""
    samples: list[GasSample] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected header {CSV_HEADER}")
        if [h.strip().lower() for h in header] != CSV_HEADER:
            raise ValueError(f"{path}: bad header {header!r}, expected {CSV_HEADER}")
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(CSV_HEADER):
                raise ValueError(
                    f"{path}:{line_no}: expected {len(CSV_HEADER)} fields, got {len(row)}"
                )
            sample_id = row[0].strip() or str(line_no)
            gases = []
            for name, text in zip(GAS_NAMES, row[1:6]):
                try:
                    value = float(text)
                except ValueError:
                    raise ValueError(
                        f"{path}:{line_no}: gas {name} is not a number: {text!r}"
                    ) from None
                if not math.isfinite(value) or value < 0:
                    raise ValueError(
                        f"{path}:{line_no}: gas {name} must be finite and >= 0, got {text}"
                    )
                gases.append(value)
            label_text = row[6].strip()
            if label_text:
                try:
                    label = FaultLabel(label_text)
                except ValueError:
                    raise ValueError(
                        f"{path}:{line_no}: unknown label {label_text!r}"
                    ) from None
            else:
                label = None
            samples.append(GasSample(*gases, label=label, id=sample_id))
    return samples


def write_dataset(path, samples: Sequence[GasSample]) -> None:
    """Write samples as CSV; float formatting round-trips exactly."""
    lines = [",".join(CSV_HEADER)]
    for s in samples:
        label = s.label.value if s.label is not None else ""
        gases = ",".join(repr(float(g)) for g in s.gases())
        lines.append(f"{s.id},{gases},{label}")
    _atomic_write_text(str(path), "\n".join(lines) + "\n")


def table_iv_path():
    """Path to the bundled six-transformer reference CSV."""
    return resources.files("dgadiag.data") / "tableIV.csv"


def load_table_iv() -> list[GasSample]:
    with resources.as_file(table_iv_path()) as path:
        return load_dataset(path)


def generate_synthetic(
    seed: int, counts: Sequence[int] = DEFAULT_SYNTH_COUNTS
) -> list[GasSample]:
    """Draw labeled samples per class from the documented log-uniform ranges.

    `counts` gives the number of samples per class in canonical class order.
    Output is deterministic in `seed`: classes are drawn in canonical order
    and gases in (h2, ch4, c2h6, c2h4, c2h2) order.
    """
    counts = list(counts)
    if len(counts) != len(CLASS_ORDER):
        raise ValueError(f"expected {len(CLASS_ORDER)} class counts, got {len(counts)}")
    if any(c < 0 for c in counts):
        raise ValueError("class counts must be >= 0")
    rng = np.random.default_rng(seed)
    samples: list[GasSample] = []
    serial = 0
    for label, count in zip(CLASS_ORDER, counts):
        ranges = SYNTH_GAS_RANGES[label]
        for _ in range(count):
            serial += 1
            gases = {
                name: float(np.exp(rng.uniform(np.log(lo), np.log(hi))))
                for name, (lo, hi) in ranges.items()
            }
            samples.append(GasSample(**gases, label=label, id=f"syn-{serial:04d}"))
    return samples


@dataclass(frozen=True)
class ModelBundle:
    """A trained classifier plus the feature recipe it expects."""

    model: GbtModel
    rank_order: tuple[int, ...]
    k: int


def _node_to_json(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"leaf": node.weight}
    return {
        "feature": node.feature,
        "threshold": node.threshold,
        "default_left": node.default_left,
        "left": _node_to_json(node.left),
        "right": _node_to_json(node.right),
    }


def _node_from_json(obj: dict) -> TreeNode:
    if "leaf" in obj:
        return TreeNode(weight=float(obj["leaf"]))
    return TreeNode(
        feature=int(obj["feature"]),
        threshold=float(obj["threshold"]),
        default_left=bool(obj["default_left"]),
        left=_node_from_json(obj["left"]),
        right=_node_from_json(obj["right"]),
    )


def save_model(path, bundle: ModelBundle) -> None:
    cfg = bundle.model.config
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "config": {
            "rounds": cfg.rounds,
            "learning_rate": cfg.learning_rate,
            "max_depth": cfg.max_depth,
            "reg_lambda": cfg.reg_lambda,
            "gamma": cfg.gamma,
            "min_child_weight": cfg.min_child_weight,
            "n_classes": cfg.n_classes,
        },
        "class_order": [label.value for label in bundle.model.class_order],
        "rank_order": list(bundle.rank_order),
        "k": bundle.k,
        "seed": bundle.model.seed,
        "base_score": bundle.model.base_score,
        "n_features": bundle.model.n_features,
        "trees": [
            [_node_to_json(tree) for tree in round_trees]
            for round_trees in bundle.model.trees
        ],
    }
    _atomic_write_text(str(path), json.dumps(doc, indent=1) + "\n")


def load_model(path) -> ModelBundle:
    """Parse a model file fully before constructing anything; corrupt or
    version-mismatched files raise ValueError."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: corrupt model file: {exc}") from None
    try:
        version = doc["format_version"]
        if version != MODEL_FORMAT_VERSION:
            raise ValueError(
                f"{path}: unsupported format_version {version!r}, "
                f"expected {MODEL_FORMAT_VERSION}"
            )
        cfg = GbtConfig(**doc["config"])
        class_order = tuple(FaultLabel(name) for name in doc["class_order"])
        trees = [
            [_node_from_json(obj) for obj in round_trees]
            for round_trees in doc["trees"]
        ]
        model = GbtModel(
            trees=trees,
            config=cfg,
            n_features=int(doc["n_features"]),
            class_order=class_order,
            base_score=float(doc["base_score"]),
            seed=int(doc["seed"]),
        )
        from .ranking import validate_rank_order

        return ModelBundle(
            model=model,
            rank_order=validate_rank_order(doc["rank_order"]),
            k=int(doc["k"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path}: malformed model file ({exc})") from None
