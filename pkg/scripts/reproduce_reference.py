#!/usr/bin/env python3
"""Print the bundled reference comparisons.

First the six-sample method comparison (each rule method against the known
fault), then the metrics derived from the recorded 43-sample holdout
confusion matrix, next to the documented reference figures.
"""

from __future__ import annotations

import sys

from dgadiag import duval, iec_ratio, load_table_iv, metrics, rogers
from dgadiag.evaluation import ConfusionMatrix
from dgadiag.reference import (
    CLASS_NAMES,
    REFERENCE_ACCURACY_PCT,
    REFERENCE_F1,
    REFERENCE_HOLDOUT_CONFUSION,
    REFERENCE_SENSITIVITY_PCT,
)


def main() -> int:
    print("six-sample comparison (bundled tableIV.csv)")
    print("h2\tch4\tc2h6\tc2h4\tc2h2\tactual\tduval\trogers\tiec")
    for s in load_table_iv():
        gases = "\t".join(f"{g:g}" for g in s.gases())
        print(
            f"{gases}\t{s.label.value}\t{duval(s).value}"
            f"\t{rogers(s).value}\t{iec_ratio(s).value}"
        )

    print()
    print("recorded 43-sample holdout confusion matrix, derived metrics")
    report = metrics(ConfusionMatrix(counts=REFERENCE_HOLDOUT_CONFUSION))
    print("class\tsensitivity%\t(recorded)\tf1\t(recorded)")
    for i, name in enumerate(CLASS_NAMES):
        print(
            f"{name}\t{report.sensitivity[i] * 100:.2f}\t{REFERENCE_SENSITIVITY_PCT[i]}"
            f"\t{report.f1[i]:.4f}\t{REFERENCE_F1[i]}"
        )
    print(f"accuracy\t{report.accuracy * 100:.2f}\t(recorded {REFERENCE_ACCURACY_PCT})")
    print(f"kappa\t{report.kappa:.4f}")
    print(f"macro_f1\t{report.macro_f1:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
