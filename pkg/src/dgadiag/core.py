"""Domain types for dissolved-gas samples and the 37-entry ratio parameter vector.

Five dissolved gases are tracked per transformer oil sample: hydrogen (H2),
methane (CH4), ethane (C2H6), ethylene (C2H4) and acetylene (C2H2), all in ppm.
From them a fixed family of 37 parameters is derived: simple ratios, the raw
concentrations, four aggregate sums, and ratios against those aggregates.
Parameter numbering is 1-based throughout (persisted files record numbers
1..37); see `param_vector` for the full listing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Floor applied to every ratio denominator, in ppm.  Field datasets commonly
# record "not detected" as 0.001 ppm; clamping keeps all 37 parameters finite.
EPS_PPM = 1e-3


class FaultLabel(Enum):
    """Six-class fault taxonomy for labeled samples.

    PD = partial discharge, D1/D2 = low/high energy discharge,
    T1/T2/T3 = thermal faults <300, 300-700, >700 degrees C.
    Definition order is the canonical ordering used for confusion-matrix
    indexing and argmax tie-breaking.
    """

    PD = "PD"
    D1 = "D1"
    D2 = "D2"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"


CLASS_ORDER: tuple[FaultLabel, ...] = tuple(FaultLabel)
N_CLASSES = len(CLASS_ORDER)
N_PARAMS = 37


class DiagnosisOutcome(Enum):
    """Outcome alphabet of the rule-based ratio methods.

    Extends the six fault classes with NF ("no fault") and UD ("undefined",
    no matching ratio code), reachable only from the Rogers and IEC methods,
    and DT (mixed discharge/thermal zone), reachable only from the Duval
    triangle.
    """

    PD = "PD"
    D1 = "D1"
    D2 = "D2"
    T1 = "T1"
    T2 = "T2"
    T3 = "T3"
    NF = "NF"
    UD = "UD"
    DT = "DT"


@dataclass(frozen=True)
class GasSample:
    """One transformer's five gas concentrations (ppm), optionally labeled."""

    h2: float
    ch4: float
    c2h6: float
    c2h4: float
    c2h2: float
    label: FaultLabel | None = None
    id: str = ""

    def __post_init__(self) -> None:
        for name, value in zip(GAS_NAMES, self.gases()):
            if not math.isfinite(value) or value < 0:
                raise ValueError(
                    f"gas {name} must be finite and >= 0, got {value!r}"
                    + (f" (sample {self.id})" if self.id else "")
                )

    def gases(self) -> tuple[float, float, float, float, float]:
        return (self.h2, self.ch4, self.c2h6, self.c2h4, self.c2h2)


GAS_NAMES = ("h2", "ch4", "c2h6", "c2h4", "c2h2")


@dataclass(frozen=True)
class Aggregates:
    """The four aggregate gas sums used as ratio denominators.

    th  = H2 + CH4 + C2H6 + C2H4 + C2H2  (total)
    thd = CH4 + C2H4 + C2H2
    thh = H2 + C2H4 + C2H2
    tch = CH4 + C2H6 + C2H4 + C2H2       (total hydrocarbons)
    """

    th: float
    thd: float
    thh: float
    tch: float


def aggregates(sample: GasSample) -> Aggregates:
    """Compute the four aggregate sums for one sample."""
    h2, ch4, c2h6, c2h4, c2h2 = sample.gases()
    return Aggregates(
        th=h2 + ch4 + c2h6 + c2h4 + c2h2,
        thd=ch4 + c2h4 + c2h2,
        thh=h2 + c2h4 + c2h2,
        tch=ch4 + c2h6 + c2h4 + c2h2,
    )


@dataclass(frozen=True)
class ParamVector:
    """The 37 derived parameters of one sample, indexable by 1-based number."""

    values: np.ndarray  # shape (37,); position i-1 holds parameter number i

    def __getitem__(self, number: int) -> float:
        if not 1 <= number <= N_PARAMS:
            raise IndexError(f"parameter number must be in 1..{N_PARAMS}, got {number}")
        return float(self.values[number - 1])

    def __len__(self) -> int:
        return N_PARAMS


def param_vector(sample: GasSample) -> ParamVector:
    """Compute the 37-entry parameter vector for one sample.

    Numbering (1-based):
      1-5   each gas / TH, in order H2, CH4, C2H6, C2H4, C2H2
      6-9   C2H2 / {H2, CH4, C2H6, C2H4}
      10-12 C2H4 / {H2, CH4, C2H6}
      13    (C2H4/H2) + (C2H4/CH4), i.e. parameter 10 + parameter 11
      14-18 the raw gases, same gas order as 1-5
      19-22 TH, THD, THH, TCH
      23-27 each gas / THD
      28-32 each gas / THH
      33-37 each gas / TCH

    Every denominator is clamped below at EPS_PPM before dividing, so all
    entries are finite even for all-zero samples.
    """
    h2, ch4, c2h6, c2h4, c2h2 = sample.gases()
    agg = aggregates(sample)

    def over(num: float, den: float) -> float:
        return num / max(den, EPS_PPM)

    v = np.empty(N_PARAMS, dtype=np.float64)
    v[0] = over(h2, agg.th)
    v[1] = over(ch4, agg.th)
    v[2] = over(c2h6, agg.th)
    v[3] = over(c2h4, agg.th)
    v[4] = over(c2h2, agg.th)
    v[5] = over(c2h2, h2)
    v[6] = over(c2h2, ch4)
    v[7] = over(c2h2, c2h6)
    v[8] = over(c2h2, c2h4)
    v[9] = over(c2h4, h2)
    v[10] = over(c2h4, ch4)
    v[11] = over(c2h4, c2h6)
    v[12] = v[9] + v[10]
    v[13] = h2
    v[14] = ch4
    v[15] = c2h6
    v[16] = c2h4
    v[17] = c2h2
    v[18] = agg.th
    v[19] = agg.thd
    v[20] = agg.thh
    v[21] = agg.tch
    v[22] = over(h2, agg.thd)
    v[23] = over(ch4, agg.thd)
    v[24] = over(c2h6, agg.thd)
    v[25] = over(c2h4, agg.thd)
    v[26] = over(c2h2, agg.thd)
    v[27] = over(h2, agg.thh)
    v[28] = over(ch4, agg.thh)
    v[29] = over(c2h6, agg.thh)
    v[30] = over(c2h4, agg.thh)
    v[31] = over(c2h2, agg.thh)
    v[32] = over(h2, agg.tch)
    v[33] = over(ch4, agg.tch)
    v[34] = over(c2h6, agg.tch)
    v[35] = over(c2h4, agg.tch)
    v[36] = over(c2h2, agg.tch)
    return ParamVector(values=v)


def param_matrix(samples: list[GasSample]) -> np.ndarray:
    """Stack the parameter vectors of many samples into an (n, 37) array."""
    if not samples:
        raise ValueError("empty sample list")
    return np.stack([param_vector(s).values for s in samples])
