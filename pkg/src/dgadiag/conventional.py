"""The three classical rule-based DGA diagnosis methods.

Duval triangle zones over (%CH4, %C2H4, %C2H2), the Rogers four-ratio code
table, and the IEC three-ratio code table.  All ratio denominators are
clamped below at EPS_PPM, matching the parameter-vector convention, so the
methods are total over valid samples (the Duval triangle alone requires a
nonzero CH4 + C2H4 + C2H2 sum).

Boundary conventions at zone edges are fixed by the inequality forms written
in `_duval_zone` and the code functions; edge cases are exactly where these
methods are known to misfire, so determinism there matters more than any
particular choice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import EPS_PPM, DiagnosisOutcome, GasSample


@dataclass(frozen=True)
class DuvalCoords:
    """Triangle coordinates: percentages of CH4, C2H4, C2H2 (sum to 100)."""

    pct_ch4: float
    pct_c2h4: float
    pct_c2h2: float


def duval_coords(sample: GasSample) -> DuvalCoords:
    """Triangle percentages for one sample; the three gases must not all be 0."""
    total = sample.ch4 + sample.c2h4 + sample.c2h2
    if total <= 0:
        raise ValueError("duval undefined: CH4 + C2H4 + C2H2 is zero")
    return DuvalCoords(
        pct_ch4=100.0 * sample.ch4 / total,
        pct_c2h4=100.0 * sample.c2h4 / total,
        pct_c2h2=100.0 * sample.c2h2 / total,
    )


def _duval_zone(pct_ch4: float, pct_c2h4: float, pct_c2h2: float) -> DiagnosisOutcome:
    if pct_ch4 >= 98:
        return DiagnosisOutcome.PD
    if pct_c2h2 < 4 and pct_c2h4 < 20:
        return DiagnosisOutcome.T1
    if pct_c2h2 < 4 and 20 <= pct_c2h4 < 50:
        return DiagnosisOutcome.T2
    if pct_c2h2 < 15 and pct_c2h4 >= 50:
        return DiagnosisOutcome.T3
    if pct_c2h2 >= 13 and pct_c2h4 < 23:
        return DiagnosisOutcome.D1
    if pct_c2h2 >= 13 and 23 <= pct_c2h4 < 40:
        return DiagnosisOutcome.D2
    if pct_c2h2 >= 29 and pct_c2h4 >= 40:
        return DiagnosisOutcome.D2
    return DiagnosisOutcome.DT


def duval(sample: GasSample) -> DiagnosisOutcome:
    """Duval triangle diagnosis: one of the six faults or DT (mixed zone)."""
    c = duval_coords(sample)
    return _duval_zone(c.pct_ch4, c.pct_c2h4, c.pct_c2h2)


def _ratio(num: float, den: float) -> float:
    return num / max(den, EPS_PPM)


# Rogers code table, keyed on (R1, R2, R3, R4) codes.  Entries with several
# admissible codes in one slot are expanded below.
_ROGERS_TABLE: dict[tuple[int, int, int, int], DiagnosisOutcome] = {
    (0, 0, 0, 0): DiagnosisOutcome.NF,
    (5, 0, 0, 0): DiagnosisOutcome.PD,
    (1, 0, 0, 0): DiagnosisOutcome.T1,  # slight overheating bands
    (2, 0, 0, 0): DiagnosisOutcome.T1,
    (0, 1, 0, 0): DiagnosisOutcome.T1,
    (1, 1, 0, 0): DiagnosisOutcome.T2,
    (0, 0, 1, 0): DiagnosisOutcome.T2,
    (1, 0, 1, 0): DiagnosisOutcome.T3,
    (0, 0, 2, 0): DiagnosisOutcome.T3,
    (0, 0, 0, 1): DiagnosisOutcome.D1,
    (0, 0, 1, 1): DiagnosisOutcome.D2,
    (0, 0, 1, 2): DiagnosisOutcome.D2,
    (0, 0, 2, 1): DiagnosisOutcome.D2,
    (0, 0, 2, 2): DiagnosisOutcome.D2,
}


def _rogers_codes(sample: GasSample) -> tuple[int, int, int, int]:
    r1 = _ratio(sample.ch4, sample.h2)
    r2 = _ratio(sample.c2h6, sample.ch4)
    r3 = _ratio(sample.c2h4, sample.c2h6)
    r4 = _ratio(sample.c2h2, sample.c2h4)

    if r1 <= 0.1:
        c1 = 5
    elif r1 < 1:
        c1 = 0
    elif r1 < 3:
        c1 = 1
    else:
        c1 = 2
    c2 = 0 if r2 < 1 else 1
    if r3 < 1:
        c3 = 0
    elif r3 < 3:
        c3 = 1
    else:
        c3 = 2
    if r4 < 0.5:
        c4 = 0
    elif r4 < 3:
        c4 = 1
    else:
        c4 = 2
    return (c1, c2, c3, c4)


def rogers(sample: GasSample) -> DiagnosisOutcome:
    """Rogers four-ratio diagnosis; combinations off the table give UD."""
    return _ROGERS_TABLE.get(_rogers_codes(sample), DiagnosisOutcome.UD)


def _iec_codes(sample: GasSample) -> tuple[int, int, int]:
    q1 = _ratio(sample.c2h2, sample.c2h4)
    q2 = _ratio(sample.ch4, sample.h2)
    q3 = _ratio(sample.c2h4, sample.c2h6)

    if q1 < 0.1:
        c1 = 0
    elif q1 <= 3:
        c1 = 1
    else:
        c1 = 2
    if q2 < 0.1:
        c2 = 1
    elif q2 <= 1:
        c2 = 0
    else:
        c2 = 2
    if q3 < 1:
        c3 = 0
    elif q3 <= 3:
        c3 = 1
    else:
        c3 = 2
    return (c1, c2, c3)


def iec_ratio(sample: GasSample) -> DiagnosisOutcome:
    """IEC ratio-code diagnosis; combinations off the table give UD."""
    c1, c2, c3 = _iec_codes(sample)
    if (c1, c2, c3) == (0, 0, 0):
        return DiagnosisOutcome.NF
    if (c1, c2, c3) == (0, 1, 0):
        return DiagnosisOutcome.PD
    if c1 in (1, 2) and c2 == 0 and c3 in (1, 2):
        # Discharge region; the high-energy sub-band is carved out by the
        # raw C2H2/C2H4 ratio.
        q1 = _ratio(sample.c2h2, sample.c2h4)
        if c1 == 1 and c3 == 2 and 0.6 <= q1 <= 2.5:
            return DiagnosisOutcome.D2
        return DiagnosisOutcome.D1
    if (c1, c2) == (0, 2):
        if c3 == 0:
            return DiagnosisOutcome.T1
        if c3 == 1:
            return DiagnosisOutcome.T2
        return DiagnosisOutcome.T3
    return DiagnosisOutcome.UD
