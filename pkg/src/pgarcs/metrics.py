"""Derived size metrics, range audits, and bound-region evaluation.

Everything that compares an arc size t against a sqrt-type threshold is
computed in exact integer arithmetic so boundary rows (slack exactly 0,
ratios landing on a printed value) never depend on float rounding:

* ``slack_45(q, t)`` = floor(4.5*sqrt(q) - t) via isqrt(81q),
* ``slack_5(q, t)``  = floor(5*sqrt(q) - t)   via isqrt(25q),
* ``sqrt_ratio(q, t)`` = t/sqrt(q) rounded *up* at two decimals, found as
  the smallest integer m with m^2 * q >= (100 t)^2 and printed as m/100.

The log-scaled ratios and the predicted-size curve are double precision;
published printed values are checked to half a unit of their last digit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt, log2, sqrt
from typing import Iterable, Optional

from .arc import max_arc_size
from .dataset import EXCLUDED_ORDERS, PublishedRow, dataset

PREDICTED_COEFF = 0.73331  # fitted coefficient of sqrt(q) * log2(q)^0.75


# ---------------------------------------------------------------------------
# scalar metrics


def slack_45(q: int, t: int) -> int:
    """floor(4.5*sqrt(q) - t), exact (may be negative)."""
    return (isqrt(81 * q) - 2 * t) // 2


def slack_5(q: int, t: int) -> int:
    """floor(5*sqrt(q) - t), exact (may be negative)."""
    return isqrt(25 * q) - t


def sqrt_ratio(q: int, t: int) -> str:
    """t/sqrt(q) rounded up at two decimals, as a string like '4.05'."""
    num = (100 * t) ** 2
    m = isqrt((num + q - 1) // q)
    while m * m * q < num:
        m += 1
    return f"{m // 100}.{m % 100:02d}"


def log_ratio(q: int, t: int, c: float) -> float:
    """t / (sqrt(q) * log2(q)^c)."""
    return t / (sqrt(q) * log2(q) ** c)


def predicted_size(q: int) -> float:
    """Fitted size curve 0.73331 * sqrt(q) * log2(q)^0.75."""
    return PREDICTED_COEFF * sqrt(q) * log2(q) ** 0.75


def size_gap(q: int, t: int) -> float:
    """t minus the fitted curve."""
    return t - predicted_size(q)


def size_gap_pct(q: int, t: int) -> float:
    """The gap as a percentage of t."""
    return 100.0 * size_gap(q, t) / t


@dataclass(frozen=True)
class MetricsRow:
    q: int
    t_bar: int
    slack_45: int
    slack_5: int
    sqrt_ratio: str
    log_ratio_1: float
    log_ratio_half: float
    log_ratio_075: float
    predicted: float
    gap: float
    gap_pct: float


def compute_metrics(q: int, t: int) -> MetricsRow:
    """Every derived column for one (order, size) pair."""
    return MetricsRow(
        q=q,
        t_bar=t,
        slack_45=slack_45(q, t),
        slack_5=slack_5(q, t),
        sqrt_ratio=sqrt_ratio(q, t),
        log_ratio_1=log_ratio(q, t, 1.0),
        log_ratio_half=log_ratio(q, t, 0.5),
        log_ratio_075=log_ratio(q, t, 0.75),
        predicted=predicted_size(q),
        gap=size_gap(q, t),
        gap_pct=size_gap_pct(q, t),
    )


# ---------------------------------------------------------------------------
# spectrum ceiling


def spectrum_ceiling(q: int) -> int:
    """Largest size the all-sizes spectrum is known to reach, by order class.

    Even orders reach (q+4)/2.  Odd orders reach (q+5)/2 in general, and
    (q+7)/2 when q = 2 (mod 3) with 11 <= q <= 3701 or q = 1 (mod 4)
    with q <= 337.
    """
    if q % 2 == 0:
        return (q + 4) // 2
    if (q % 3 == 2 and 11 <= q <= 3701) or (q % 4 == 1 and q <= 337):
        return (q + 7) // 2
    return (q + 5) // 2




# ---------------------------------------------------------------------------
# dataset audit


@dataclass(frozen=True)
class Mismatch:
    q: int
    column: str
    published: str
    computed: str


@dataclass(frozen=True)
class RangeViolation:
    q: int
    claim: str
    value: float


@dataclass
class DatasetReport:
    rows_checked: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    violations: list[RangeViolation] = field(default_factory=list)
    blank_slack_flags: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.mismatches or self.violations or self.blank_slack_flags)


def _tolerance(printed: str) -> float:
    decimals = len(printed.split(".")[1]) if "." in printed else 0
    return 0.5 * 10.0 ** -decimals


# (claim label, exponent c or None for gap metrics, low, high, lo_q, hi_q,
#  open bounds?) — the banded envelope the dataset is audited against
_RANGE_CLAIMS = [
    ("log_ratio_1 in (0.397, 0.45)", "lr1", 0.397, 0.45, 0, 10**9, True),
    ("log_ratio_1 < 0.428 for q >= 467", "lr1", None, 0.428, 467, 10**9, True),
    ("log_ratio_1 < 0.415 for q >= 1013", "lr1", None, 0.415, 1013, 10**9, True),
    ("log_ratio_1 < 0.41 for q >= 1399", "lr1", None, 0.41, 1399, 10**9, True),
    ("log_ratio_1 < 0.405 for q >= 1889", "lr1", None, 0.405, 1889, 10**9, True),
    ("log_ratio_075 in (0.720, 0.743) for q <= 997", "lr75", 0.720, 0.743, 0, 997, True),
    ("log_ratio_075 in (0.727, 0.741) for 1009 <= q <= 1999", "lr75", 0.727, 0.741, 1009, 1999, True),
    ("log_ratio_075 in (0.729, 0.738) for q >= 2003", "lr75", 0.729, 0.738, 2003, 10**9, True),
    ("gap in [-1.86, 1.23]", "gap", -1.86, 1.23, 0, 10**9, False),
    ("gap_pct in (-1.73, 1.31) for q <= 997", "pct", -1.73, 1.31, 0, 997, True),
    ("gap_pct in (-0.80, 0.93) for 1009 <= q <= 1999", "pct", -0.80, 0.93, 1009, 1999, True),
    ("gap_pct in (-0.53, 0.54) for q >= 2003", "pct", -0.53, 0.54, 2003, 10**9, True),
]


def check_dataset(rows: Optional[Iterable[PublishedRow]] = None) -> DatasetReport:
    """Recompute every published derived column and audit the range claims.

    Any disagreement is recorded with both values; nothing is dropped.
    The range claims apply to the two main bands only, skipping the
    excluded square/high-power orders.
    """
    if rows is None:
        rows = dataset()
    report = DatasetReport()
    for r in rows:
        report.rows_checked += 1
        m = compute_metrics(r.q, r.t_bar)
        if r.slack_45 is not None and m.slack_45 != r.slack_45:
            report.mismatches.append(
                Mismatch(r.q, "slack_45", str(r.slack_45), str(m.slack_45)))
        if r.slack_5 is not None and m.slack_5 != r.slack_5:
            report.mismatches.append(
                Mismatch(r.q, "slack_5", str(r.slack_5), str(m.slack_5)))
        if r.sqrt_ratio is not None and m.sqrt_ratio != r.sqrt_ratio:
            report.mismatches.append(
                Mismatch(r.q, "sqrt_ratio", r.sqrt_ratio, m.sqrt_ratio))
        for col, val in (("log_ratio_1", m.log_ratio_1),
                         ("log_ratio_half", m.log_ratio_half),
                         ("log_ratio_075", m.log_ratio_075)):
            printed = getattr(r, col)
            if printed is not None and abs(val - float(printed)) > _tolerance(printed):
                report.mismatches.append(Mismatch(r.q, col, printed, repr(val)))
        # a blank slack_45 cell means "not applicable": the size must
        # actually sit at or above 4.5*sqrt(q) (exact comparison)
        if r.source == "T2" and r.slack_45 is None and 4 * r.t_bar ** 2 < 81 * r.q:
            report.blank_slack_flags.append(r.q)
        if r.source in ("T1", "T2") and r.q not in EXCLUDED_ORDERS:
            values = {"lr1": m.log_ratio_1, "lr75": m.log_ratio_075,
                      "gap": m.gap, "pct": m.gap_pct}
            for label, key, low, high, lo_q, hi_q, open_b in _RANGE_CLAIMS:
                if not (lo_q <= r.q <= hi_q):
                    continue
                v = values[key]
                if low is not None and (v <= low if open_b else v < low):
                    report.violations.append(RangeViolation(r.q, label, v))
                elif v >= high if open_b else v > high:
                    report.violations.append(RangeViolation(r.q, label, v))
    return report


# ---------------------------------------------------------------------------
# bound regions


@dataclass(frozen=True)
class BoundClaim:
    label: str
    in_region: bool       # is q inside the stated range of orders?
    holds: bool           # does t satisfy the inequality at this q?


def _lt_scaled_sqrt(t: int, q: int, tenths: int) -> bool:
    # t < (tenths/10)*sqrt(q)  <=>  100 t^2 < tenths^2 q, exact
    return 100 * t * t < tenths * tenths * q


def _lt_45_minus(t: int, q: int, d: int) -> bool:
    # t < 4.5*sqrt(q) - d  <=>  2(t+d) < 9 sqrt(q)  <=>  4(t+d)^2 < 81 q
    s = t + d
    return s < 0 or 4 * s * s < 81 * q


_REGION_45 = lambda q: q <= 2377 or q in (2401, 2417, 2437)
_REGION_42 = lambda q: q <= 1163 or q in (1181, 1193, 1369, 1681, 2401)
_REGION_43 = lambda q: q <= 1451 or q in (1459, 1471, 1481, 1483, 1493,
                                          1499, 1511, 1681, 2401)
_REGION_44 = lambda q: q <= 1849 or q in (1867, 1889, 1901, 1907, 1913,
                                          1949, 1993, 2401)
# the subtractive and log-scaled claims only apply from q = 173 up
_REGION_M10 = lambda q: 173 <= q <= 1163 or q in (1181, 1187, 1193, 1223,
                                                  1237, 1249, 1369, 1681, 2401)
_REGION_M8 = lambda q: 173 <= q <= 1423 or q in (1429, 1433, 1439, 1447,
                                                 1451, 1471, 1481, 1483,
                                                 1499, 1511, 1681, 2401)
_REGION_M6 = lambda q: 173 <= q <= 1693 or q in (1699, 1709, 1747, 1783, 2401)
_REGION_M3 = lambda q: 173 <= q <= 2003 or q in (2017, 2027, 2401)
_REGION_LOG = lambda q: 173 <= q <= 2879 or q in (3511, 4096, 4523, 5003,
                                                  5347, 5641, 5843, 6011)
_REGION_CONJ = lambda q: q >= 173


def bound_regions(q: int, t: int) -> list[BoundClaim]:
    """Evaluate each size bound at (q, t): does it hold, and is q in the
    range of orders the bound is claimed for?

    sqrt-threshold comparisons are exact integer tests; the two
    log-scaled thresholds are double precision.
    """
    log_thresh = sqrt(q) * log2(q) ** 0.75
    return [
        BoundClaim("t < 4.2*sqrt(q)", _REGION_42(q), _lt_scaled_sqrt(t, q, 42)),
        BoundClaim("t < 4.3*sqrt(q)", _REGION_43(q), _lt_scaled_sqrt(t, q, 43)),
        BoundClaim("t < 4.4*sqrt(q)", _REGION_44(q), _lt_scaled_sqrt(t, q, 44)),
        BoundClaim("t < 4.5*sqrt(q)", _REGION_45(q), _lt_scaled_sqrt(t, q, 45)),
        BoundClaim("t < 4.5*sqrt(q) - 10", _REGION_M10(q), _lt_45_minus(t, q, 10)),
        BoundClaim("t < 4.5*sqrt(q) - 8", _REGION_M8(q), _lt_45_minus(t, q, 8)),
        BoundClaim("t < 4.5*sqrt(q) - 6", _REGION_M6(q), _lt_45_minus(t, q, 6)),
        BoundClaim("t < 4.5*sqrt(q) - 3", _REGION_M3(q), _lt_45_minus(t, q, 3)),
        BoundClaim("t < 0.743*sqrt(q)*log2(q)^0.75", _REGION_LOG(q),
                   t < 0.743 * log_thresh),
        BoundClaim("t < 0.75*sqrt(q)*log2(q)^0.75", _REGION_CONJ(q),
                   t < 0.75 * log_thresh),
    ]


# ---------------------------------------------------------------------------
# plot series


_PLOT_KINDS = {
    "log_ratio_075": lambda q, t: log_ratio(q, t, 0.75),
    "gap": size_gap,
    "gap_pct": size_gap_pct,
}


def emit_plot_data(kind: str, rows: Optional[Iterable[PublishedRow]] = None) -> str:
    """CSV series ``q,value`` for one plotted metric.

    Rows are the dataset orders in [173, 2879] minus the excluded
    square/high-power orders; values carry full double precision.
    """
    if kind not in _PLOT_KINDS:
        raise ValueError(f"unknown plot kind {kind!r}; "
                         f"expected one of {sorted(_PLOT_KINDS)}")
    if rows is None:
        rows = dataset()
    fn = _PLOT_KINDS[kind]
    lines = ["q,value"]
    for r in rows:
        if 173 <= r.q <= 2879 and r.q not in EXCLUDED_ORDERS:
            lines.append(f"{r.q},{fn(r.q, r.t_bar)!r}")
    return "\n".join(lines) + "\n"
