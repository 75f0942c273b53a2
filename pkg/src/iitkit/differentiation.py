"""Unit-value ratios and the horizontal/vertical split of intra-industry trade.

Each industry's export/import unit-value ratio is compared to a band around 1.
The GHM rule uses the additive band [1-a, 1+a]; the FF rule uses the
ratio-symmetric band [1/(1+a), 1+a]. Ratios above the band mark
higher-quality exports (vertical-high), below it lower-quality exports
(vertical-low). `decompose_shares` turns a group of industries into the
IIT / HIIT / VIIT / HQVIIT / LQVIIT share table under either accounting
family: GHM attributes each industry's overlapped trade, FF attributes the
full trade of each two-way industry.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum

from iitkit.indices import TradeType, TradeTypeMethod, classify_trade_type
from iitkit.trade_data import FlowKey, IndustryFlow, IndustryGroup

FAMILIES = ("ghm", "ff")

# Canonical threshold presets.
ALPHA_DEFAULT = 0.15
ALPHA_WIDE = 0.25


class Differentiation(Enum):
    HORIZONTAL = "horizontal"
    VERTICAL_HIGH = "vertical_high"
    VERTICAL_LOW = "vertical_low"


class UnclassifiableReason(Enum):
    """Why an industry's unit-value ratio cannot be formed.

    UNIT_MISMATCH is part of the wire schema for consumers that aggregate
    flows themselves; merged flows produced by pair_and_clean carry a single
    unit, so ingestion never emits it.
    """

    MISSING_VOLUME = "missing-volume"
    ZERO_VOLUME = "zero-volume"
    UNIT_MISMATCH = "unit-mismatch"
    ZERO_VALUE = "zero-value"


@dataclass(frozen=True)
class UnitValueRatio:
    """Export and import unit values and their ratio (export over import)."""

    export_unit_value: float
    import_unit_value: float
    ratio: float


@dataclass(frozen=True)
class DifferentiationMethod:
    """Differentiation rule family ("ghm" or "ff") with its threshold alpha."""

    family: str
    alpha: float = ALPHA_DEFAULT

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown differentiation family {self.family!r}")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")

    def classify(self, ratio: float) -> Differentiation:
        if self.family == "ghm":
            return classify_ghm(ratio, self.alpha)
        return classify_ff(ratio, self.alpha)


def unit_value_ratio(flow: IndustryFlow) -> UnitValueRatio | UnclassifiableReason:
    """Compute X/x, M/m and their ratio, or say why that is impossible."""
    if flow.export_volume is None or flow.import_volume is None:
        return UnclassifiableReason.MISSING_VOLUME
    if flow.export_volume == 0 or flow.import_volume == 0:
        return UnclassifiableReason.ZERO_VOLUME
    if flow.export_value == 0 or flow.import_value == 0:
        return UnclassifiableReason.ZERO_VALUE
    vux = flow.export_value / flow.export_volume
    vum = flow.import_value / flow.import_volume
    return UnitValueRatio(vux, vum, vux / vum)


def classify_ghm(ratio: float, alpha: float) -> Differentiation:
    """Horizontal iff 1-alpha <= r <= 1+alpha (inclusive); vertical otherwise."""
    if ratio <= 0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    if ratio > 1 + alpha:
        return Differentiation.VERTICAL_HIGH
    if ratio < 1 - alpha:
        return Differentiation.VERTICAL_LOW
    return Differentiation.HORIZONTAL


def classify_ff(ratio: float, alpha: float) -> Differentiation:
    """Horizontal iff 1/(1+alpha) <= r <= 1+alpha (inclusive); vertical otherwise."""
    if ratio <= 0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    if ratio > 1 + alpha:
        return Differentiation.VERTICAL_HIGH
    if ratio < 1 / (1 + alpha):
        return Differentiation.VERTICAL_LOW
    return Differentiation.HORIZONTAL


@dataclass(frozen=True)
class IndustryDetail:
    """Per-industry line of a SharesReport."""

    key: FlowKey
    trade_type: TradeType
    ratio: float | None
    label: Differentiation | None
    unclassifiable: UnclassifiableReason | None
    contribution: float  # this industry's IIT amount as a share of group trade

    def to_dict(self) -> dict:
        return {
            "period": self.key.period,
            "reporter": self.key.reporter,
            "partner": self.key.partner,
            "industry_code": self.key.industry_code,
            "trade_type": self.trade_type.value,
            "ratio": self.ratio,
            "label": self.label.value if self.label else None,
            "unclassifiable": self.unclassifiable.value if self.unclassifiable else None,
            "contribution": self.contribution,
        }


CSV_COLUMNS = (
    "period",
    "reporter",
    "partner",
    "group_id",
    "family",
    "alpha",
    "type_method",
    "aer_threshold",
    "total_trade",
    "iit",
    "hiit",
    "viit",
    "hqviit",
    "lqviit",
    "unclassified_share",
)


@dataclass(frozen=True)
class SharesReport:
    """IIT share decomposition of one industry group under one method pair.

    All share fields are fractions of the group's total trade. hiit + viit
    equals iit minus unclassified_share; hqviit + lqviit equals viit.
    """

    group_id: str
    snapshot: tuple[str, str, str]
    family: str
    alpha: float
    type_method: TradeTypeMethod
    total_trade: float
    iit: float
    hiit: float
    viit: float
    hqviit: float
    lqviit: float
    unclassified_share: float
    details: tuple[IndustryDetail, ...]

    def to_dict(self, include_details: bool = True) -> dict:
        out = {
            "period": self.snapshot[0],
            "reporter": self.snapshot[1],
            "partner": self.snapshot[2],
            "group_id": self.group_id,
            "family": self.family,
            "alpha": self.alpha,
            "type_method": self.type_method.kind,
            "aer_threshold": self.type_method.threshold,
            "total_trade": self.total_trade,
            "iit": self.iit,
            "hiit": self.hiit,
            "viit": self.viit,
            "hqviit": self.hqviit,
            "lqviit": self.lqviit,
            "unclassified_share": self.unclassified_share,
        }
        if include_details:
            out["industries"] = [d.to_dict() for d in self.details]
        return out

    def to_csv_row(self) -> list:
        d = self.to_dict(include_details=False)
        return [d[c] for c in CSV_COLUMNS]


def reports_to_csv(reports: list[SharesReport]) -> str:
    """Flat CSV with one row per (group, method combination)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        writer.writerow(report.to_csv_row())
    return buf.getvalue()


def decompose_shares(
    group: IndustryGroup,
    diff_method: DifferentiationMethod,
    type_method: TradeTypeMethod,
) -> SharesReport:
    """Decompose a group's trade into IIT and its horizontal/vertical parts.

    GHM accounting counts each industry's overlap 2*min(X, M) as IIT and
    attributes it wholly by classify_ghm on the industry's ratio. FF
    accounting counts the full trade X+M of each two-way industry (per
    `type_method`) and attributes it by classify_ff. Industries whose ratio
    cannot be formed move their IIT amount into unclassified_share.
    """
    total = group.total_trade
    ghm = diff_method.family == "ghm"

    iit = hiit = hq = lq = unclassified = 0.0
    details: list[IndustryDetail] = []
    for flow in group.members:
        trade_type = classify_trade_type(flow, type_method)
        if ghm:
            amount = 2.0 * min(flow.export_value, flow.import_value)
        else:
            amount = flow.total_trade if trade_type is TradeType.TWO_WAY else 0.0
        iit += amount

        uvr = unit_value_ratio(flow)
        ratio = uvr.ratio if isinstance(uvr, UnitValueRatio) else None
        label = None
        reason = None
        if amount > 0:
            if ratio is not None:
                label = diff_method.classify(ratio)
                if label is Differentiation.HORIZONTAL:
                    hiit += amount
                elif label is Differentiation.VERTICAL_HIGH:
                    hq += amount
                else:
                    lq += amount
            else:
                reason = uvr
                unclassified += amount
        details.append(
            IndustryDetail(flow.key, trade_type, ratio, label, reason, amount / total)
        )

    return SharesReport(
        group_id=group.group_id,
        snapshot=group.snapshot,
        family=diff_method.family,
        alpha=diff_method.alpha,
        type_method=type_method,
        total_trade=total,
        iit=iit / total,
        hiit=hiit / total,
        viit=(hq + lq) / total,
        hqviit=hq / total,
        lqviit=lq / total,
        unclassified_share=unclassified / total,
        details=tuple(details),
    )
