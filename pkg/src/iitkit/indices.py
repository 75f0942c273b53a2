"""Intra-industry trade indicators.

Two measurement families are covered. The trade-recovery family treats the
overlapped (balanced) part of an industry's exports and imports as
intra-industry: Balassa's net-trade index, its signed performance variant,
and the simple and synthetic Grubel-Lloyd indices. The type-of-trade family
labels an industry's entire trade as one-way or two-way from the
minority/majority flow ratio and aggregates the two-way share (Vona's
synthetic index, optionally with Abd-El-Rahman's 10% cutoff).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from iitkit.trade_data import IndustryFlow, IndustryGroup


class UndefinedIndexError(ValueError):
    """Raised for an industry with zero trade on both sides (X + M = 0)."""


class TradeType(Enum):
    ONE_WAY = "one_way"
    TWO_WAY = "two_way"


@dataclass(frozen=True)
class TradeTypeMethod:
    """Rule deciding whether an industry's trade is one-way or two-way.

    "vona" counts any bidirectional flow as two-way; "abd_el_rahman" further
    requires the minority flow to reach `threshold` (default 10%) of the
    majority flow, boundary inclusive.
    """

    kind: str
    threshold: float = 0.10

    def __post_init__(self) -> None:
        if self.kind not in ("vona", "abd_el_rahman"):
            raise ValueError(f"unknown trade-type method {self.kind!r}")
        if self.kind == "abd_el_rahman" and not 0 < self.threshold < 1:
            raise ValueError(f"threshold must be in (0, 1), got {self.threshold}")

    @classmethod
    def vona(cls) -> "TradeTypeMethod":
        return cls("vona")

    @classmethod
    def abd_el_rahman(cls, threshold: float = 0.10) -> "TradeTypeMethod":
        return cls("abd_el_rahman", threshold)


def _require_trade(flow: IndustryFlow) -> None:
    if flow.export_value + flow.import_value == 0:
        raise UndefinedIndexError(f"zero total trade for key {tuple(flow.key)}")


def balassa_index(flow: IndustryFlow) -> float:
    """Net trade relative to total trade, |X - M| / (X + M), in [0, 1]."""
    _require_trade(flow)
    x, m = flow.export_value, flow.import_value
    return abs(x - m) / (x + m)


def balassa_performance(flow: IndustryFlow) -> float:
    """Signed trade balance ratio (X - M) / (X + M), in [-1, 1]."""
    _require_trade(flow)
    x, m = flow.export_value, flow.import_value
    return (x - m) / (x + m)


def grubel_lloyd_simple(flow: IndustryFlow) -> float:
    """Overlapped share of one industry's trade, 2*min(X, M) / (X + M)."""
    _require_trade(flow)
    x, m = flow.export_value, flow.import_value
    return 2.0 * min(x, m) / (x + m)


def grubel_lloyd_synthetic(group: IndustryGroup) -> float:
    """Overlapped share of a group's total trade, 2*sum(min) / sum(X + M)."""
    overlap = 0.0
    total = 0.0
    for flow in group.members:
        overlap += min(flow.export_value, flow.import_value)
        total += flow.export_value + flow.import_value
    if total == 0:
        raise UndefinedIndexError(f"zero total trade in group {group.group_id!r}")
    return 2.0 * overlap / total


def classify_trade_type(flow: IndustryFlow, method: TradeTypeMethod) -> TradeType:
    """Label an industry one-way or two-way under the given rule."""
    _require_trade(flow)
    minority = min(flow.export_value, flow.import_value)
    if minority == 0:
        return TradeType.ONE_WAY
    if method.kind == "vona":
        return TradeType.TWO_WAY
    majority = max(flow.export_value, flow.import_value)
    if minority / majority >= method.threshold:  # boundary inclusive
        return TradeType.TWO_WAY
    return TradeType.ONE_WAY


def vona_synthetic(group: IndustryGroup, method: TradeTypeMethod) -> float:
    """Share of the group's trade carried by two-way industries, in [0, 1]."""
    two_way = 0.0
    total = 0.0
    for flow in group.members:
        trade = flow.export_value + flow.import_value
        total += trade
        if classify_trade_type(flow, method) is TradeType.TWO_WAY:
            two_way += trade
    if total == 0:
        raise UndefinedIndexError(f"zero total trade in group {group.group_id!r}")
    return two_way / total
