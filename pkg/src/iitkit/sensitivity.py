"""Threshold-sensitivity probes for the horizontal/vertical decomposition.

The horizontal band is arbitrary: widening alpha can silently re-label an
industry, and a tiny period-over-period movement of the unit-value ratio
across the band edge flips its assigned nature. `alpha_sweep` recomputes the
share table over a grid of alphas and records every label flip between
adjacent grid points; `nature_transitions` does the same across consecutive
periods of a panel at a fixed alpha. Flips are detected on labels, not on
ratio movements, so hairline crossings are reported rather than smoothed.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from iitkit.differentiation import (
    Differentiation,
    DifferentiationMethod,
    SharesReport,
    decompose_shares,
)
from iitkit.indices import TradeTypeMethod
from iitkit.trade_data import FlowKey, IndustryGroup

DEFAULT_ALPHA_GRID = (0.05, 0.10, 0.15, 0.20, 0.25, 0.30)


@dataclass(frozen=True)
class FlipPoint:
    """An industry whose label changes between two adjacent alphas."""

    key: FlowKey
    alpha: float  # grid point at which the new label first holds
    label_before: Differentiation
    label_after: Differentiation


@dataclass(frozen=True)
class SweepResult:
    alphas: tuple[float, ...]
    reports: tuple[SharesReport, ...]
    flip_points: tuple[FlipPoint, ...]

    def to_dict(self) -> dict:
        return {
            "alphas": list(self.alphas),
            "reports": [r.to_dict() for r in self.reports],
            "flip_points": [
                {
                    "period": f.key.period,
                    "reporter": f.key.reporter,
                    "partner": f.key.partner,
                    "industry_code": f.key.industry_code,
                    "alpha": f.alpha,
                    "label_before": f.label_before.value,
                    "label_after": f.label_after.value,
                }
                for f in self.flip_points
            ],
        }


@dataclass(frozen=True)
class Transition:
    """One industry observed in two consecutive periods."""

    key_from: FlowKey
    key_to: FlowKey
    ratio_from: float
    ratio_to: float
    label_from: Differentiation
    label_to: Differentiation

    @property
    def flipped(self) -> bool:
        return self.label_from is not self.label_to

    def to_dict(self) -> dict:
        return {
            "reporter": self.key_from.reporter,
            "partner": self.key_from.partner,
            "industry_code": self.key_from.industry_code,
            "period_from": self.key_from.period,
            "period_to": self.key_to.period,
            "ratio_from": self.ratio_from,
            "ratio_to": self.ratio_to,
            "label_from": self.label_from.value,
            "label_to": self.label_to.value,
            "flipped": self.flipped,
        }


@dataclass(frozen=True)
class TransitionReport:
    family: str
    alpha: float
    transitions: tuple[Transition, ...]
    skipped: int  # industries absent or unclassifiable in either period of a pair

    @property
    def flips(self) -> tuple[Transition, ...]:
        return tuple(t for t in self.transitions if t.flipped)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "alpha": self.alpha,
            "skipped": self.skipped,
            "transitions": [t.to_dict() for t in self.transitions],
        }


def _validate_alphas(alphas: Sequence[float]) -> tuple[float, ...]:
    if not alphas:
        raise ValueError("alphas must be nonempty")
    for a in alphas:
        if not 0 < a < 1:
            raise ValueError(f"alpha {a} out of range (0, 1)")
    for lo, hi in zip(alphas, alphas[1:]):
        if lo >= hi:
            raise ValueError(f"alphas must be strictly increasing, got {lo} before {hi}")
    return tuple(alphas)


def _labels_of(report: SharesReport) -> dict[FlowKey, Differentiation]:
    return {d.key: d.label for d in report.details if d.label is not None}


def alpha_sweep(
    group: IndustryGroup,
    alphas: Sequence[float],
    family: str,
    type_method: TradeTypeMethod,
) -> SweepResult:
    """Recompute the share table at each alpha and collect label flips.

    Along increasing alpha the horizontal band only widens, so every flip
    moves toward Horizontal; a reverse move would indicate a bug upstream.
    """
    alphas = _validate_alphas(alphas)
    reports = tuple(
        decompose_shares(group, DifferentiationMethod(family, a), type_method)
        for a in alphas
    )

    flips: list[FlipPoint] = []
    for (a_lo, r_lo), (a_hi, r_hi) in zip(
        zip(alphas, reports), zip(alphas[1:], reports[1:])
    ):
        lo_labels = _labels_of(r_lo)
        hi_labels = _labels_of(r_hi)
        for key, before in lo_labels.items():
            after = hi_labels.get(key)
            if after is not None and after is not before:
                flips.append(FlipPoint(key, a_hi, before, after))
    return SweepResult(alphas, reports, tuple(flips))


def nature_transitions(
    panel: Iterable[IndustryGroup],
    alpha: float,
    family: str,
    type_method: TradeTypeMethod,
    period_key: Callable[[str], object] | None = None,
) -> TransitionReport:
    """Track label changes of each industry across consecutive periods.

    `panel` holds one group per period for the same reporter/partner pair.
    Periods are ordered lexicographically by label unless `period_key`
    supplies another sort key. Industries absent or unclassifiable in either
    period of a pair are skipped and counted.
    """
    groups = list(panel)
    by_period: dict[str, IndustryGroup] = {}
    for group in groups:
        period = group.snapshot[0]
        if period in by_period:
            raise ValueError(f"duplicate period {period!r} in panel")
        by_period[period] = group
    if len(by_period) < 2:
        raise ValueError(f"panel needs at least 2 periods, got {len(by_period)}")

    periods = sorted(by_period, key=period_key or (lambda p: p))
    method = DifferentiationMethod(family, alpha)

    transitions: list[Transition] = []
    skipped = 0
    for p_from, p_to in zip(periods, periods[1:]):
        report_from = decompose_shares(by_period[p_from], method, type_method)
        report_to = decompose_shares(by_period[p_to], method, type_method)
        # Match on (reporter, partner, industry_code); period differs by design.
        from_map = {d.key[1:]: d for d in report_from.details}
        to_map = {d.key[1:]: d for d in report_to.details}
        for ident in sorted(from_map.keys() | to_map.keys()):
            d_from = from_map.get(ident)
            d_to = to_map.get(ident)
            if (
                d_from is None
                or d_to is None
                or d_from.label is None
                or d_to.label is None
            ):
                skipped += 1
                continue
            transitions.append(
                Transition(
                    d_from.key, d_to.key, d_from.ratio, d_to.ratio,
                    d_from.label, d_to.label,
                )
            )
    return TransitionReport(family, alpha, tuple(transitions), skipped)


def sweep_flips_to_csv(sweeps: list[tuple[str, SweepResult]]) -> str:
    """Flip table CSV: one row per (industry, alpha boundary)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ("group_id", "period", "reporter", "partner", "industry_code",
         "alpha", "label_before", "label_after")
    )
    for group_id, sweep in sweeps:
        for f in sweep.flip_points:
            writer.writerow(
                (group_id, f.key.period, f.key.reporter, f.key.partner,
                 f.key.industry_code, f.alpha, f.label_before.value, f.label_after.value)
            )
    return buf.getvalue()


def transitions_to_csv(reports: list[tuple[str, TransitionReport]]) -> str:
    """Transition table CSV: one row per (industry, period boundary)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ("group_id", "reporter", "partner", "industry_code", "period_from",
         "period_to", "ratio_from", "ratio_to", "label_from", "label_to", "flipped")
    )
    for group_id, report in reports:
        for t in report.transitions:
            row = t.to_dict()
            writer.writerow(
                (group_id, row["reporter"], row["partner"], row["industry_code"],
                 row["period_from"], row["period_to"], row["ratio_from"],
                 row["ratio_to"], row["label_from"], row["label_to"], row["flipped"])
            )
    return buf.getvalue()
