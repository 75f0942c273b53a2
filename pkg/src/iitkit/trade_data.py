"""Parse, validate, merge, and group raw bilateral trade records.

Input tables are UTF-8 comma-separated files with the mandatory header

    period,reporter,partner,industry_code,export_value,import_value,export_qty,import_qty,qty_unit

Empty quantity/unit cells mean "not reported". Records sharing a
(period, reporter, partner, industry_code) key are merged by summation;
industries with zero trade on both sides are dropped at ingestion so that
every downstream ratio has a positive denominator.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import IO, Iterable, NamedTuple

EXPECTED_HEADER = (
    "period",
    "reporter",
    "partner",
    "industry_code",
    "export_value",
    "import_value",
    "export_qty",
    "import_qty",
    "qty_unit",
)

GROUP_POLICIES = ("own-code", "strict", "drop")


class FlowParseError(ValueError):
    """A malformed input row; carries the 1-based row number and a reason."""

    def __init__(self, row_number: int, reason: str):
        super().__init__(f"row {row_number}: {reason}")
        self.row_number = row_number
        self.reason = reason


class UnitConflictError(ValueError):
    """Two records for the same key report volumes in different units."""

    def __init__(self, key: "FlowKey", units: tuple[str, str]):
        super().__init__(
            f"conflicting volume units {units[0]!r} vs {units[1]!r} for key {tuple(key)}"
        )
        self.key = key
        self.units = units


class UnmappedCodeError(ValueError):
    """Industry codes missing from the grouping map under the strict policy."""

    def __init__(self, codes: list[str]):
        super().__init__(f"unmapped industry codes under strict policy: {', '.join(codes)}")
        self.codes = codes


class FlowKey(NamedTuple):
    period: str
    reporter: str
    partner: str
    industry_code: str


@dataclass(frozen=True, slots=True)
class FlowRecord:
    """One raw parsed row of trade data."""

    period: str
    reporter: str
    partner: str
    industry_code: str
    export_value: float
    import_value: float
    export_volume: float | None = None
    import_volume: float | None = None
    volume_unit: str | None = None

    @property
    def key(self) -> FlowKey:
        return FlowKey(self.period, self.reporter, self.partner, self.industry_code)


@dataclass(frozen=True, slots=True)
class IndustryFlow:
    """Paired export/import observation for one industry x period x partner."""

    key: FlowKey
    export_value: float
    import_value: float
    export_volume: float | None = None
    import_volume: float | None = None
    volume_unit: str | None = None

    @property
    def total_trade(self) -> float:
        return self.export_value + self.import_value

    @property
    def minority(self) -> float:
        return min(self.export_value, self.import_value)

    @property
    def majority(self) -> float:
        return max(self.export_value, self.import_value)


@dataclass(frozen=True)
class IndustryGroup:
    """A nonempty set of industries observed in one (period, reporter, partner) snapshot."""

    group_id: str
    members: tuple[IndustryFlow, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError(f"group {self.group_id!r} has no members")
        snapshots = {m.key[:3] for m in self.members}
        if len(snapshots) > 1:
            raise ValueError(
                f"group {self.group_id!r} mixes snapshots: {sorted(snapshots)}"
            )

    @property
    def snapshot(self) -> tuple[str, str, str]:
        """(period, reporter, partner) shared by every member."""
        return self.members[0].key[:3]

    @property
    def total_trade(self) -> float:
        return sum(m.total_trade for m in self.members)


@dataclass(frozen=True)
class CleanResult:
    """Output of pair_and_clean: merged flows plus the zero-trade drop tally."""

    flows: tuple[IndustryFlow, ...]
    dropped_zero_trade: int


def _parse_value(cell: str, column: str, row_number: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise FlowParseError(row_number, f"{column} {cell!r} is not a number") from None
    if value != value:  # NaN
        raise FlowParseError(row_number, f"{column} is NaN")
    if value < 0:
        raise FlowParseError(row_number, f"{column} is negative ({cell})")
    return value


def _parse_optional_value(cell: str, column: str, row_number: int) -> float | None:
    if cell == "":
        return None
    return _parse_value(cell, column, row_number)


def parse_flow_records(
    source: IO[bytes] | IO[str] | Iterable[str], delimiter: str = ","
) -> list[FlowRecord]:
    """Parse a delimited trade table into FlowRecords, one per data row.

    `source` is a binary or text stream (binary is decoded as UTF-8). Raises
    FlowParseError with the offending 1-based row number on any malformed row.
    """
    if hasattr(source, "read") and isinstance(source.read(0), bytes):
        source = io.TextIOWrapper(source, encoding="utf-8", newline="")

    reader = csv.reader(source, delimiter=delimiter)
    try:
        header = next(reader)
    except StopIteration:
        raise FlowParseError(1, "empty input, header row missing") from None
    if tuple(h.strip() for h in header) != EXPECTED_HEADER:
        raise FlowParseError(
            1, f"bad header {header!r}, expected {','.join(EXPECTED_HEADER)}"
        )

    records: list[FlowRecord] = []
    append = records.append
    for row_number, row in enumerate(reader, start=2):
        if not row:
            continue  # tolerate a trailing blank line
        if len(row) != 9:
            raise FlowParseError(row_number, f"expected 9 fields, got {len(row)}")
        period, reporter, partner, code, xv, mv, xq, mq, unit = row
        try:
            # Fast path; the except branch re-parses field by field so the
            # error names the offending column.
            export_value = float(xv)
            import_value = float(mv)
            export_volume = float(xq) if xq else None
            import_volume = float(mq) if mq else None
            bad = (
                export_value < 0
                or import_value < 0
                or (export_volume is not None and export_volume < 0)
                or (import_volume is not None and import_volume < 0)
                or export_value != export_value
                or import_value != import_value
                or export_volume != export_volume
                or import_volume != import_volume
            )
        except ValueError:
            bad = True
        if bad:
            _parse_value(xv, "export_value", row_number)
            _parse_value(mv, "import_value", row_number)
            _parse_optional_value(xq, "export_qty", row_number)
            _parse_optional_value(mq, "import_qty", row_number)
            raise FlowParseError(row_number, f"unparseable row {row!r}")
        if not period or not reporter or not partner or not code:
            raise FlowParseError(row_number, "empty key field")
        volume_unit = unit if unit != "" else None
        if volume_unit is None and (export_volume is not None or import_volume is not None):
            raise FlowParseError(row_number, "quantity present without qty_unit")
        append(
            FlowRecord(
                period,
                reporter,
                partner,
                code,
                export_value,
                import_value,
                export_volume,
                import_volume,
                volume_unit,
            )
        )
    return records


def pair_and_clean(records: Iterable[FlowRecord | IndustryFlow]) -> CleanResult:
    """Merge records sharing a key by summation and drop zero-trade industries.

    Values always sum; volumes sum only while every contributing record agrees
    on the unit (UnitConflictError otherwise). Idempotent: feeding the output
    back in reproduces it.
    """
    # key -> [X, M, x, m, unit]
    acc: dict[FlowKey, list] = {}
    for rec in records:
        key = rec.key if isinstance(rec.key, FlowKey) else FlowKey(*rec.key)
        slot = acc.get(key)
        if slot is None:
            acc[key] = [
                rec.export_value,
                rec.import_value,
                rec.export_volume,
                rec.import_volume,
                rec.volume_unit,
            ]
            continue
        slot[0] += rec.export_value
        slot[1] += rec.import_value
        if rec.volume_unit is not None and slot[4] is not None and rec.volume_unit != slot[4]:
            raise UnitConflictError(key, (slot[4], rec.volume_unit))
        if slot[4] is None:
            slot[4] = rec.volume_unit
        if rec.export_volume is not None:
            slot[2] = rec.export_volume if slot[2] is None else slot[2] + rec.export_volume
        if rec.import_volume is not None:
            slot[3] = rec.import_volume if slot[3] is None else slot[3] + rec.import_volume

    flows: list[IndustryFlow] = []
    dropped = 0
    for key, (xv, mv, xq, mq, unit) in acc.items():
        if xv == 0 and mv == 0:
            dropped += 1
            continue
        flows.append(IndustryFlow(key, xv, mv, xq, mq, unit))
    return CleanResult(tuple(flows), dropped)


def apply_grouping(
    flows: Iterable[IndustryFlow],
    mapping: dict[str, str] | None = None,
    policy: str = "own-code",
) -> list[IndustryGroup]:
    """Partition flows into IndustryGroups within each (period, reporter, partner).

    Codes absent from `mapping` fall back per `policy`: "own-code" makes each
    unmapped industry its own group, "drop" removes it, "strict" raises
    UnmappedCodeError listing every offending code.
    """
    if policy not in GROUP_POLICIES:
        raise ValueError(f"unknown grouping policy {policy!r}, expected one of {GROUP_POLICIES}")
    mapping = mapping or {}

    flows = list(flows)
    if policy == "strict":
        missing = sorted({f.key.industry_code for f in flows} - mapping.keys())
        if missing:
            raise UnmappedCodeError(missing)

    buckets: dict[tuple[str, str, str, str], list[IndustryFlow]] = {}
    for flow in flows:
        code = flow.key.industry_code
        group_id = mapping.get(code)
        if group_id is None:
            if policy == "drop":
                continue
            group_id = code  # own-code fallback
        buckets.setdefault((*flow.key[:3], group_id), []).append(flow)

    return [
        IndustryGroup(group_id, tuple(members))
        for (_, _, _, group_id), members in sorted(buckets.items())
    ]


def read_grouping_map(source: IO[str] | Iterable[str]) -> dict[str, str]:
    """Read a two-column industry_code,group_id CSV (with header) into a dict."""
    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise FlowParseError(1, "empty grouping file") from None
    if [h.strip() for h in header] != ["industry_code", "group_id"]:
        raise FlowParseError(1, f"bad grouping header {header!r}")
    mapping: dict[str, str] = {}
    for row_number, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != 2 or not row[0] or not row[1]:
            raise FlowParseError(row_number, f"bad grouping row {row!r}")
        mapping[row[0]] = row[1]
    return mapping
