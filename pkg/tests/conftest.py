from __future__ import annotations

import pytest

from iitkit.trade_data import FlowKey, IndustryFlow, IndustryGroup


def make_flow(
    export_value: float,
    import_value: float,
    export_volume: float | None = None,
    import_volume: float | None = None,
    code: str = "000001",
    period: str = "2020",
    reporter: str = "FRA",
    partner: str = "DEU",
    unit: str | None = None,
) -> IndustryFlow:
    if unit is None and (export_volume is not None or import_volume is not None):
        unit = "unit"
    return IndustryFlow(
        FlowKey(period, reporter, partner, code),
        export_value,
        import_value,
        export_volume,
        import_volume,
        unit,
    )


def make_group(flows, group_id: str = "G") -> IndustryGroup:
    return IndustryGroup(group_id, tuple(flows))


@pytest.fixture
def worked_example_group() -> IndustryGroup:
    """Two industries whose unit-value ratios are 1.16 and 1/1.16."""
    return make_group(
        [
            make_flow(116.0, 100.0, 100.0, 100.0, code="000001"),
            make_flow(100.0, 116.0, 100.0, 100.0, code="000002"),
        ]
    )
