"""Bundled example datasets.

`example_flows.csv` is a two-industry snapshot whose unit-value ratios
(1.16 and roughly 0.86) sit on opposite sides of the GHM band at alpha=0.15,
so the two rule families disagree on it out of the box. `example_panel.csv`
is a two-period panel where one industry's ratio drifts from 1.151 to 1.149,
crossing the alpha=0.15 band edge.
"""

from __future__ import annotations

from importlib.resources import files


def example_flows_path():
    """Traversable path of the bundled two-industry snapshot."""
    return files("iitkit") / "data" / "example_flows.csv"


def example_panel_path():
    """Traversable path of the bundled two-period panel."""
    return files("iitkit") / "data" / "example_panel.csv"
