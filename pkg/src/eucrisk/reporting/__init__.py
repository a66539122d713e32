"""KPI aggregation and report rendering."""

from eucrisk.reporting.kpi import (
    BAND_ORDER,
    ConcentrationReport,
    EmptyStore,
    KpiSnapshot,
    band_impact_matrix,
    department_concentration,
    kpi_snapshot,
    overdue_reviews,
    unregistered_amber_red,
)
from eucrisk.reporting.render import FORMATS, UnsupportedFormat, render_report

__all__ = [
    "BAND_ORDER",
    "ConcentrationReport",
    "EmptyStore",
    "FORMATS",
    "KpiSnapshot",
    "UnsupportedFormat",
    "band_impact_matrix",
    "department_concentration",
    "kpi_snapshot",
    "overdue_reviews",
    "render_report",
    "unregistered_amber_red",
]
