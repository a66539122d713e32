"""Text renderings of the governance payloads: markdown, CSV, JSON.

Rendering is pure: the same payload always yields the same bytes. Markdown
tables always carry a header row. CSV output follows RFC 4180 (CRLF line
ends, quoting only where needed); the KPI snapshot renders to CSV in long
section/key/value form with zero-valued rows omitted, so an empty store
produces just the header.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from eucrisk.inventory.csvio import CSV_COLUMNS, _record_row
from eucrisk.inventory.records import EucaRecord
from eucrisk.rating.types import ImpactCategory
from eucrisk.reporting.kpi import BAND_ORDER, ConcentrationReport, KpiSnapshot
from eucrisk.scanner.diff import BaselineDiff
from eucrisk.scanner.metrics import WorkbookMetrics

FORMATS = ("markdown", "csv", "json")

_IMPACT_HEADERS = [ImpactCategory(i).label for i in range(1, 7)]

_RECORD_HEADERS = ["ID", "Name", "Department", "Band", "Score", "Next review", "Lifecycle"]
_OVERDUE_HEADERS = ["ID", "Name", "Department", "Next review", "Days overdue"]
_DIFF_HEADERS = ["Sheet", "Address", "Kind", "Severity", "Before", "After"]


class UnsupportedFormat(ValueError):
    """The requested output format is not one of markdown, csv, json."""


def _md_escape(value: Any) -> str:
    return str("" if value is None else value).replace("|", "\\|")


def _md_table(headers: list[str], rows: list[list[Any]]) -> str:
    lines = [
        "| " + " | ".join(headers) + " |",
        "| " + " | ".join("---" for _ in headers) + " |",
    ]
    lines.extend("| " + " | ".join(_md_escape(v) for v in row) + " |" for row in rows)
    return "\n".join(lines)


def _csv_text(rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerows(rows)
    return buffer.getvalue()


def _json_text(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _record_summary_row(record: EucaRecord) -> list[str]:
    latest = record.latest_assessment
    return [
        record.id, record.name, record.department,
        latest.result.band.label if latest else "",
        str(latest.result.risk_score) if latest else "",
        record.next_review.isoformat() if record.next_review else "",
        record.lifecycle_status.value,
    ]


def _snapshot_markdown(snapshot: KpiSnapshot) -> str:
    counts = _md_table(["Band", "Count"],
                       [[band.label, snapshot.band_counts[band.label]]
                        for band in BAND_ORDER])
    matrix = _md_table(["Band", *_IMPACT_HEADERS],
                       [[band.label, *snapshot.band_impact_matrix[band.label]]
                        for band in BAND_ORDER])
    departments = _md_table(["Department", "Count"],
                            [[name, count] for name, count
                             in snapshot.department_histogram.items()])
    return "\n\n".join([
        f"## KPI snapshot as of {snapshot.as_of.isoformat()}",
        counts, matrix, departments,
        f"Total assessed: {snapshot.total_assessed}  ",
        f"Overdue reviews: {snapshot.overdue_count}  ",
        f"Unregistered Amber/Red: {snapshot.unregistered_amber_red_count}",
    ]) + "\n"


def _snapshot_csv(snapshot: KpiSnapshot) -> str:
    rows: list[list[Any]] = [["section", "key", "value"]]
    for band in BAND_ORDER:
        count = snapshot.band_counts[band.label]
        if count:
            rows.append(["band_counts", band.label, count])
    for band in BAND_ORDER:
        for impact_index, count in enumerate(snapshot.band_impact_matrix[band.label], 1):
            if count:
                rows.append(["band_impact_matrix",
                             f"{band.label}/{ImpactCategory(impact_index).label}", count])
    for name, count in snapshot.department_histogram.items():
        if count:
            rows.append(["department_histogram", name, count])
    for key in ("total_assessed", "overdue_count", "unregistered_amber_red_count"):
        value = getattr(snapshot, key)
        if value:
            rows.append(["totals", key, value])
    return _csv_text(rows)


def _metrics_rows(metrics: WorkbookMetrics) -> list[list[Any]]:
    return [[key, "" if value is None else value]
            for key, value in metrics.to_dict().items()]


def _diff_rows(diff: BaselineDiff) -> list[list[Any]]:
    return [[e.sheet, e.address or "", e.kind.value,
             "high" if e.high_severity else "", e.before or "", e.after or ""]
            for e in diff.entries]


def render_report(payload: Any, fmt: str = "markdown") -> str:
    """Render one payload (snapshot, metrics, diff, concentration, record
    lists, overdue lists) in the requested format."""
    if fmt not in FORMATS:
        raise UnsupportedFormat(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")

    if isinstance(payload, KpiSnapshot):
        if fmt == "json":
            return _json_text(payload.to_dict())
        if fmt == "csv":
            return _snapshot_csv(payload)
        return _snapshot_markdown(payload)

    if isinstance(payload, ConcentrationReport):
        if fmt == "json":
            return _json_text(payload.to_dict())
        rows = [[name, count] for name, count in payload.ranked]
        if fmt == "csv":
            return _csv_text([["department", "count"], *rows])
        table = _md_table(["Department", "Count"], rows)
        share = f"Top {payload.top_k} share: {payload.top_k_share:.2%}"
        return f"{table}\n\n{share}\n"

    if isinstance(payload, WorkbookMetrics):
        if fmt == "json":
            return _json_text(payload.to_dict())
        if fmt == "csv":
            return _csv_text([["indicator", "value"], *_metrics_rows(payload)])
        return _md_table(["Indicator", "Value"], _metrics_rows(payload)) + "\n"

    if isinstance(payload, BaselineDiff):
        if fmt == "json":
            return _json_text(payload.to_dict())
        if fmt == "csv":
            return _csv_text([[h.lower() for h in _DIFF_HEADERS], *_diff_rows(payload)])
        return _md_table(_DIFF_HEADERS, _diff_rows(payload)) + "\n"

    if isinstance(payload, list):
        if payload and isinstance(payload[0], tuple):  # (record, days_overdue)
            if fmt == "json":
                return _json_text([{**r.to_dict(), "days_overdue": days}
                                   for r, days in payload])
            rows = [[r.id, r.name, r.department,
                     r.next_review.isoformat() if r.next_review else "", days]
                    for r, days in payload]
            if fmt == "csv":
                return _csv_text([[h.lower().replace(" ", "_") for h in _OVERDUE_HEADERS],
                                  *rows])
            return _md_table(_OVERDUE_HEADERS, rows) + "\n"
        # list of records: empty lists render with the record headers
        records = payload
        if fmt == "json":
            return _json_text([r.to_dict() for r in records])
        if fmt == "csv":
            return _csv_text([CSV_COLUMNS, *[_record_row(r) for r in records]])
        return _md_table(_RECORD_HEADERS, [_record_summary_row(r) for r in records]) + "\n"

    raise TypeError(f"no renderer for payload of type {type(payload).__name__}")
