"""CSV exchange for circulating the inventory to department heads.

The export is a flat view: one row per record, metadata plus the latest
assessment's headline numbers. Import upserts by id; the derived assessment
columns are validated but never written back (assessment history only
changes through real assessments). Export then import therefore round-trips
a store unchanged.
"""

from __future__ import annotations

import csv
from dataclasses import replace
from pathlib import Path

from eucrisk.dates import parse_date
from eucrisk.inventory.records import Disposition, EucaRecord, Lifecycle
from eucrisk.inventory.store import (
    REQUIRED_RECORD_FIELDS,
    InventoryError,
    InventoryStore,
    _mint,
)
from eucrisk.rating.types import RatingBand

CSV_COLUMNS = [
    "id", "name", "department", "team", "manager", "sme", "data_owner",
    "app_type", "file_location", "lifecycle_status", "complexity",
    "materiality", "impact", "band", "risk_score", "dlc_required",
    "next_review", "risk_ids", "disposition",
]

_METADATA_COLUMNS = ("name", "department", "team", "manager", "sme",
                     "data_owner", "app_type", "file_location")


class SchemaMismatch(InventoryError):
    """The header row does not match the fixed column schema."""


class MalformedRow(InventoryError):
    """A data row failed to parse; carries its 1-based row number."""

    def __init__(self, row: int, reason: str):
        super().__init__(f"row {row}: {reason}")
        self.row = row


def _record_row(record: EucaRecord) -> list[str]:
    latest = record.latest_assessment
    if latest is None:
        derived = ["", "", "", "", "", ""]
    else:
        derived = [
            str(int(latest.input.complexity)),
            str(int(latest.input.materiality)),
            str(int(latest.input.impact)),
            latest.result.band.label,
            str(latest.result.risk_score),
            "true" if latest.result.dlc_required else "false",
        ]
    return [
        record.id, record.name, record.department, record.team, record.manager,
        record.sme, record.data_owner, record.app_type, record.file_location,
        record.lifecycle_status.value, *derived,
        record.next_review.isoformat() if record.next_review else "",
        ";".join(record.risk_ids), record.disposition.value,
    ]


def export_csv(store: InventoryStore, path: str | Path) -> int:
    """Write one row per record in store order; returns the data row count."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        count = 0
        for record in store.document.records:
            writer.writerow(_record_row(record))
            count += 1
    return count


def _parse_row(number: int, values: dict[str, str], known_risks: set[str]):
    try:
        lifecycle = Lifecycle(values["lifecycle_status"]) if values["lifecycle_status"] \
            else Lifecycle.LIVE
    except ValueError:
        raise MalformedRow(number, f"unknown lifecycle {values['lifecycle_status']!r}") from None
    try:
        disposition = Disposition(values["disposition"]) if values["disposition"] \
            else Disposition.NONE
    except ValueError:
        raise MalformedRow(number, f"unknown disposition {values['disposition']!r}") from None
    if values["band"]:
        try:
            RatingBand.from_label(values["band"])
        except ValueError:
            raise MalformedRow(number, f"unknown band token {values['band']!r}") from None
    for column in ("complexity", "materiality", "impact", "risk_score"):
        if values[column]:
            try:
                int(values[column])
            except ValueError:
                raise MalformedRow(number, f"{column} is not an integer") from None
    if values["dlc_required"] not in ("", "true", "false"):
        raise MalformedRow(number, f"dlc_required must be true/false, got {values['dlc_required']!r}")
    if values["next_review"]:
        try:
            parse_date(values["next_review"])
        except ValueError:
            raise MalformedRow(number, "next_review is not an ISO date") from None
    risk_ids = tuple(t for t in values["risk_ids"].split(";") if t)
    unknown = [r for r in risk_ids if r not in known_risks]
    if unknown:
        raise MalformedRow(number, f"unknown risk ids: {', '.join(unknown)}")
    return lifecycle, disposition, risk_ids


def import_csv(store: InventoryStore, path: str | Path) -> int:
    """Upsert records from a CSV written by :func:`export_csv`.

    Timestamps move only on rows that actually change something, so
    importing a store's own export leaves it untouched.
    """
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch("file is empty, expected a header row") from None
        if header != CSV_COLUMNS:
            raise SchemaMismatch(
                f"header does not match schema: got {header!r}")

        index = store.document.record_index()
        known_risks = set(store.document.register_index())
        count = 0
        for number, row in enumerate(reader, start=2):
            if len(row) != len(CSV_COLUMNS):
                raise MalformedRow(number, f"expected {len(CSV_COLUMNS)} columns, got {len(row)}")
            values = dict(zip(CSV_COLUMNS, row))
            lifecycle, disposition, risk_ids = _parse_row(number, values, known_risks)

            metadata = {column: values[column] for column in _METADATA_COLUMNS}
            for field_name in REQUIRED_RECORD_FIELDS:
                if not metadata.get(field_name, "").strip():
                    raise MalformedRow(number, f"{field_name} must not be empty")

            existing = index.get(values["id"]) if values["id"] else None
            if existing is None:
                now = store._clock()
                record = EucaRecord(
                    id=values["id"] or _mint("euca", set(index)),
                    lifecycle_status=lifecycle, disposition=disposition,
                    risk_ids=risk_ids, created_at=now, updated_at=now,
                    **metadata,
                )
                store.document.records.append(record)
                index[record.id] = record
            else:
                updated = replace(existing, lifecycle_status=lifecycle,
                                  disposition=disposition, risk_ids=risk_ids,
                                  **metadata)
                if updated != existing:
                    updated = replace(updated, updated_at=store._clock())
                    store._swap_record(updated)
                    index[updated.id] = updated
            count += 1
    store.document.validate()
    return count


def exchange(store: InventoryStore, direction: str, path: str | Path,
             fmt: str = "csv") -> int:
    """Named entry point: direction is "export" or "import", format is CSV."""
    if fmt.lower() != "csv":
        raise ValueError(f"unsupported exchange format {fmt!r}")
    if direction == "export":
        return export_csv(store, path)
    if direction == "import":
        return import_csv(store, path)
    raise ValueError(f"direction must be export or import, got {direction!r}")
