"""Aggregate governance views over a store snapshot.

All functions here are pure reads. Retired records stay out of every
aggregate unless explicitly included; unassessed records appear in the
department histogram (they exist) but not in band counts (nothing to band).
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Any

from eucrisk.inventory.records import EucaRecord
from eucrisk.inventory.store import InventoryStore
from eucrisk.rating.types import ImpactCategory, RatingBand

BAND_ORDER = (RatingBand.BLUE, RatingBand.GREEN, RatingBand.AMBER, RatingBand.RED)


class EmptyStore(Exception):
    """The aggregate needs at least one in-scope record."""


@dataclass(frozen=True)
class KpiSnapshot:
    """Dated aggregate: band counts, the band x impact table, departments."""

    as_of: dt.date
    band_counts: dict[str, int]
    band_impact_matrix: dict[str, list[int]]
    department_histogram: dict[str, int]
    total_assessed: int
    overdue_count: int
    unregistered_amber_red_count: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "as_of": self.as_of.isoformat(),
            "band_counts": dict(self.band_counts),
            "band_impact_matrix": {k: list(v) for k, v in self.band_impact_matrix.items()},
            "department_histogram": dict(self.department_histogram),
            "total_assessed": self.total_assessed,
            "overdue_count": self.overdue_count,
            "unregistered_amber_red_count": self.unregistered_amber_red_count,
        }


def band_impact_matrix(store: InventoryStore,
                       include_retired: bool = False) -> dict[str, list[int]]:
    """Counts per (band, impact) cell over assessed in-scope records."""
    matrix = {band.label: [0] * len(ImpactCategory) for band in BAND_ORDER}
    for record in store.records_in_scope(include_retired):
        latest = record.latest_assessment
        if latest is None:
            continue
        matrix[latest.result.band.label][int(latest.input.impact) - 1] += 1
    return matrix


def overdue_reviews(store: InventoryStore,
                    as_of: dt.date) -> list[tuple[EucaRecord, int]]:
    """Live records whose next review lies strictly before ``as_of``.

    Most overdue first; a record due today is not overdue.
    """
    listed = [
        (record, (as_of - record.next_review).days)
        for record in store.records_in_scope()
        if record.next_review is not None and record.next_review < as_of
    ]
    listed.sort(key=lambda pair: (-pair[1], pair[0].department, pair[0].name, pair[0].id))
    return listed


def unregistered_amber_red(store: InventoryStore) -> list[EucaRecord]:
    """Live Amber/Red records with no open risk-register entry."""
    flagged = [
        record for record in store.records_in_scope()
        if record.band in (RatingBand.AMBER, RatingBand.RED)
        and not store.open_entries_for(record)
    ]
    flagged.sort(key=lambda r: (r.department, r.name, r.id))
    return flagged


def kpi_snapshot(store: InventoryStore, as_of: dt.date,
                 include_retired: bool = False) -> KpiSnapshot:
    """One dated aggregate over the store, deterministic for a given store."""
    matrix = band_impact_matrix(store, include_retired)
    band_counts = {label: sum(cells) for label, cells in matrix.items()}

    histogram: dict[str, int] = {}
    for record in store.records_in_scope(include_retired):
        histogram[record.department] = histogram.get(record.department, 0) + 1

    return KpiSnapshot(
        as_of=as_of,
        band_counts=band_counts,
        band_impact_matrix=matrix,
        department_histogram=dict(sorted(histogram.items())),
        total_assessed=sum(band_counts.values()),
        overdue_count=len(overdue_reviews(store, as_of)),
        unregistered_amber_red_count=len(unregistered_amber_red(store)),
    )


@dataclass(frozen=True)
class ConcentrationReport:
    """Departments ranked by application count and the share the top k hold."""

    ranked: tuple[tuple[str, int], ...]
    top_k: int
    top_k_share: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "departments": [{"department": d, "count": c} for d, c in self.ranked],
            "top_k": self.top_k,
            "top_k_share": self.top_k_share,
        }


def department_concentration(store: InventoryStore, top_k: int,
                             include_retired: bool = False) -> ConcentrationReport:
    """How concentrated the estate is: share of records in the k largest departments."""
    if top_k < 1:
        raise ValueError(f"top_k must be at least 1, got {top_k}")
    counts: dict[str, int] = {}
    for record in store.records_in_scope(include_retired):
        counts[record.department] = counts.get(record.department, 0) + 1
    if not counts:
        raise EmptyStore("no records in scope")
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    total = sum(counts.values())
    share = sum(count for _, count in ranked[:top_k]) / total
    return ConcentrationReport(ranked=tuple(ranked), top_k=top_k, top_k_share=share)
