"""The inventory store: one JSON document, one writer, atomic replace-on-write.

All mutations funnel through :class:`InventoryStore` methods, which keep the
document internally consistent (referential integrity, recomputed
assessments, scale checks) and refresh the record timestamps. Reads can work
on the immutable records directly.
"""

from __future__ import annotations

import datetime as dt
import json
import os
import tempfile
import uuid
from dataclasses import replace
from pathlib import Path
from typing import Callable, Iterable

from eucrisk.dates import add_years
from eucrisk.inventory.records import (
    Assessment,
    EucaRecord,
    Lifecycle,
    RiskRegisterEntry,
    RiskStatus,
    StoreDocument,
)
from eucrisk.rating.engine import assess
from eucrisk.rating.types import AssessmentInput, AssessmentResult, RatingBand


class InventoryError(Exception):
    """Base for inventory domain errors."""


class MissingField(InventoryError):
    pass


class UnknownId(InventoryError):
    pass


class InconsistentResult(InventoryError):
    pass


class RetiredRecord(InventoryError):
    pass


class ScaleViolation(InventoryError):
    pass


class ResidualExceedsInherent(InventoryError):
    pass


class UnknownRisk(InventoryError):
    pass


class AlreadyClosed(InventoryError):
    pass


class DateOrder(InventoryError):
    pass


REQUIRED_RECORD_FIELDS = ("name", "department", "manager")


def _utc_now() -> dt.datetime:
    return dt.datetime.now(dt.timezone.utc).replace(microsecond=0)


def _mint(prefix: str, taken: set[str]) -> str:
    while True:
        token = f"{prefix}-{uuid.uuid4().hex[:8]}"
        if token not in taken:
            return token


class InventoryStore:
    """Wraps a :class:`StoreDocument` with the governance operations."""

    def __init__(self, document: StoreDocument | None = None,
                 path: str | Path | None = None,
                 clock: Callable[[], dt.datetime] | None = None):
        self.document = document if document is not None else StoreDocument()
        self.path = Path(path) if path else None
        self._clock = clock or _utc_now

    # -- persistence --------------------------------------------------------

    @classmethod
    def load(cls, path: str | Path, clock=None) -> InventoryStore:
        """Read an existing store file; validates integrity on the way in."""
        path = Path(path)
        with path.open("r", encoding="utf-8") as handle:
            document = StoreDocument.from_dict(json.load(handle))
        document.validate()
        return cls(document, path, clock)

    @classmethod
    def open(cls, path: str | Path, clock=None) -> InventoryStore:
        """Load the store at ``path``, or start an empty one bound to it."""
        path = Path(path)
        if path.exists():
            return cls.load(path, clock)
        return cls(StoreDocument(), path, clock)

    def to_json(self) -> str:
        return json.dumps(self.document.to_dict(), indent=2) + "\n"

    def save(self) -> None:
        """Write the document atomically: temp file in place, then rename."""
        if self.path is None:
            raise ValueError("store has no backing path")
        payload = self.to_json().encode("utf-8")
        directory = self.path.parent
        directory.mkdir(parents=True, exist_ok=True)
        fd, temp_name = tempfile.mkstemp(dir=directory, prefix=".store-", suffix=".json")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(payload)
            os.replace(temp_name, self.path)
        except BaseException:
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise

    # -- record operations --------------------------------------------------

    def _get_record(self, euca_id: str) -> EucaRecord:
        for record in self.document.records:
            if record.id == euca_id:
                return record
        raise UnknownId(f"no record with id {euca_id!r}")

    def _swap_record(self, updated: EucaRecord) -> EucaRecord:
        for index, record in enumerate(self.document.records):
            if record.id == updated.id:
                self.document.records[index] = updated
                return updated
        raise UnknownId(f"no record with id {updated.id!r}")

    def upsert_euca(self, record: EucaRecord) -> EucaRecord:
        """Insert a new record (empty id) or update the metadata of an existing one.

        Governance state (assessments, next review, risk links, lifecycle)
        is never replaced through upsert; the dedicated operations own it.
        """
        for field_name in REQUIRED_RECORD_FIELDS:
            if not getattr(record, field_name).strip():
                raise MissingField(f"record field {field_name!r} must not be empty")
        now = self._clock()
        if not record.id:
            minted = replace(
                record,
                id=_mint("euca", {r.id for r in self.document.records}),
                assessments=(), next_review=None, risk_ids=(),
                created_at=now, updated_at=now,
            )
            self.document.records.append(minted)
            return minted
        existing = self._get_record(record.id)
        updated = replace(
            record,
            created_at=existing.created_at,
            updated_at=now,
            assessments=existing.assessments,
            next_review=existing.next_review,
            risk_ids=existing.risk_ids,
            lifecycle_status=existing.lifecycle_status,
            lifecycle_reason=existing.lifecycle_reason,
        )
        return self._swap_record(updated)

    def record_assessment(self, euca_id: str, inp: AssessmentInput,
                          result: AssessmentResult) -> EucaRecord:
        """Attach a completed assessment after recomputing it for consistency."""
        record = self._get_record(euca_id)
        recomputed = assess(inp)
        if recomputed != result:
            raise InconsistentResult(
                "stored result does not match recomputation "
                f"(band {result.band.label} vs {recomputed.band.label}, "
                f"score {result.risk_score} vs {recomputed.risk_score})")
        now = self._clock()
        entry = Assessment(input=inp, result=result, recorded_at=now)
        updated = replace(
            record,
            assessments=record.assessments + (entry,),
            next_review=result.next_review,
            updated_at=now,
        )
        return self._swap_record(updated)

    def confirm_review(self, euca_id: str, confirmed_on: dt.date) -> EucaRecord:
        """Annual confirmation: steps the next review date forward a year."""
        record = self._get_record(euca_id)
        if not record.is_live:
            raise RetiredRecord(f"record {euca_id} is retired")
        updated = replace(record, next_review=add_years(confirmed_on, 1),
                          updated_at=self._clock())
        return self._swap_record(updated)

    def set_lifecycle(self, euca_id: str, status: Lifecycle, reason: str = "") -> EucaRecord:
        """Retire or revive a record; reviving needs a stated reason."""
        record = self._get_record(euca_id)
        if status is Lifecycle.LIVE and not record.is_live and not reason.strip():
            raise MissingField("reviving a retired record requires a reason")
        updated = replace(record, lifecycle_status=status, lifecycle_reason=reason,
                          updated_at=self._clock())
        return self._swap_record(updated)

    # -- risk register ------------------------------------------------------

    def _get_entry(self, risk_id: str) -> RiskRegisterEntry:
        for entry in self.document.register:
            if entry.risk_id == risk_id:
                return entry
        raise UnknownRisk(f"no register entry with id {risk_id!r}")

    def link_risk(self, euca_id: str, entry: RiskRegisterEntry) -> RiskRegisterEntry:
        """Open a register entry against a record; scales are 1-5 each way."""
        record = self._get_record(euca_id)
        for scale_name in ("inherent_likelihood", "inherent_severity",
                           "residual_likelihood", "residual_severity"):
            value = getattr(entry, scale_name)
            if not 1 <= value <= 5:
                raise ScaleViolation(f"{scale_name} must be within 1-5, got {value}")
        if entry.residual_score > entry.inherent_score:
            raise ResidualExceedsInherent(
                f"residual {entry.residual_score} exceeds inherent {entry.inherent_score}")
        minted = replace(
            entry,
            risk_id=_mint("risk", {e.risk_id for e in self.document.register}),
            euca_id=euca_id, status=RiskStatus.OPEN, closed=None,
        )
        self.document.register.append(minted)
        self._swap_record(replace(record, risk_ids=record.risk_ids + (minted.risk_id,),
                                  updated_at=self._clock()))
        return minted

    def close_risk(self, risk_id: str, closed_on: dt.date) -> RiskRegisterEntry:
        entry = self._get_entry(risk_id)
        if entry.status is RiskStatus.CLOSED:
            raise AlreadyClosed(f"register entry {risk_id} is already closed")
        if closed_on < entry.opened:
            raise DateOrder(
                f"close date {closed_on} precedes opening date {entry.opened}")
        updated = replace(entry, closed=closed_on, status=RiskStatus.CLOSED)
        for index, existing in enumerate(self.document.register):
            if existing.risk_id == risk_id:
                self.document.register[index] = updated
                break
        return updated

    def open_entries_for(self, record: EucaRecord) -> list[RiskRegisterEntry]:
        index = self.document.register_index()
        return [index[r] for r in record.risk_ids
                if r in index and index[r].status is RiskStatus.OPEN]

    # -- queries ------------------------------------------------------------

    def list_eucas(self, department: str | None = None,
                   band: RatingBand | None = None,
                   lifecycle: Lifecycle | None = None,
                   due_before: dt.date | None = None) -> list[EucaRecord]:
        """Records matching every given predicate, ordered by department, name."""

        def keep(record: EucaRecord) -> bool:
            if department is not None and record.department != department:
                return False
            if band is not None and record.band is not band:
                return False
            if lifecycle is not None and record.lifecycle_status is not lifecycle:
                return False
            if due_before is not None and (
                    record.next_review is None or record.next_review >= due_before):
                return False
            return True

        matches = [r for r in self.document.records if keep(r)]
        matches.sort(key=lambda r: (r.department, r.name, r.id))
        return matches

    def records_in_scope(self, include_retired: bool = False) -> Iterable[EucaRecord]:
        for record in self.document.records:
            if include_retired or record.is_live:
                yield record
