"""Inventory record types and their JSON forms.

An EUCA record carries the people, location and lifecycle metadata for one
application plus its assessment history (append-only; the latest entry is
the scoring view) and links into the risk register. The whole store is one
JSON document.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field, fields
from enum import Enum, unique
from typing import Any

from eucrisk.dates import parse_date
from eucrisk.rating.types import AssessmentInput, AssessmentResult, RatingBand

SCHEMA_VERSION = 1


@unique
class Lifecycle(Enum):
    LIVE = "live"
    RETIRED = "retired"


@unique
class Disposition(Enum):
    MITIGATE = "mitigate"
    REMOVE = "remove"
    ACCEPT = "accept"
    NONE = "none"


@unique
class RiskStatus(Enum):
    OPEN = "open"
    CLOSED = "closed"


def _date_out(day: dt.date | None) -> str | None:
    return day.isoformat() if day else None


def _date_in(raw: str | None) -> dt.date | None:
    return parse_date(raw) if raw else None


@dataclass(frozen=True)
class Assessment:
    """One completed scoring of a record: what was answered and what came out."""

    input: AssessmentInput
    result: AssessmentResult
    recorded_at: dt.datetime

    def to_dict(self) -> dict[str, Any]:
        return {
            "input": self.input.to_dict(),
            "result": self.result.to_dict(),
            "recorded_at": self.recorded_at.isoformat(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Assessment:
        return cls(
            input=AssessmentInput.from_dict(data["input"]),
            result=AssessmentResult.from_dict(data["result"]),
            recorded_at=dt.datetime.fromisoformat(data["recorded_at"]),
        )


@dataclass(frozen=True)
class EucaRecord:
    id: str = ""
    group_division: str = ""
    department: str = ""
    team: str = ""
    manager: str = ""
    sme: str = ""
    data_steward: str = ""
    data_owner: str = ""
    tester: str = ""
    name: str = ""
    description: str = ""
    version: str = ""
    last_release_date: dt.date | None = None
    last_changed_date: dt.date | None = None
    processes: tuple[str, ...] = ()
    app_type: str = ""
    file_location: str = ""
    lifecycle_status: Lifecycle = Lifecycle.LIVE
    decision_making: bool = False
    key_data_items: tuple[str, ...] = ()
    assessments: tuple[Assessment, ...] = ()
    next_review: dt.date | None = None
    risk_ids: tuple[str, ...] = ()
    disposition: Disposition = Disposition.NONE
    lifecycle_reason: str = ""
    created_at: dt.datetime | None = None
    updated_at: dt.datetime | None = None

    @property
    def latest_assessment(self) -> Assessment | None:
        return self.assessments[-1] if self.assessments else None

    @property
    def band(self) -> RatingBand | None:
        latest = self.latest_assessment
        return latest.result.band if latest else None

    @property
    def is_live(self) -> bool:
        return self.lifecycle_status is Lifecycle.LIVE

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "group_division": self.group_division,
            "department": self.department,
            "team": self.team,
            "manager": self.manager,
            "sme": self.sme,
            "data_steward": self.data_steward,
            "data_owner": self.data_owner,
            "tester": self.tester,
            "name": self.name,
            "description": self.description,
            "version": self.version,
            "last_release_date": _date_out(self.last_release_date),
            "last_changed_date": _date_out(self.last_changed_date),
            "processes": list(self.processes),
            "app_type": self.app_type,
            "file_location": self.file_location,
            "lifecycle_status": self.lifecycle_status.value,
            "decision_making": self.decision_making,
            "key_data_items": list(self.key_data_items),
            "assessments": [a.to_dict() for a in self.assessments],
            "next_review": _date_out(self.next_review),
            "risk_ids": list(self.risk_ids),
            "disposition": self.disposition.value,
            "lifecycle_reason": self.lifecycle_reason,
            "created_at": self.created_at.isoformat() if self.created_at else None,
            "updated_at": self.updated_at.isoformat() if self.updated_at else None,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> EucaRecord:
        known = {f.name for f in fields(cls)}
        extra = data.keys() - known
        if extra:
            raise ValueError(f"unknown record fields: {', '.join(sorted(extra))}")
        raw = dict(data)
        converted: dict[str, Any] = {}
        for key in ("last_release_date", "last_changed_date", "next_review"):
            if key in raw:
                converted[key] = _date_in(raw.pop(key))
        for key in ("created_at", "updated_at"):
            if key in raw:
                value = raw.pop(key)
                converted[key] = dt.datetime.fromisoformat(value) if value else None
        if "lifecycle_status" in raw:
            converted["lifecycle_status"] = Lifecycle(raw.pop("lifecycle_status"))
        if "disposition" in raw:
            converted["disposition"] = Disposition(raw.pop("disposition"))
        for key in ("processes", "key_data_items", "risk_ids"):
            if key in raw:
                converted[key] = tuple(raw.pop(key))
        if "assessments" in raw:
            converted["assessments"] = tuple(
                Assessment.from_dict(a) for a in raw.pop("assessments"))
        if "decision_making" in raw:
            converted["decision_making"] = bool(raw.pop("decision_making"))
        converted.update({k: str(v) for k, v in raw.items()})
        return cls(**converted)


@dataclass(frozen=True)
class RiskRegisterEntry:
    risk_id: str
    euca_id: str
    description: str
    inherent_likelihood: int
    inherent_severity: int
    residual_likelihood: int
    residual_severity: int
    opened: dt.date
    closed: dt.date | None = None
    status: RiskStatus = RiskStatus.OPEN

    @property
    def inherent_score(self) -> int:
        return self.inherent_likelihood * self.inherent_severity

    @property
    def residual_score(self) -> int:
        return self.residual_likelihood * self.residual_severity

    def to_dict(self) -> dict[str, Any]:
        return {
            "risk_id": self.risk_id,
            "euca_id": self.euca_id,
            "description": self.description,
            "inherent_likelihood": self.inherent_likelihood,
            "inherent_severity": self.inherent_severity,
            "residual_likelihood": self.residual_likelihood,
            "residual_severity": self.residual_severity,
            "opened": self.opened.isoformat(),
            "closed": _date_out(self.closed),
            "status": self.status.value,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RiskRegisterEntry:
        return cls(
            risk_id=data["risk_id"],
            euca_id=data["euca_id"],
            description=data.get("description", ""),
            inherent_likelihood=int(data["inherent_likelihood"]),
            inherent_severity=int(data["inherent_severity"]),
            residual_likelihood=int(data["residual_likelihood"]),
            residual_severity=int(data["residual_severity"]),
            opened=parse_date(data["opened"]),
            closed=_date_in(data.get("closed")),
            status=RiskStatus(data.get("status", "open")),
        )


class IntegrityError(ValueError):
    """A stored document breaks referential integrity."""


@dataclass
class StoreDocument:
    schema_version: int = SCHEMA_VERSION
    records: list[EucaRecord] = field(default_factory=list)
    register: list[RiskRegisterEntry] = field(default_factory=list)

    def record_index(self) -> dict[str, EucaRecord]:
        return {r.id: r for r in self.records}

    def register_index(self) -> dict[str, RiskRegisterEntry]:
        return {e.risk_id: e for e in self.register}

    def validate(self) -> None:
        record_ids = {r.id: None for r in self.records}
        if len(record_ids) != len(self.records):
            raise IntegrityError("duplicate record ids")
        entry_ids = {e.risk_id: None for e in self.register}
        if len(entry_ids) != len(self.register):
            raise IntegrityError("duplicate register ids")
        for record in self.records:
            for risk_id in record.risk_ids:
                if risk_id not in entry_ids:
                    raise IntegrityError(
                        f"record {record.id} references unknown risk {risk_id}")
        for entry in self.register:
            if entry.euca_id not in record_ids:
                raise IntegrityError(
                    f"register entry {entry.risk_id} references unknown record {entry.euca_id}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "records": [r.to_dict() for r in self.records],
            "register": [e.to_dict() for e in self.register],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> StoreDocument:
        return cls(
            schema_version=int(data.get("schema_version", SCHEMA_VERSION)),
            records=[EucaRecord.from_dict(r) for r in data.get("records", [])],
            register=[RiskRegisterEntry.from_dict(e) for e in data.get("register", [])],
        )
