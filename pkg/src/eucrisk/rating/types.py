"""Value types for the complexity / materiality / control rating model.

Grades and impact are small integer scales, the band is an ordered
traffic-light rating, and the control questionnaire is a fixed set of
thirteen yes/no answers (eleven controls plus two personal-data flags).
Everything here is immutable and serializes to flat snake_case JSON.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import asdict, dataclass, fields
from enum import IntEnum, unique
from typing import Any

from eucrisk.dates import parse_date


@unique
class ComplexityGrade(IntEnum):
    """1 = logging/tracking only, 2 = simple formulas, 3 = links, macros or modelling."""

    LOW = 1
    MEDIUM = 2
    HIGH = 3


@unique
class MaterialityGrade(IntEnum):
    """1 = internal operations, 2 = management reporting, 3 = financial/regulatory/confidential."""

    LOW = 1
    MEDIUM = 2
    HIGH = 3


@unique
class ImpactCategory(IntEnum):
    """Consequence scale should the application fail, mildest first."""

    INCONVENIENT = 1
    POOR_CUSTOMER_OUTCOMES = 2
    REPUTATIONAL = 3
    LOSS_OF_BUSINESS = 4
    FINANCIAL = 5
    STATUTORY_LEGISLATIVE = 6

    @property
    def label(self) -> str:
        if self is ImpactCategory.STATUTORY_LEGISLATIVE:
            return "Statutory / Legislative"
        return self.name.replace("_", " ").title()


@unique
class RatingBand(IntEnum):
    """Action band ordered by urgency: Blue (none) through Red (fix within a month)."""

    BLUE = 0
    GREEN = 1
    AMBER = 2
    RED = 3

    @property
    def label(self) -> str:
        return self.name.capitalize()

    @classmethod
    def from_label(cls, label: str) -> RatingBand:
        try:
            return cls[label.upper()]
        except KeyError:
            raise ValueError(f"unknown band {label!r}") from None


# The eleven control questions, in questionnaire order. The two data flags
# that follow are collected alongside them but are not controls and never
# enter the deficiency fraction.
CONTROL_FIELDS: tuple[str, ...] = (
    "location_known",
    "operating_instructions",
    "backup_in_place",
    "recovery_tested",
    "version_controlled",
    "review_current",
    "testing_evidenced",
    "access_restricted",
    "integrity_protected",
    "second_person_can_fix",
    "technical_docs_exist",
)
DATA_FIELDS: tuple[str, ...] = (
    "holds_personal_data",
    "holds_sensitive_personal_data",
)


@dataclass(frozen=True)
class ControlAnswers:
    """One completed control questionnaire. True means the control is in place."""

    location_known: bool
    operating_instructions: bool
    backup_in_place: bool
    recovery_tested: bool
    version_controlled: bool
    review_current: bool
    testing_evidenced: bool
    access_restricted: bool
    integrity_protected: bool
    second_person_can_fix: bool
    technical_docs_exist: bool
    holds_personal_data: bool
    holds_sensitive_personal_data: bool

    def failed_controls(self) -> list[str]:
        """Names of the control questions answered no, in questionnaire order."""
        return [name for name in CONTROL_FIELDS if not getattr(self, name)]

    @classmethod
    def all_in_place(cls, *, holds_personal_data: bool = False,
                     holds_sensitive_personal_data: bool = False) -> ControlAnswers:
        return cls(*([True] * len(CONTROL_FIELDS)),
                   holds_personal_data, holds_sensitive_personal_data)

    def to_dict(self) -> dict[str, bool]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ControlAnswers:
        known = {f.name for f in fields(cls)}
        missing = known - data.keys()
        if missing:
            raise ValueError(f"control answers missing: {', '.join(sorted(missing))}")
        extra = data.keys() - known
        if extra:
            raise ValueError(f"unknown control fields: {', '.join(sorted(extra))}")
        return cls(**{k: bool(v) for k, v in data.items()})


@dataclass(frozen=True)
class AssessmentInput:
    """Everything the scorer needs about one application on one date."""

    complexity: ComplexityGrade
    materiality: MaterialityGrade
    impact: ImpactCategory
    controls: ControlAnswers
    assessed_on: dt.date

    def to_dict(self) -> dict[str, Any]:
        return {
            "complexity": int(self.complexity),
            "materiality": int(self.materiality),
            "impact": int(self.impact),
            "controls": self.controls.to_dict(),
            "assessed_on": self.assessed_on.isoformat(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> AssessmentInput:
        try:
            return cls(
                complexity=ComplexityGrade(int(data["complexity"])),
                materiality=MaterialityGrade(int(data["materiality"])),
                impact=ImpactCategory(int(data["impact"])),
                controls=ControlAnswers.from_dict(data["controls"]),
                assessed_on=parse_date(data["assessed_on"]),
            )
        except KeyError as exc:
            raise ValueError(f"assessment input missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class AssessmentResult:
    """Scored outcome: deficiency, cube depth, numeric score, band and follow-ups."""

    deficiency: float
    control_depth: int
    risk_score: int
    band: RatingBand
    dlc_required: bool
    escalated_for_data: bool
    clamped_by_impact: bool
    reasons: tuple[str, ...]
    next_review: dt.date

    def to_dict(self) -> dict[str, Any]:
        return {
            "deficiency": self.deficiency,
            "control_depth": self.control_depth,
            "risk_score": self.risk_score,
            "band": self.band.label,
            "dlc_required": self.dlc_required,
            "escalated_for_data": self.escalated_for_data,
            "clamped_by_impact": self.clamped_by_impact,
            "reasons": list(self.reasons),
            "next_review": self.next_review.isoformat(),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> AssessmentResult:
        try:
            return cls(
                deficiency=float(data["deficiency"]),
                control_depth=int(data["control_depth"]),
                risk_score=int(data["risk_score"]),
                band=RatingBand.from_label(data["band"]),
                dlc_required=bool(data["dlc_required"]),
                escalated_for_data=bool(data["escalated_for_data"]),
                clamped_by_impact=bool(data["clamped_by_impact"]),
                reasons=tuple(data["reasons"]),
                next_review=parse_date(data["next_review"]),
            )
        except KeyError as exc:
            raise ValueError(f"assessment result missing field {exc.args[0]!r}") from None
