"""Departmental quick-score triage.

One submission per department: the manager picks their most complex or most
material process, grades it 1-3 on each axis, and rates five confidence
questions 1 (bad) to 3 (good), decimals allowed. The mean confidence maps to
a cube depth, the same score thresholds as the full model decide the band
(there is no Blue at triage), and a GDPR answer with any weak confidence
escalates one step.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from eucrisk.rating.engine import AMBER_MAX, GREEN_MAX
from eucrisk.rating.messages import TRIAGE_MESSAGES
from eucrisk.rating.types import RatingBand

CONFIDENCE_FIELDS: tuple[str, ...] = (
    "fix_knowledge",
    "staffing_resilience",
    "recovery",
    "version_control",
    "misuse_protection",
)

# Mean-confidence boundaries for cube depth 1 / 2 / 3.
DEPTH_1_MIN = 2.5
DEPTH_2_MIN = 1.75

# A confidence below this counts as weak for the GDPR escalation.
WEAK_CONFIDENCE = 2.0


class OutOfRange(ValueError):
    """A triage grade or confidence score fell outside its allowed range."""


@dataclass(frozen=True)
class TriageSubmission:
    """One returned departmental scoring template."""

    department: str
    has_euc: int
    process: str
    materiality: int
    complexity: int
    fix_knowledge: float
    staffing_resilience: float
    recovery: float
    version_control: float
    misuse_protection: float
    gdpr: int

    def confidences(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in CONFIDENCE_FIELDS)

    def to_dict(self) -> dict[str, Any]:
        return {
            "department": self.department,
            "has_euc": self.has_euc,
            "process": self.process,
            "materiality": self.materiality,
            "complexity": self.complexity,
            **{name: getattr(self, name) for name in CONFIDENCE_FIELDS},
            "gdpr": self.gdpr,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> TriageSubmission:
        try:
            return cls(
                department=str(data["department"]),
                has_euc=int(data["has_euc"]),
                process=str(data.get("process", "")),
                materiality=int(data["materiality"]),
                complexity=int(data["complexity"]),
                gdpr=int(data["gdpr"]),
                **{name: float(data[name]) for name in CONFIDENCE_FIELDS},
            )
        except KeyError as exc:
            raise ValueError(f"triage submission missing field {exc.args[0]!r}") from None


@dataclass(frozen=True)
class TriageResult:
    """Verdict band plus the exact message the template shows for it."""

    band: RatingBand
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"band": self.band.label, "message": self.message}


def _validate(sub: TriageSubmission) -> None:
    if sub.has_euc not in (0, 1):
        raise OutOfRange(f"has_euc must be 0 or 1, got {sub.has_euc}")
    if sub.gdpr not in (0, 1):
        raise OutOfRange(f"gdpr must be 0 or 1, got {sub.gdpr}")
    if sub.has_euc == 0:
        # the template skips the grading questions entirely in this case
        return
    if sub.materiality not in (1, 2, 3):
        raise OutOfRange(f"materiality must be 1-3, got {sub.materiality}")
    if sub.complexity not in (1, 2, 3):
        raise OutOfRange(f"complexity must be 1-3, got {sub.complexity}")
    for name in CONFIDENCE_FIELDS:
        value = getattr(sub, name)
        if not 1.0 <= value <= 3.0:
            raise OutOfRange(f"{name} must be within [1.0, 3.0], got {value}")


def triage(sub: TriageSubmission) -> TriageResult:
    """Score one departmental submission.

    Departments with no EUC applications are Green by definition and skip
    the arithmetic entirely.
    """
    _validate(sub)
    if sub.has_euc == 0:
        return TriageResult(RatingBand.GREEN, TRIAGE_MESSAGES[RatingBand.GREEN])

    confidences = sub.confidences()
    mean = sum(confidences) / len(confidences)
    if mean >= DEPTH_1_MIN:
        depth = 1
    elif mean >= DEPTH_2_MIN:
        depth = 2
    else:
        depth = 3
    score = sub.complexity * sub.materiality * depth

    if score <= GREEN_MAX:
        band = RatingBand.GREEN
    elif score <= AMBER_MAX:
        band = RatingBand.AMBER
    else:
        band = RatingBand.RED

    weak = any(c < WEAK_CONFIDENCE for c in confidences)
    if sub.gdpr == 1 and weak and band < RatingBand.RED:
        band = RatingBand(band + 1)

    return TriageResult(band, TRIAGE_MESSAGES[band])
