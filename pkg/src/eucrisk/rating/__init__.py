"""Complexity x materiality x control rating model."""

from eucrisk.rating.engine import (
    UnknownField,
    assess,
    band_rules,
    base_band,
    control_depth,
    risk_score,
    toggle_controls,
    what_if,
)
from eucrisk.rating.messages import TRIAGE_MESSAGES
from eucrisk.rating.triage import OutOfRange, TriageResult, TriageSubmission, triage
from eucrisk.rating.types import (
    CONTROL_FIELDS,
    DATA_FIELDS,
    AssessmentInput,
    AssessmentResult,
    ComplexityGrade,
    ControlAnswers,
    ImpactCategory,
    MaterialityGrade,
    RatingBand,
)

__all__ = [
    "AssessmentInput",
    "AssessmentResult",
    "ComplexityGrade",
    "ControlAnswers",
    "CONTROL_FIELDS",
    "DATA_FIELDS",
    "ImpactCategory",
    "MaterialityGrade",
    "OutOfRange",
    "RatingBand",
    "TRIAGE_MESSAGES",
    "TriageResult",
    "TriageSubmission",
    "UnknownField",
    "assess",
    "band_rules",
    "base_band",
    "control_depth",
    "risk_score",
    "toggle_controls",
    "triage",
    "what_if",
]
