"""Scoring rules for single assessments.

The numeric rating is the product of complexity, materiality and the cube
depth derived from the control questionnaire. The band follows fixed score
thresholds, is escalated one step when sensitive personal data sits behind
broken access or integrity controls, and is finally clamped by the impact
category: an "inconvenient" failure can never rate above Green, and only
loss-of-business, financial or statutory impacts can rate Red.
"""

from __future__ import annotations

from dataclasses import replace

from eucrisk.dates import add_years
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

CONTROL_COUNT = len(CONTROL_FIELDS)

# Band thresholds over the 1..27 score range.
BLUE_MAX = 2
GREEN_MAX = 6
AMBER_MAX = 12

# Highest band allowed per impact category; impacts 4-6 are unclamped.
IMPACT_CAPS = {
    ImpactCategory.INCONVENIENT: RatingBand.GREEN,
    ImpactCategory.POOR_CUSTOMER_OUTCOMES: RatingBand.AMBER,
    ImpactCategory.REPUTATIONAL: RatingBand.AMBER,
}

# Development life cycle becomes mandatory at this combined grade.
DLC_THRESHOLD = 5


class UnknownField(ValueError):
    """A what-if toggle named a field that is not on the questionnaire."""


def control_depth(controls: ControlAnswers) -> tuple[float, int]:
    """Deficiency fraction and cube depth for one questionnaire.

    The deficiency is the fraction of the eleven controls answered no.
    Depth 1 covers deficiencies below one third, depth 2 below two thirds,
    depth 3 the rest. The comparisons are done in integer arithmetic so the
    third boundaries are exact.
    """
    failures = len(controls.failed_controls())
    if failures * 3 < CONTROL_COUNT:
        depth = 1
    elif failures * 3 < 2 * CONTROL_COUNT:
        depth = 2
    else:
        depth = 3
    return failures / CONTROL_COUNT, depth


def risk_score(complexity: ComplexityGrade, materiality: MaterialityGrade, depth: int) -> int:
    """Numeric rating: the product of the two grades and the cube depth."""
    if depth not in (1, 2, 3):
        raise ValueError(f"cube depth must be 1, 2 or 3, got {depth}")
    return int(complexity) * int(materiality) * depth


def base_band(score: int) -> RatingBand:
    """Band from score thresholds alone, before escalation and clamping."""
    if score <= BLUE_MAX:
        return RatingBand.BLUE
    if score <= GREEN_MAX:
        return RatingBand.GREEN
    if score <= AMBER_MAX:
        return RatingBand.AMBER
    return RatingBand.RED


def band_rules(score: int, impact: ImpactCategory,
               controls: ControlAnswers) -> tuple[RatingBand, bool, bool]:
    """Apply thresholds, the sensitive-data escalation, then the impact clamp.

    Returns (band, escalated_for_data, clamped_by_impact); each flag is set
    only when the corresponding rule actually moved the band.
    """
    if not 1 <= score <= 27:
        raise ValueError(f"score out of range: {score}")
    band = base_band(score)

    escalated = False
    data_at_risk = controls.holds_sensitive_personal_data and (
        not controls.access_restricted or not controls.integrity_protected
    )
    if data_at_risk and band < RatingBand.RED:
        band = RatingBand(band + 1)
        escalated = True

    clamped = False
    cap = IMPACT_CAPS.get(impact, RatingBand.RED)
    if band > cap:
        band = cap
        clamped = True

    return band, escalated, clamped


def assess(inp: AssessmentInput) -> AssessmentResult:
    """Score one completed questionnaire."""
    deficiency, depth = control_depth(inp.controls)
    score = risk_score(inp.complexity, inp.materiality, depth)
    band, escalated, clamped = band_rules(score, inp.impact, inp.controls)
    return AssessmentResult(
        deficiency=deficiency,
        control_depth=depth,
        risk_score=score,
        band=band,
        dlc_required=int(inp.complexity) + int(inp.materiality) >= DLC_THRESHOLD,
        escalated_for_data=escalated,
        clamped_by_impact=clamped,
        reasons=tuple(inp.controls.failed_controls()),
        next_review=add_years(inp.assessed_on, 1),
    )


def toggle_controls(inp: AssessmentInput, toggles: list[str]) -> AssessmentInput:
    """Copy of the input with each named questionnaire answer flipped.

    A name appearing twice flips twice, so repeating a toggle undoes it.
    """
    valid = set(CONTROL_FIELDS) | set(DATA_FIELDS)
    answers = inp.controls.to_dict()
    for name in toggles:
        if name not in valid:
            raise UnknownField(f"unknown control field {name!r}")
        answers[name] = not answers[name]
    return replace(inp, controls=ControlAnswers.from_dict(answers))


def what_if(inp: AssessmentInput, toggles: list[str]) -> AssessmentResult:
    """Re-score with the named answers flipped; the input itself is untouched."""
    return assess(toggle_controls(inp, toggles))
