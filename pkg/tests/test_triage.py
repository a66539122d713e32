import pytest

from eucrisk.rating import (
    OutOfRange,
    RatingBand,
    TriageSubmission,
    base_band,
    triage,
)
from eucrisk.rating.messages import TRIAGE_MESSAGES

# Frozen copies of the three verdict texts; the product strings must never drift.
GREEN_TEXT = (
    "You are Green. Please return this spreadsheet to Data Governance - no further "
    "action needed, however you are accountable for the results which you have "
    "returned. Any incidents as a direct result of spreadsheet errors that impact "
    "on a material process will need to be reported to Data Governance urgently."
)
AMBER_TEXT = (
    "You are Amber. Action is needed. Return this spreadsheet to Data Governance. "
    "Your spreadsheets and applications need to be assessed, errant ones recorded "
    "on Magique and there needs to be an action plan to fix."
)
RED_TEXT = (
    "You are Red. Urgent action is needed. Return this spreadsheet to Data "
    "Governance. Your spreadsheets and applications need to be assessed, errant "
    "ones recorded on Magique and there needs to be an urgent action plan to fix."
)


def submission(has_euc=1, materiality=1, complexity=1, confidences=(3, 3, 3, 3, 3),
               gdpr=0, department="Claims", process="Monthly recs") -> TriageSubmission:
    fix, staff, recovery, version, misuse = confidences
    return TriageSubmission(
        department=department, has_euc=has_euc, process=process,
        materiality=materiality, complexity=complexity,
        fix_knowledge=fix, staffing_resilience=staff, recovery=recovery,
        version_control=version, misuse_protection=misuse, gdpr=gdpr,
    )


def test_message_texts_are_frozen():
    assert TRIAGE_MESSAGES[RatingBand.GREEN] == GREEN_TEXT
    assert TRIAGE_MESSAGES[RatingBand.AMBER] == AMBER_TEXT
    assert TRIAGE_MESSAGES[RatingBand.RED] == RED_TEXT


def test_no_euc_goes_straight_to_green():
    result = triage(submission(has_euc=0, materiality=3, complexity=3,
                               confidences=(1, 1, 1, 1, 1)))
    assert result.band is RatingBand.GREEN
    assert result.message == GREEN_TEXT


def test_worst_case_with_gdpr_is_red():
    result = triage(submission(materiality=3, complexity=3,
                               confidences=(1.0,) * 5, gdpr=1))
    assert result.band is RatingBand.RED
    assert result.message == RED_TEXT


def test_mid_confidence_amber():
    # mean 2.0 sits in the middle depth band: 3 * 2 * 2 = 12, Amber
    result = triage(submission(materiality=2, complexity=3, confidences=(2.0,) * 5))
    assert result.band is RatingBand.AMBER
    assert result.message == AMBER_TEXT


@pytest.mark.parametrize("confidences,expected_band", [
    ((2.5, 2.5, 2.5, 2.5, 2.5), RatingBand.GREEN),   # mean 2.50 -> depth 1 -> 6
    ((1.75, 1.75, 1.75, 1.75, 1.75), RatingBand.AMBER),  # mean 1.75 -> depth 2 -> 12
    ((1.8, 1.7, 1.7, 1.7, 1.7), RatingBand.RED),     # mean 1.72 -> depth 3 -> 18
])
def test_depth_boundaries_discriminate_bands(confidences, expected_band):
    result = triage(submission(materiality=2, complexity=3, confidences=confidences))
    assert result.band is expected_band


def test_gdpr_with_one_weak_confidence_escalates_one_step():
    confidences = (3, 3, 3, 3, 1.5)  # mean 2.7 -> depth 1; 2*2*1 = 4 Green
    calm = triage(submission(materiality=2, complexity=2, confidences=confidences))
    assert calm.band is RatingBand.GREEN
    flagged = triage(submission(materiality=2, complexity=2,
                                confidences=confidences, gdpr=1))
    assert flagged.band is RatingBand.AMBER


def test_gdpr_without_weak_confidence_does_not_escalate():
    confidences = (2.0, 2.0, 3.0, 3.0, 2.0)  # all >= 2
    result = triage(submission(materiality=2, complexity=2,
                               confidences=confidences, gdpr=1))
    assert result.band is triage(submission(materiality=2, complexity=2,
                                            confidences=confidences)).band


def test_gdpr_escalation_tops_out_at_red():
    result = triage(submission(materiality=3, complexity=3,
                               confidences=(1.0,) * 5, gdpr=1))
    assert result.band is RatingBand.RED


@pytest.mark.parametrize("m", [1, 2, 3])
@pytest.mark.parametrize("c", [1, 2, 3])
def test_full_confidence_agrees_with_base_thresholds(m, c):
    # depth 1 at full confidence; triage has no Blue, so Blue folds into Green
    expected = base_band(c * m)
    if expected is RatingBand.BLUE:
        expected = RatingBand.GREEN
    assert triage(submission(materiality=m, complexity=c)).band is expected


@pytest.mark.parametrize("kwargs", [
    dict(materiality=0), dict(materiality=4), dict(complexity=5),
    dict(confidences=(0.5, 3, 3, 3, 3)), dict(confidences=(3, 3, 3, 3, 3.2)),
    dict(gdpr=2), dict(has_euc=7),
])
def test_out_of_range_inputs_rejected(kwargs):
    with pytest.raises(OutOfRange):
        triage(submission(**kwargs))


def test_no_euc_skips_grade_validation():
    # the template only asks for grades when the department has EUC applications
    bare = submission(has_euc=0, materiality=0, complexity=0, confidences=(0,) * 5)
    assert triage(bare).band is RatingBand.GREEN


def test_serialization_round_trip():
    sub = submission(materiality=2, complexity=3, confidences=(1.5, 2.5, 2, 3, 1), gdpr=1)
    assert TriageSubmission.from_dict(sub.to_dict()) == sub
    result = triage(sub)
    assert result.to_dict()["band"] == result.band.label
    assert result.to_dict()["message"] == result.message
