"""Verdict texts returned with departmental triage results.

These strings are part of the external contract and are reproduced
character for character; do not reflow or "fix" them.
"""

from __future__ import annotations

from eucrisk.rating.types import RatingBand

TRIAGE_MESSAGES: dict[RatingBand, str] = {
    RatingBand.GREEN: (
        "You are Green. Please return this spreadsheet to Data Governance - no "
        "further action needed, however you are accountable for the results which "
        "you have returned. Any incidents as a direct result of spreadsheet errors "
        "that impact on a material process will need to be reported to Data "
        "Governance urgently."
    ),
    RatingBand.AMBER: (
        "You are Amber. Action is needed. Return this spreadsheet to Data "
        "Governance. Your spreadsheets and applications need to be assessed, "
        "errant ones recorded on Magique and there needs to be an action plan to "
        "fix."
    ),
    RatingBand.RED: (
        "You are Red. Urgent action is needed. Return this spreadsheet to Data "
        "Governance. Your spreadsheets and applications need to be assessed, "
        "errant ones recorded on Magique and there needs to be an urgent action "
        "plan to fix."
    ),
}
