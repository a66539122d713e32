"""Workbook scanning: parse, indicators, grading, framework tabs, diff."""

from eucrisk.scanner.diff import BaselineDiff, ChangeKind, DiffEntry, diff_against_baseline
from eucrisk.scanner.formulas import UnbalancedFormula, nested_if_depth
from eucrisk.scanner.metrics import (
    CONTROLS_FRAMEWORK_TABS,
    ControlsFrameworkCheck,
    WorkbookMetrics,
    detect_controls_framework,
    extract_metrics,
    grade_complexity,
    unavailable_metrics,
)
from eucrisk.scanner.model import (
    Cell,
    EncryptedWorkbook,
    MalformedPart,
    NotAWorkbook,
    ScanError,
    SheetModel,
    SheetVisibility,
    StyleEntry,
    ValueKind,
    WorkbookModel,
)
from eucrisk.scanner.xlsx import parse_workbook

__all__ = [
    "BaselineDiff",
    "Cell",
    "ChangeKind",
    "CONTROLS_FRAMEWORK_TABS",
    "ControlsFrameworkCheck",
    "DiffEntry",
    "EncryptedWorkbook",
    "MalformedPart",
    "NotAWorkbook",
    "ScanError",
    "SheetModel",
    "SheetVisibility",
    "StyleEntry",
    "UnbalancedFormula",
    "ValueKind",
    "WorkbookMetrics",
    "WorkbookModel",
    "detect_controls_framework",
    "diff_against_baseline",
    "extract_metrics",
    "grade_complexity",
    "nested_if_depth",
    "parse_workbook",
    "unavailable_metrics",
]
