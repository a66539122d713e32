"""Complexity indicators extracted from a workbook model, and their grading.

The fourteen indicators cover structure (sheets, hidden rows/columns/sheets,
size), formulas (counts, errors, arrays, IF nesting), wiring (external
links, pivot parts, defined names, VBA) and concealment (password
protection, invisible cells where the explicit font and fill colors match).
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Any

from eucrisk.rating.types import ComplexityGrade
from eucrisk.scanner.formulas import external_ref_indices, scan_ifs
from eucrisk.scanner.model import SheetVisibility, ValueKind, WorkbookModel

# IF nesting at or beyond this depth marks a workbook High complexity.
HIGH_NESTING_DEPTH = 3

CONTROLS_FRAMEWORK_TABS = ("Control", "Validation", "Documentation")


@dataclass(frozen=True)
class WorkbookMetrics:
    """The complexity indicator counts for one workbook.

    Every count is None when the workbook could not be opened (encrypted
    packages report only password protection).
    """

    sheet_count: int | None
    formulas_with_errors: int | None
    array_formulas: int | None
    nested_if_count: int | None
    max_nested_if_level: int | None
    external_links: int | None
    pivot_tables: int | None
    named_items: int | None
    hidden_rows: int | None
    hidden_columns: int | None
    hidden_sheets: int | None
    very_hidden_sheets: int | None
    password_protected: bool
    workbook_size_bytes: int | None
    invisible_cells: int | None
    formula_count: int | None
    vba_present: bool | None

    @property
    def available(self) -> bool:
        return self.sheet_count is not None

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> WorkbookMetrics:
        return cls(**{f.name: data[f.name] for f in fields(cls)})


def unavailable_metrics() -> WorkbookMetrics:
    """Metrics for an encrypted workbook: protected, everything else unknown."""
    values: dict[str, Any] = {f.name: None for f in fields(WorkbookMetrics)}
    values["password_protected"] = True
    return WorkbookMetrics(**values)


def extract_metrics(model: WorkbookModel) -> WorkbookMetrics:
    """Count every indicator over a parsed model. Deterministic and total."""
    formula_count = 0
    formulas_with_errors = 0
    array_formulas = 0
    nested_if_count = 0
    max_nesting = 0
    invisible = 0
    formula_externals: set[int] = set()

    style_count = len(model.styles)
    for _, cell in model.iter_cells():
        if cell.style_id is not None and cell.style_id < style_count:
            style = model.styles[cell.style_id]
            if style.font_rgb is not None and style.font_rgb == style.fill_rgb:
                invisible += 1
        if cell.is_array:
            array_formulas += 1
        if cell.formula is None:
            continue
        formula_count += 1
        if cell.kind is ValueKind.ERROR:
            formulas_with_errors += 1
        scan = scan_ifs(cell.formula)
        nested_if_count += scan.if_calls
        max_nesting = max(max_nesting, scan.max_depth)
        formula_externals |= external_ref_indices(cell.formula)

    hidden = sum(1 for s in model.sheets if s.visibility is SheetVisibility.HIDDEN)
    very_hidden = sum(1 for s in model.sheets if s.visibility is SheetVisibility.VERY_HIDDEN)
    sheet_protected = any(s.protected for s in model.sheets)

    return WorkbookMetrics(
        sheet_count=len(model.sheets),
        formulas_with_errors=formulas_with_errors,
        array_formulas=array_formulas,
        nested_if_count=nested_if_count,
        max_nested_if_level=max_nesting,
        external_links=len(model.external_link_indices | formula_externals),
        pivot_tables=model.pivot_part_count,
        named_items=len(model.defined_names),
        hidden_rows=sum(s.hidden_row_count for s in model.sheets),
        hidden_columns=sum(s.hidden_column_count for s in model.sheets),
        hidden_sheets=hidden,
        very_hidden_sheets=very_hidden,
        password_protected=model.workbook_protection or sheet_protected,
        workbook_size_bytes=model.file_size,
        invisible_cells=invisible,
        formula_count=formula_count,
        vba_present=model.vba_present,
    )


def grade_complexity(metrics: WorkbookMetrics) -> ComplexityGrade:
    """Grade 3 on any high trigger (VBA, external links, arrays, pivots,
    deep IF nesting), 2 when any formula exists, else 1."""
    if not metrics.available:
        raise ValueError("cannot grade unavailable metrics (encrypted workbook)")
    if (
        metrics.vba_present
        or metrics.external_links > 0
        or metrics.array_formulas > 0
        or metrics.pivot_tables > 0
        or metrics.max_nested_if_level >= HIGH_NESTING_DEPTH
    ):
        return ComplexityGrade.HIGH
    if metrics.formula_count > 0:
        return ComplexityGrade.MEDIUM
    return ComplexityGrade.LOW


@dataclass(frozen=True)
class ControlsFrameworkCheck:
    """Whether the Control / Validation / Documentation tab set is present."""

    present: bool
    missing: tuple[str, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"present": self.present, "missing": list(self.missing)}


def detect_controls_framework(model: WorkbookModel) -> ControlsFrameworkCheck:
    """Check for the three framework tabs, ignoring case and edge whitespace."""
    have = {s.name.strip().casefold() for s in model.sheets}
    missing = tuple(t for t in CONTROLS_FRAMEWORK_TABS if t.casefold() not in have)
    return ControlsFrameworkCheck(present=not missing, missing=missing)
