"""Cell-level comparison of a working workbook against its locked baseline.

Formula text is compared first, then cached values. Replacing a formula
with a hard constant is the classic silent corruption (a paste over the
wrong range), so those entries are flagged high severity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum, unique
from typing import Any

from eucrisk.scanner.model import Cell, SheetModel, WorkbookModel


@unique
class ChangeKind(Enum):
    SHEET_ADDED = "SHEET_ADDED"
    SHEET_REMOVED = "SHEET_REMOVED"
    FORMULA_CHANGED = "FORMULA_CHANGED"
    FORMULA_REPLACED_BY_CONSTANT = "FORMULA_REPLACED_BY_CONSTANT"
    CONSTANT_REPLACED_BY_FORMULA = "CONSTANT_REPLACED_BY_FORMULA"
    VALUE_CHANGED = "VALUE_CHANGED"
    CELL_ADDED = "CELL_ADDED"
    CELL_REMOVED = "CELL_REMOVED"


@dataclass(frozen=True)
class DiffEntry:
    sheet: str
    address: str | None
    kind: ChangeKind
    before: str | None
    after: str | None

    @property
    def high_severity(self) -> bool:
        return self.kind is ChangeKind.FORMULA_REPLACED_BY_CONSTANT

    def to_dict(self) -> dict[str, Any]:
        return {
            "sheet": self.sheet,
            "address": self.address,
            "kind": self.kind.value,
            "before": self.before,
            "after": self.after,
        }


@dataclass(frozen=True)
class BaselineDiff:
    entries: tuple[DiffEntry, ...]

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def high_severity_entries(self) -> tuple[DiffEntry, ...]:
        return tuple(e for e in self.entries if e.high_severity)

    def to_dict(self) -> dict[str, Any]:
        return {"entries": [e.to_dict() for e in self.entries]}


_ADDRESS = re.compile(r"^([A-Za-z]+)(\d+)$")


def _address_key(address: str | None) -> tuple[int, int, str]:
    """Sort key in reading order: rows then columns, sheet entries first."""
    if address is None:
        return (-1, -1, "")
    match = _ADDRESS.match(address)
    if not match:
        return (1 << 30, 1 << 30, address)
    col = 0
    for ch in match.group(1).upper():
        col = col * 26 + (ord(ch) - ord("A") + 1)
    return (int(match.group(2)), col, "")


def _display(cell: Cell) -> str | None:
    return cell.formula if cell.formula is not None else cell.value


def _occupied(sheet: SheetModel) -> dict[str, Cell]:
    return {a: c for a, c in sheet.cells.items() if c.occupied}


def _diff_sheet(name: str, baseline: SheetModel, current: SheetModel) -> list[DiffEntry]:
    before_cells = _occupied(baseline)
    after_cells = _occupied(current)
    entries: list[DiffEntry] = []
    for address in before_cells.keys() | after_cells.keys():
        b = before_cells.get(address)
        a = after_cells.get(address)
        if b is None:
            entries.append(DiffEntry(name, address, ChangeKind.CELL_ADDED, None, _display(a)))
            continue
        if a is None:
            entries.append(DiffEntry(name, address, ChangeKind.CELL_REMOVED, _display(b), None))
            continue
        if b.formula is not None and a.formula is None:
            entries.append(DiffEntry(name, address, ChangeKind.FORMULA_REPLACED_BY_CONSTANT,
                                     b.formula, a.value))
        elif b.formula is None and a.formula is not None:
            entries.append(DiffEntry(name, address, ChangeKind.CONSTANT_REPLACED_BY_FORMULA,
                                     b.value, a.formula))
        elif b.formula != a.formula:
            entries.append(DiffEntry(name, address, ChangeKind.FORMULA_CHANGED,
                                     b.formula, a.formula))
        elif b.value != a.value:
            entries.append(DiffEntry(name, address, ChangeKind.VALUE_CHANGED,
                                     b.value, a.value))
    return entries


def diff_against_baseline(baseline: WorkbookModel, current: WorkbookModel) -> BaselineDiff:
    """Compare two parsed workbooks; empty result means cell-for-cell identical."""
    base_sheets = {s.name: s for s in baseline.sheets}
    curr_sheets = {s.name: s for s in current.sheets}

    entries: list[DiffEntry] = []
    for name in base_sheets.keys() | curr_sheets.keys():
        if name not in curr_sheets:
            entries.append(DiffEntry(name, None, ChangeKind.SHEET_REMOVED, None, None))
        elif name not in base_sheets:
            entries.append(DiffEntry(name, None, ChangeKind.SHEET_ADDED, None, None))
        else:
            entries.extend(_diff_sheet(name, base_sheets[name], curr_sheets[name]))

    entries.sort(key=lambda e: (e.sheet, _address_key(e.address)))
    return BaselineDiff(entries=tuple(entries))
