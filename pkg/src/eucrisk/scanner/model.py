"""In-memory model of a parsed workbook package.

The model is deliberately flat: sheets hold cells keyed by A1 address, the
workbook holds the package-level facts the complexity indicators need
(defined names, external link parts, pivot parts, protection, VBA presence,
styles). Models are immutable after parse and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum, unique


class ScanError(Exception):
    """Base for everything the scanner can raise."""


class NotAWorkbook(ScanError):
    """The file is not a ZIP-packaged workbook."""


class EncryptedWorkbook(ScanError):
    """The file is an encrypted (compound-file) workbook; contents unreadable."""


class MalformedPart(ScanError):
    """An XML part inside the package failed to parse."""

    def __init__(self, part: str, detail: str):
        super().__init__(f"malformed part {part}: {detail}")
        self.part = part


@unique
class SheetVisibility(Enum):
    VISIBLE = "visible"
    HIDDEN = "hidden"
    VERY_HIDDEN = "very-hidden"


@unique
class ValueKind(Enum):
    NUMBER = "number"
    TEXT = "text"
    BOOL = "bool"
    ERROR = "error"
    EMPTY = "empty"


@dataclass(frozen=True)
class Cell:
    """One cell: formula text keeps its leading '=', values keep raw text."""

    address: str
    formula: str | None = None
    value: str | None = None
    kind: ValueKind = ValueKind.EMPTY
    is_array: bool = False
    style_id: int | None = None

    @property
    def occupied(self) -> bool:
        """Whether the cell carries content (a formula or a cached value)."""
        return self.formula is not None or self.kind is not ValueKind.EMPTY


@dataclass(frozen=True)
class StyleEntry:
    """Explicit font/fill colors of one cell format; None when theme-indexed."""

    font_rgb: str | None = None
    fill_rgb: str | None = None


@dataclass(frozen=True)
class SheetModel:
    name: str
    visibility: SheetVisibility = SheetVisibility.VISIBLE
    protected: bool = False
    cells: dict[str, Cell] = field(default_factory=dict)
    hidden_row_count: int = 0
    hidden_column_count: int = 0


@dataclass(frozen=True)
class WorkbookModel:
    sheets: tuple[SheetModel, ...]
    defined_names: tuple[str, ...] = ()
    pivot_part_count: int = 0
    external_link_indices: frozenset[int] = frozenset()
    vba_present: bool = False
    workbook_protection: bool = False
    file_size: int = 0
    styles: tuple[StyleEntry, ...] = ()

    def __post_init__(self) -> None:
        names = [s.name for s in self.sheets]
        if len(names) != len(set(names)):
            raise ValueError("sheet names must be unique")

    @property
    def external_link_count(self) -> int:
        return len(self.external_link_indices)

    def sheet(self, name: str) -> SheetModel:
        for s in self.sheets:
            if s.name == name:
                return s
        raise KeyError(name)

    def iter_cells(self):
        for s in self.sheets:
            for cell in s.cells.values():
                yield s, cell
