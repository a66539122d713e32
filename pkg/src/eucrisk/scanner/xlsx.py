"""Reader for .xlsx/.xlsm packages (ZIP of OpenXML parts).

Only the parts the complexity indicators need are read: workbook + rels,
worksheets, shared strings, styles, and the package listing itself for
external-link / pivot / VBA parts. The file is never written to. Encrypted
workbooks (OLE compound files) and non-ZIP files are rejected up front by
magic number.
"""

from __future__ import annotations

import re
import zipfile
from pathlib import Path
from xml.etree import ElementTree as ET

from eucrisk.scanner.model import (
    Cell,
    EncryptedWorkbook,
    MalformedPart,
    NotAWorkbook,
    SheetModel,
    SheetVisibility,
    StyleEntry,
    ValueKind,
    WorkbookModel,
)

_NS_MAIN = "http://schemas.openxmlformats.org/spreadsheetml/2006/main"
_NS_REL_ATTR = "{http://schemas.openxmlformats.org/officeDocument/2006/relationships}id"
_NS_PKG_REL = "http://schemas.openxmlformats.org/package/2006/relationships"

_CFB_MAGIC = b"\xd0\xcf\x11\xe0\xa1\xb1\x1a\xe1"
_ZIP_MAGIC = b"PK"

_PIVOT_PART = re.compile(r"^xl/pivotTables/pivotTable\d+\.xml$")
_EXTERNAL_PART = re.compile(r"^xl/externalLinks/externalLink(\d+)\.xml$")
_VBA_PART = "xl/vbaProject.bin"

_TRUTHY = {"1", "true", "on"}


def _q(tag: str) -> str:
    return f"{{{_NS_MAIN}}}{tag}"


def _parse_part(archive: zipfile.ZipFile, part: str) -> ET.Element:
    try:
        with archive.open(part) as handle:
            return ET.parse(handle).getroot()
    except ET.ParseError as exc:
        raise MalformedPart(part, str(exc)) from exc


def _workbook_rels(archive: zipfile.ZipFile, names: set[str]) -> dict[str, str]:
    part = "xl/_rels/workbook.xml.rels"
    if part not in names:
        return {}
    root = _parse_part(archive, part)
    rels: dict[str, str] = {}
    for rel in root.iter(f"{{{_NS_PKG_REL}}}Relationship"):
        rid = rel.get("Id")
        target = rel.get("Target", "")
        if not rid:
            continue
        if target.startswith("/"):
            target = target.lstrip("/")
        else:
            target = "xl/" + target
        rels[rid] = target
    return rels


def _shared_strings(archive: zipfile.ZipFile, names: set[str]) -> list[str]:
    part = "xl/sharedStrings.xml"
    if part not in names:
        return []
    root = _parse_part(archive, part)
    strings = []
    for si in root.iter(_q("si")):
        strings.append("".join(t.text or "" for t in si.iter(_q("t"))))
    return strings


def _styles(archive: zipfile.ZipFile, names: set[str]) -> tuple[StyleEntry, ...]:
    part = "xl/styles.xml"
    if part not in names:
        return ()
    root = _parse_part(archive, part)

    font_colors: list[str | None] = []
    fonts = root.find(_q("fonts"))
    if fonts is not None:
        for font in fonts.findall(_q("font")):
            color = font.find(_q("color"))
            font_colors.append(color.get("rgb") if color is not None else None)

    fill_colors: list[str | None] = []
    fills = root.find(_q("fills"))
    if fills is not None:
        for fill in fills.findall(_q("fill")):
            rgb = None
            pattern = fill.find(_q("patternFill"))
            if pattern is not None and pattern.get("patternType") == "solid":
                fg = pattern.find(_q("fgColor"))
                if fg is not None:
                    rgb = fg.get("rgb")
            fill_colors.append(rgb)

    entries: list[StyleEntry] = []
    xfs = root.find(_q("cellXfs"))
    if xfs is not None:
        for xf in xfs.findall(_q("xf")):
            font_id = int(xf.get("fontId", "0"))
            fill_id = int(xf.get("fillId", "0"))
            entries.append(StyleEntry(
                font_rgb=font_colors[font_id] if font_id < len(font_colors) else None,
                fill_rgb=fill_colors[fill_id] if fill_id < len(fill_colors) else None,
            ))
    return tuple(entries)


def _cell_from_element(elem: ET.Element, shared: list[str],
                       shared_formulas: dict[str, str]) -> Cell | None:
    address = elem.get("r")
    if address is None:
        return None
    style_attr = elem.get("s")
    style_id = int(style_attr) if style_attr is not None else None

    formula = None
    is_array = False
    f_el = elem.find(_q("f"))
    if f_el is not None:
        text = f_el.text or ""
        ftype = f_el.get("t")
        if ftype == "shared":
            key = f_el.get("si", "")
            if text:
                shared_formulas[key] = text
            else:
                text = shared_formulas.get(key, "")
        elif ftype == "array":
            is_array = True
        if text:
            formula = "=" + text

    ctype = elem.get("t", "n")
    v_el = elem.find(_q("v"))
    raw = v_el.text if v_el is not None else None

    if ctype == "s":
        index = int(raw) if raw is not None else -1
        value = shared[index] if 0 <= index < len(shared) else ""
        kind = ValueKind.TEXT
    elif ctype == "str":
        value, kind = raw or "", ValueKind.TEXT
    elif ctype == "inlineStr":
        is_el = elem.find(_q("is"))
        value = "".join(t.text or "" for t in is_el.iter(_q("t"))) if is_el is not None else ""
        kind = ValueKind.TEXT
    elif ctype == "b":
        value = "TRUE" if raw in ("1", "true") else "FALSE"
        kind = ValueKind.BOOL
    elif ctype == "e":
        value, kind = raw or "", ValueKind.ERROR
    elif raw is not None:
        value, kind = raw, ValueKind.NUMBER
    else:
        value, kind = None, ValueKind.EMPTY

    if formula is None and kind is ValueKind.EMPTY and style_id is None:
        return None
    return Cell(address=address, formula=formula, value=value, kind=kind,
                is_array=is_array, style_id=style_id)


def _parse_sheet(archive: zipfile.ZipFile, part: str, name: str,
                 visibility: SheetVisibility, shared: list[str]) -> SheetModel:
    root = _parse_part(archive, part)

    protected = root.find(_q("sheetProtection")) is not None

    hidden_rows = 0
    hidden_cols = 0
    cols = root.find(_q("cols"))
    if cols is not None:
        for col in cols.findall(_q("col")):
            if col.get("hidden") in _TRUTHY:
                hidden_cols += int(col.get("max", "0")) - int(col.get("min", "0")) + 1

    cells: dict[str, Cell] = {}
    shared_formulas: dict[str, str] = {}
    data = root.find(_q("sheetData"))
    if data is not None:
        for row in data.findall(_q("row")):
            if row.get("hidden") in _TRUTHY:
                hidden_rows += 1
            for elem in row.findall(_q("c")):
                cell = _cell_from_element(elem, shared, shared_formulas)
                if cell is not None:
                    cells[cell.address] = cell

    return SheetModel(name=name, visibility=visibility, protected=protected,
                      cells=cells, hidden_row_count=hidden_rows,
                      hidden_column_count=hidden_cols)


_SHEET_STATES = {
    None: SheetVisibility.VISIBLE,
    "visible": SheetVisibility.VISIBLE,
    "hidden": SheetVisibility.HIDDEN,
    "veryHidden": SheetVisibility.VERY_HIDDEN,
}


def parse_workbook(path: str | Path) -> WorkbookModel:
    """Parse an .xlsx/.xlsm file into a :class:`WorkbookModel`.

    Raises :class:`NotAWorkbook` for anything that is not a ZIP workbook
    package, :class:`EncryptedWorkbook` for OLE compound files, and
    :class:`MalformedPart` when a needed XML part will not parse.
    """
    path = Path(path)
    with path.open("rb") as handle:
        head = handle.read(8)
    if head.startswith(_CFB_MAGIC[:4]):
        raise EncryptedWorkbook(f"{path} is an encrypted workbook")
    if not head.startswith(_ZIP_MAGIC):
        raise NotAWorkbook(f"{path} is not a workbook package (bad magic)")

    try:
        archive = zipfile.ZipFile(path)
    except zipfile.BadZipFile as exc:
        raise NotAWorkbook(f"{path} is not a workbook package: {exc}") from exc

    with archive:
        names = set(archive.namelist())
        if "xl/workbook.xml" not in names:
            raise NotAWorkbook(f"{path} has no xl/workbook.xml part")

        wb_root = _parse_part(archive, "xl/workbook.xml")
        rels = _workbook_rels(archive, names)
        shared = _shared_strings(archive, names)
        styles = _styles(archive, names)

        sheets: list[SheetModel] = []
        sheets_el = wb_root.find(_q("sheets"))
        for sheet_el in (sheets_el if sheets_el is not None else []):
            name = sheet_el.get("name", f"Sheet{len(sheets) + 1}")
            visibility = _SHEET_STATES.get(sheet_el.get("state"), SheetVisibility.VISIBLE)
            target = rels.get(sheet_el.get(_NS_REL_ATTR, ""), "")
            if target in names and "/worksheets/" in f"/{target}":
                sheets.append(_parse_sheet(archive, target, name, visibility, shared))
            else:
                # chartsheets and dangling targets still count as sheets
                sheets.append(SheetModel(name=name, visibility=visibility))

        defined = []
        names_el = wb_root.find(_q("definedNames"))
        if names_el is not None:
            defined = [d.get("name", "") for d in names_el.findall(_q("definedName"))]

        external = frozenset(
            int(m.group(1)) for m in (_EXTERNAL_PART.match(n) for n in names) if m
        )
        pivots = sum(1 for n in names if _PIVOT_PART.match(n))

        return WorkbookModel(
            sheets=tuple(sheets),
            defined_names=tuple(defined),
            pivot_part_count=pivots,
            external_link_indices=external,
            vba_present=_VBA_PART in names,
            workbook_protection=wb_root.find(_q("workbookProtection")) is not None,
            file_size=path.stat().st_size,
            styles=styles,
        )
