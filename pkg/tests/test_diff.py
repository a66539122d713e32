import string

from hypothesis import given, settings
from hypothesis import strategies as st

from eucrisk.scanner import (
    BaselineDiff,
    Cell,
    ChangeKind,
    SheetModel,
    ValueKind,
    WorkbookModel,
    diff_against_baseline,
    parse_workbook,
)


def sheet(name: str, cells: dict[str, Cell]) -> SheetModel:
    return SheetModel(name=name, cells=cells)


def number_cell(address: str, value: str) -> Cell:
    return Cell(address=address, value=value, kind=ValueKind.NUMBER)


def formula_cell(address: str, body: str, value: str) -> Cell:
    return Cell(address=address, formula=body, value=value, kind=ValueKind.NUMBER)


def workbook(*sheets: SheetModel) -> WorkbookModel:
    return WorkbookModel(sheets=tuple(sheets))


class TestFixtureDiffs:
    def test_reflexive_diff_is_empty(self, corpus):
        model = parse_workbook(corpus["baseline.xlsx"])
        assert diff_against_baseline(model, model).is_empty

    def test_reparse_of_same_bytes_diffs_empty(self, corpus):
        first = parse_workbook(corpus["baseline.xlsx"])
        second = parse_workbook(corpus["baseline.xlsx"])
        assert diff_against_baseline(first, second).is_empty

    def test_formula_replaced_by_constant(self, corpus):
        baseline = parse_workbook(corpus["baseline.xlsx"])
        drifted = parse_workbook(corpus["drift_constant.xlsx"])
        diff = diff_against_baseline(baseline, drifted)
        assert len(diff.entries) == 1
        entry = diff.entries[0]
        assert entry.kind is ChangeKind.FORMULA_REPLACED_BY_CONSTANT
        assert (entry.sheet, entry.address) == ("Sheet1", "B5")
        assert entry.before == "=SUM(B1:B4)"
        assert entry.after == "42"
        assert entry.high_severity
        assert diff.high_severity_entries() == (entry,)

    def test_added_sheet_reported_once(self, corpus):
        baseline = parse_workbook(corpus["baseline.xlsx"])
        grown = parse_workbook(corpus["drift_newsheet.xlsx"])
        diff = diff_against_baseline(baseline, grown)
        assert [(e.kind, e.sheet) for e in diff.entries] == [
            (ChangeKind.SHEET_ADDED, "Scratch")
        ]
        reverse = diff_against_baseline(grown, baseline)
        assert [(e.kind, e.sheet) for e in reverse.entries] == [
            (ChangeKind.SHEET_REMOVED, "Scratch")
        ]


class TestClassification:
    BASE = workbook(sheet("S", {
        "A1": number_cell("A1", "1"),
        "B1": formula_cell("B1", "=A1*2", "2"),
        "C1": number_cell("C1", "7"),
    }))

    def test_value_changed(self):
        current = workbook(sheet("S", {
            "A1": number_cell("A1", "5"),
            "B1": formula_cell("B1", "=A1*2", "2"),
            "C1": number_cell("C1", "7"),
        }))
        diff = diff_against_baseline(self.BASE, current)
        assert [(e.kind, e.address, e.before, e.after) for e in diff.entries] == [
            (ChangeKind.VALUE_CHANGED, "A1", "1", "5")
        ]

    def test_formula_changed(self):
        current = workbook(sheet("S", {
            "A1": number_cell("A1", "1"),
            "B1": formula_cell("B1", "=A1*3", "3"),
            "C1": number_cell("C1", "7"),
        }))
        diff = diff_against_baseline(self.BASE, current)
        assert [(e.kind, e.address) for e in diff.entries] == [
            (ChangeKind.FORMULA_CHANGED, "B1")
        ]

    def test_same_formula_new_cached_value_is_value_change(self):
        current = workbook(sheet("S", {
            "A1": number_cell("A1", "1"),
            "B1": formula_cell("B1", "=A1*2", "4"),
            "C1": number_cell("C1", "7"),
        }))
        diff = diff_against_baseline(self.BASE, current)
        assert [(e.kind, e.address) for e in diff.entries] == [
            (ChangeKind.VALUE_CHANGED, "B1")
        ]

    def test_constant_replaced_by_formula(self):
        current = workbook(sheet("S", {
            "A1": number_cell("A1", "1"),
            "B1": formula_cell("B1", "=A1*2", "2"),
            "C1": formula_cell("C1", "=A1+6", "7"),
        }))
        diff = diff_against_baseline(self.BASE, current)
        assert [(e.kind, e.address) for e in diff.entries] == [
            (ChangeKind.CONSTANT_REPLACED_BY_FORMULA, "C1")
        ]

    def test_cell_added_and_removed(self):
        current = workbook(sheet("S", {
            "A1": number_cell("A1", "1"),
            "B1": formula_cell("B1", "=A1*2", "2"),
            "D9": number_cell("D9", "0"),
        }))
        diff = diff_against_baseline(self.BASE, current)
        kinds = {(e.kind, e.address) for e in diff.entries}
        assert kinds == {
            (ChangeKind.CELL_REMOVED, "C1"),
            (ChangeKind.CELL_ADDED, "D9"),
        }

    def test_entries_sorted_in_reading_order(self):
        current = workbook(sheet("S", {
            "A1": number_cell("A1", "9"),
            "B1": formula_cell("B1", "=A1*2", "2"),
            "C1": number_cell("C1", "8"),
            "B10": number_cell("B10", "1"),
            "B2": number_cell("B2", "1"),
        }))
        diff = diff_against_baseline(self.BASE, current)
        assert [e.address for e in diff.entries] == ["A1", "C1", "B2", "B10"]


# Small random workbooks for the symmetry property.
_ADDRESSES = ["A1", "A2", "B1", "B2", "C3"]
_NAMES = ["Alpha", "Beta", "Gamma"]


@st.composite
def models(draw):
    sheets = []
    for name in draw(st.sets(st.sampled_from(_NAMES), min_size=1)):
        cells = {}
        for address in draw(st.sets(st.sampled_from(_ADDRESSES))):
            value = draw(st.text(string.digits, min_size=1, max_size=3))
            if draw(st.booleans()):
                cells[address] = formula_cell(address, f"=X{value}", value)
            else:
                cells[address] = number_cell(address, value)
        sheets.append(sheet(name, cells))
    return workbook(*sorted(sheets, key=lambda s: s.name))


ADD_KINDS = {ChangeKind.CELL_ADDED: ChangeKind.CELL_REMOVED,
             ChangeKind.SHEET_ADDED: ChangeKind.SHEET_REMOVED}


@settings(max_examples=150, deadline=None)
@given(models(), models())
def test_additions_mirror_removals(before, after):
    forward = diff_against_baseline(before, after)
    backward = diff_against_baseline(after, before)
    fwd = {(e.sheet, e.address, ADD_KINDS[e.kind])
           for e in forward.entries if e.kind in ADD_KINDS}
    bwd = {(e.sheet, e.address, e.kind)
           for e in backward.entries if e.kind in ADD_KINDS.values()}
    assert fwd == bwd


@settings(max_examples=150, deadline=None)
@given(models(), models())
def test_each_location_appears_at_most_once(before, after):
    diff = diff_against_baseline(before, after)
    locations = [(e.sheet, e.address) for e in diff.entries]
    assert len(locations) == len(set(locations))


@settings(max_examples=100, deadline=None)
@given(models())
def test_self_diff_always_empty(model):
    assert diff_against_baseline(model, model) == BaselineDiff(entries=())
