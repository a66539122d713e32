"""Lightweight formula scanning: IF nesting and external references.

This is a character scanner, not a grammar. It only has to answer two
questions reliably: how deeply are IF( calls nested, and which [n] external
workbook indices appear. Double-quoted string literals are skipped, and an
identifier only counts as an IF call when the whole word is IF and the next
non-blank character opens its argument list (so COUNTIF and IFERROR do not
match, nor does a cell in column IF).
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class UnbalancedFormula(ValueError):
    """An IF argument list never closes; carries the depth of the parsed prefix."""

    def __init__(self, depth: int, if_calls: int):
        super().__init__("unbalanced parentheses in formula")
        self.depth = depth
        self.if_calls = if_calls


@dataclass(frozen=True)
class IfScan:
    if_calls: int
    max_depth: int
    balanced: bool


_EXTERNAL_INDEX = re.compile(r"\[(\d+)\]")


def scan_ifs(formula: str) -> IfScan:
    """Count IF call sites and their maximum nesting depth."""
    text = formula[1:] if formula.startswith("=") else formula
    stack: list[bool] = []  # True where the open paren belongs to an IF call
    depth = 0
    max_depth = 0
    calls = 0
    pending_if = False
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == '"':  # string literal, "" escapes a quote
            i += 1
            while i < n:
                if text[i] == '"':
                    if i + 1 < n and text[i + 1] == '"':
                        i += 2
                        continue
                    break
                i += 1
            i += 1
            pending_if = False
            continue
        if ch == "'":  # quoted sheet name
            i += 1
            while i < n and text[i] != "'":
                i += 1
            i += 1
            pending_if = False
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "._$"):
                j += 1
            pending_if = text[i:j].upper() == "IF"
            i = j
            continue
        if ch == "(":
            stack.append(pending_if)
            if pending_if:
                calls += 1
                depth += 1
                max_depth = max(max_depth, depth)
            pending_if = False
            i += 1
            continue
        if ch == ")":
            if stack and stack.pop():
                depth -= 1
            pending_if = False
            i += 1
            continue
        if not ch.isspace():
            pending_if = False
        i += 1
    return IfScan(if_calls=calls, max_depth=max_depth, balanced=not stack)


def nested_if_depth(formula: str) -> int:
    """Maximum nesting depth of IF( calls; 0 when the formula has none.

    Raises :class:`UnbalancedFormula` when an argument list never closes;
    the exception carries the depth seen over the parsed prefix.
    """
    scan = scan_ifs(formula)
    if not scan.balanced:
        raise UnbalancedFormula(scan.max_depth, scan.if_calls)
    return scan.max_depth


def strip_string_literals(formula: str) -> str:
    """The formula with double-quoted literals blanked out."""
    out: list[str] = []
    i = 0
    n = len(formula)
    while i < n:
        ch = formula[i]
        if ch == '"':
            i += 1
            while i < n:
                if formula[i] == '"':
                    if i + 1 < n and formula[i + 1] == '"':
                        i += 2
                        continue
                    break
                i += 1
            i += 1
            continue
        out.append(ch)
        i += 1
    return "".join(out)


def external_ref_indices(formula: str) -> set[int]:
    """The [n] external workbook indices referenced outside string literals."""
    return {int(m) for m in _EXTERNAL_INDEX.findall(strip_string_literals(formula))}
