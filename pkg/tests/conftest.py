from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from workbook_builder import build_corpus  # noqa: E402


@pytest.fixture(scope="session")
def corpus(tmp_path_factory) -> dict[str, Path]:
    """The crafted workbook fixtures, built once per session."""
    return build_corpus(tmp_path_factory.mktemp("workbooks"))
