from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from legalnet.synthetic import figure_one

DATA = Path(__file__).resolve().parents[1] / "src" / "legalnet" / "data"

# Filled by tests/test_acceptance.py, printed after the run.
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def fig1():
    return figure_one()


@pytest.fixture
def fig1_dir(tmp_path: Path) -> Path:
    """A writable copy of the on-disk figure-one pipeline fixture."""
    target = tmp_path / "figure1"
    shutil.copytree(DATA / "figure1", target, ignore=shutil.ignore_patterns("out"))
    return target


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {detail}")
