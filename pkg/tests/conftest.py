import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's outcome; call with (label, passed, detail)."""

    def record(label: str, passed: bool, detail: str = "") -> bool:
        _ACCEPTANCE[label] = (passed, detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0][2:])):
        passed, detail = _ACCEPTANCE[label]
        line = f"{'PASS' if passed else 'FAIL'}  {label}"
        terminalreporter.write_line(f"{line}  ({detail})" if detail else line)
