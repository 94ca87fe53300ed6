from collections import defaultdict

import pytest

_VERDICTS: dict[int, list[tuple[bool, str]]] = defaultdict(list)


@pytest.fixture
def criterion():
    """Record ``(number, passed, detail)`` for the acceptance summary."""

    def record(number: int, passed: bool, detail: str) -> None:
        _VERDICTS[number].append((bool(passed), detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_VERDICTS):
        entries = _VERDICTS[number]
        tag = "PASS" if all(ok for ok, _ in entries) else "FAIL"
        details = "; ".join(("" if ok else "FAILED ") + d for ok, d in entries)
        terminalreporter.write_line(f"criterion {number:2d}: {tag}  {details}")
