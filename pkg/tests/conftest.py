import os
from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "golden"
UPDATE = os.environ.get("STEMMODEL_UPDATE_GOLDENS") == "1"


def check_golden(name: str, text: str) -> None:
    """Compare against tests/golden/<name>; STEMMODEL_UPDATE_GOLDENS=1 rewrites it."""
    path = GOLDEN_DIR / name
    if UPDATE:
        GOLDEN_DIR.mkdir(exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
        return
    if not path.exists():
        pytest.fail(f"missing golden {path}; run with STEMMODEL_UPDATE_GOLDENS=1 to record it")
    assert path.read_text(encoding="utf-8") == text, f"{name} differs from its golden snapshot"


@pytest.fixture
def golden():
    return check_golden


# ------------------------------------------------------------------ acceptance summary

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed or (report.when == "call" and report.skipped):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        verdict = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {number}: {entry['title']}")
