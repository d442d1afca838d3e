import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

_CRITERIA: dict = {}


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion for the summary table."""

    def record(number: int, title: str, ok: bool):
        _CRITERIA[(number, title)] = ok
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {title}")
        assert ok, f"criterion {number} failed: {title}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (k, title), ok in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {title}")
