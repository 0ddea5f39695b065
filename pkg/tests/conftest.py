import pytest

from bielliptic.fixtures import load_fixtures
from bielliptic.pipeline import derive


@pytest.fixture(scope="session")
def data():
    return load_fixtures()


@pytest.fixture(scope="session")
def reports(data):
    """One default-precision derivation per tabulated level."""
    return {N: derive(d) for N, d in data.items()}


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
