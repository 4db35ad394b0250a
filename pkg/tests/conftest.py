import pytest

from proofbench.corpus import standard_corpus

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def corpus():
    return standard_corpus()


@pytest.fixture
def report_line():
    """Collects one summary line per acceptance criterion."""
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
