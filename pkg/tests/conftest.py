import pytest

from qoerep.preprocess import PreprocessConfig


@pytest.fixture(scope="session")
def default_preprocess():
    return PreprocessConfig()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
