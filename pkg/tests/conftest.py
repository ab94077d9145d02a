import os

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running sweep (acceptance grid)")


@pytest.fixture(scope="session")
def jobs():
    return int(os.environ.get("MOMENTLAB_TEST_JOBS", min(4, os.cpu_count() or 1)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
