import os

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False,
                     help="run long checks (q=4 cubic-cubic census)")


def pytest_configure(config):
    config.addinivalue_line("markers", "extended: long-running check, needs --extended")


def extended_enabled(config):
    return config.getoption("--extended") or os.environ.get("CUBIC_CENSUS_EXTENDED") == "1"


def pytest_collection_modifyitems(config, items):
    if extended_enabled(config):
        return
    skip = pytest.mark.skip(reason="needs --extended or CUBIC_CENSUS_EXTENDED=1")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
