import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line per acceptance criterion."""
    log = request.config.stash[ACCEPTANCE_KEY]

    def record(label: str, ok: bool, detail: str = ""):
        log.append((label, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(ACCEPTANCE_KEY, [])
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in log:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")


START_KEY = pytest.StashKey[float]()


def pytest_sessionstart(session):
    import time

    session.config.stash[START_KEY] = time.perf_counter()


@pytest.fixture
def session_elapsed(request):
    import time

    return lambda: time.perf_counter() - request.config.stash[START_KEY]


def pytest_collection_modifyitems(config, items):
    # the wall-clock check must see every other test
    last = [i for i in items if i.get_closest_marker("run_last")]
    items[:] = [i for i in items if not i.get_closest_marker("run_last")] + last
