import contextlib

import pytest

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line per criterion, pass or fail, then re-raise."""
    lines = request.config.stash[ACCEPTANCE_KEY]

    @contextlib.contextmanager
    def record(number, title):
        try:
            yield
        except BaseException as exc:
            detail = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            lines.append((number, f"FAIL  criterion {number}: {title} ({detail})"))
            print(lines[-1][1])
            raise
        lines.append((number, f"PASS  criterion {number}: {title}"))
        print(lines[-1][1])

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(lines):
        terminalreporter.write_line(line)
