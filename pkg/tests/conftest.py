import contextlib
import pathlib
import sys
import time

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Context manager that turns a block into one PASS/FAIL line.

    Any exception inside the block (an assertion or otherwise) marks the
    criterion FAIL and is re-raised so the test fails too.
    """

    @contextlib.contextmanager
    def run(number, title):
        notes = []
        start = time.perf_counter()
        try:
            yield notes
        except BaseException as exc:
            msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
            _emit(f"[FAIL] criterion {number}: {title} ({msg})")
            raise
        else:
            extra = f"; {'; '.join(notes)}" if notes else ""
            took = time.perf_counter() - start
            _emit(f"[PASS] criterion {number}: {title} ({took:.1f}s{extra})")

    return run


def _emit(line):
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
