import random

import pytest

from tests import acceptance_log


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    if not acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(acceptance_log.RESULTS):
        passed, line = acceptance_log.RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {key:>2}. {line}")
