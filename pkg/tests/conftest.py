from contextlib import contextmanager

import pytest

from imm0 import random_immersion

ACCEPTANCE_LINES = []


@contextmanager
def acceptance(number, description):
    """Record a PASS/FAIL line for one acceptance criterion.

    The line lands in the terminal summary either way, so a red run still
    reports which criteria held.
    """
    ok = False
    try:
        yield
        ok = True
    finally:
        verdict = "PASS" if ok else "FAIL"
        ACCEPTANCE_LINES.append(f"ACCEPTANCE {number:02d} {verdict} {description}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus():
    # seeds fixed so every run sees the same 100 curves
    return [random_immersion(seed) for seed in range(100)]


@pytest.fixture(scope="session")
def retraction_corpus(corpus):
    return corpus[:50]
