import pytest

# criterion number -> (passed, seconds, note); filled by test_acceptance
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, secs, note = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s) {note}")


@pytest.fixture
def rng():
    import random
    return random.Random(20261016)
