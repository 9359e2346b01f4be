from __future__ import annotations

from hypothesis import HealthCheck, settings

settings.register_profile("detfam", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("detfam")


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
