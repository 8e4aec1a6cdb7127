"""Shared pytest hooks: surface the acceptance-criterion result lines.

``tests/test_acceptance.py`` records one ``[criterion N] PASS/FAIL`` line
per criterion; fd-level capture would otherwise hide them, so they are
replayed in the terminal summary where they survive into piped logs.
"""

criterion_lines: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in criterion_lines:
            terminalreporter.write_line(line)
