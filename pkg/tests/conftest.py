# Collected (criterion id, description, passed) rows from the acceptance module;
# printed as one line per criterion at the end of the run.
ACCEPTANCE_RESULTS = []


def record_criterion(ident: str, description: str, passed: bool):
    ACCEPTANCE_RESULTS.append((ident, description, passed))
    line = f"[criterion {ident}] {'PASS' if passed else 'FAIL'} {description}"
    print(line)
    assert passed, line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for ident, description, passed in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(
            f"[criterion {ident}] {'PASS' if passed else 'FAIL'} {description}"
        )
