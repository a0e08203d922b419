# filled in by test_acceptance.py: number -> (title, passed, seconds, note)
ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, float, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, seconds, note = ACCEPTANCE_RESULTS[number]
        mark = "PASS" if passed else "FAIL"
        line = f"{mark}  {number:>2}. {title}  ({seconds:.2f} s)"
        if note:
            line += f"  {note}"
        terminalreporter.write_line(line)
