from hypothesis import settings

settings.register_profile("qfock", deadline=None, max_examples=60)
settings.load_profile("qfock")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        r = RESULTS[number]
        line = r.line()
        if r.passed and r.seconds >= r.budget:
            line = line.replace("[PASS]", "[FAIL]", 1) + " (over budget)"
        terminalreporter.write_line(line)
