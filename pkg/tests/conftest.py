from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

# criterion number -> (passed, detail), filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    if 9 in ACCEPTANCE:
        # the invariant criterion also covers every property suite in the other modules
        failed = [r.nodeid for r in terminalreporter.stats.get("failed", [])
                  if "test_acceptance" not in r.nodeid]
        ok, detail = ACCEPTANCE[9]
        ACCEPTANCE[9] = (ok and not failed, f"{detail}; {len(failed)} failures in module suites")
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
