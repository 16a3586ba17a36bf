import pytest

from gcsets.lattices import counterexample_gc3


@pytest.fixture(scope="session")
def xstar():
    L, star = counterexample_gc3()
    return L, star


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        note = getattr(item, "acceptance_note", "") or ("" if rep.passed else item.name)
        _ACCEPTANCE.setdefault(number, []).append((title, rep.passed, note))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        parts = _ACCEPTANCE[number]
        status = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        notes = "; ".join(note if ok else f"failed: {note}" for _, ok, note in parts if note)
        terminalreporter.write_line(f"criterion {number:>2} {status}: {parts[0][0]}" + (f" [{notes}]" if notes else ""))
