import pytest

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    label = getattr(item.function, "criterion", None)
    if label is None or report.when != "call":
        return
    detail = getattr(item, "acceptance_detail", "")
    _ACCEPTANCE[label] = ("PASS" if report.passed else "FAIL", detail)


@pytest.fixture
def measured(request):
    """Attach the measured value to the acceptance summary line."""

    def note(text):
        request.node.acceptance_detail = text

    return note


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        status, detail = _ACCEPTANCE[label]
        terminalreporter.write_line(f"{status}  {label}  {detail}")
