import pytest
from hypothesis import settings

# oracle checks are brute force; wall-clock deadlines only add flakiness under load
settings.register_profile("dirqa", deadline=None)
settings.load_profile("dirqa")

ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for one acceptance criterion."""

    def record(number: int, title: str):
        ACCEPTANCE[number] = (title, "FAIL")
        request.node.user_properties.append(("criterion", number))
        return number

    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    for key, number in item.user_properties:
        if key == "criterion" and number in ACCEPTANCE:
            title, _ = ACCEPTANCE[number]
            status = "PASS" if rep.passed else "FAIL"
            ACCEPTANCE[number] = (title, status)
            print(f"\ncriterion {number} ({title}): {status}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, status = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {status}  {title}")
