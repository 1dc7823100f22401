import pytest

SMALL_PRIMES = [p for p in range(5, 51) if all(p % q for q in range(2, p))]
PRIMES_TO_200 = [p for p in range(5, 201) if all(p % q for q in range(2, p))]


@pytest.fixture(params=[5, 7, 11, 13])
def tiny_p(request):
    return request.param


# criterion number -> (passed, description); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
