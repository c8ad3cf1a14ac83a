from fractions import Fraction

import pytest

ACCEPTANCE_LINES = []


def long_division_digit(r, n, base=10):
    """Digit n (1-based) of r in [0, 1), straight from floor(r * base^n)."""
    r = Fraction(r)
    return (r.numerator * base**n // r.denominator) % base


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def record_criterion():
    def record(number, title, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title}" + (f" [{detail}]" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record
