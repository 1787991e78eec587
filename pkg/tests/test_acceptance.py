"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for just the ten lines.
"""

import pytest

from parabolic_orbits import acceptance
from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", sorted(acceptance.CHECKS))
def test_criterion(number):
    result = acceptance.CHECKS[number]()
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, line


if __name__ == "__main__":
    ok = True
    for number in sorted(acceptance.CHECKS):
        r = acceptance.CHECKS[number]()
        print(r.line(), flush=True)
        ok &= r.passed
    raise SystemExit(0 if ok else 1)
