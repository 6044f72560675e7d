"""All ten acceptance criteria at their stated tolerances, one line each."""

import pytest

from skein_kernel.acceptance import CRITERIA, run_one

KNOWN_FAILURES = {
    5: "valuations of F1, F2 computed from the summands do not equal the stated formula",
}


def _param(n, name):
    marks = [pytest.mark.slow] if n in (3, 4, 7, 8) else []
    if n in KNOWN_FAILURES:
        marks.append(pytest.mark.xfail(strict=True, reason=KNOWN_FAILURES[n]))
    return pytest.param(n, id=f"ac{n:02d}-{name.replace(' ', '-')}", marks=marks)


@pytest.mark.parametrize("number", [_param(n, name) for n, name, _ in CRITERIA])
def test_criterion(number, acceptance_log):
    result = run_one(number)
    line = result.line()
    print(line)
    acceptance_log.append(line)
    assert result.passed, result.detail
