import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mquasi import from_index, load_fixture, transpose  # noqa: E402


@pytest.fixture(scope="session")
def omega22():
    """The sixteen binary operations on two symbols; omega22[k] is g_{k+1}."""
    return [from_index(2, 2, k) for k in range(16)]


@pytest.fixture(scope="session")
def ex52():
    star = load_fixture("example-5.2-star")
    circ = load_fixture("example-5.2-circ")
    return {
        "star": star,
        "star_t": transpose(star),
        "circ": circ,
        "circ_t": transpose(circ),
        "ast": load_fixture("example-5.2-ast"),
    }


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        title, ok = RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
