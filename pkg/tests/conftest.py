import pytest

from dressmap.catalog import CATALOG, build_extension
from dressmap.fields import BaseField


@pytest.fixture(scope="session")
def Q():
    return BaseField.rationals()


@pytest.fixture(scope="session")
def catalog_extensions():
    return {name: build_extension(spec) for name, spec in CATALOG}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, what = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {what}")
