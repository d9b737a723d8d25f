import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from uncreg import fixtures  # noqa: E402
from uncreg.files import write_dataset  # noqa: E402


@pytest.fixture(scope="session")
def table1():
    return fixtures.table1()


@pytest.fixture
def table1_file(tmp_path, table1):
    path = tmp_path / "table1.json"
    write_dataset(table1, path)
    return path


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
