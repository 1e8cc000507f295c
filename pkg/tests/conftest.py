import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from expected_values import CLASS9_REP  # noqa: E402

from steinhaus import ResidueTuple, build_period_grid, full_search  # noqa: E402


@pytest.fixture(scope="session")
def rep9() -> ResidueTuple:
    return ResidueTuple.from_string(CLASS9_REP)


@pytest.fixture(scope="session")
def rep9_grid(rep9):
    return build_period_grid(rep9)


@pytest.fixture(scope="session")
def report24():
    return full_search(24)


GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR
