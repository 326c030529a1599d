import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent

try:
    import tkmeans  # noqa: F401
except ImportError:  # running from a checkout without an install
    sys.path.insert(0, str(REPO_ROOT / "src"))


@pytest.fixture(scope="session")
def iris_path() -> Path:
    return REPO_ROOT / "data" / "iris.csv"
