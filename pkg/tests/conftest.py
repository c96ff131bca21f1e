import math
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
CIRCUITS_DIR = REPO_ROOT / "circuits"
DATA_DIR = Path(__file__).resolve().parent / "data"

INV_SQRT2 = 1.0 / math.sqrt(2.0)


@pytest.fixture
def circuits_dir():
    return CIRCUITS_DIR


@pytest.fixture
def data_dir():
    return DATA_DIR
