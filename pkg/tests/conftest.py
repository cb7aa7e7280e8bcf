import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rsad import build_table


@pytest.fixture(scope="session")
def t10k():
    return build_table(10**4 + 64)


@pytest.fixture(scope="session")
def t100k():
    return build_table(10**5 + 64)


@pytest.fixture(scope="session")
def t10m():
    return build_table(10**7 + 64)


@pytest.fixture(scope="session")
def t100m():
    return build_table(10**8)
