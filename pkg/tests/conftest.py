import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quiverstab import DynkinType, build_root_system


@pytest.fixture(scope="session")
def rs_a1():
    return build_root_system(DynkinType("A", 1))


@pytest.fixture(scope="session")
def rs_a2():
    return build_root_system(DynkinType("A", 2))


@pytest.fixture(scope="session")
def rs_a3():
    return build_root_system(DynkinType("A", 3))


@pytest.fixture(scope="session")
def rs_d4():
    return build_root_system(DynkinType("D", 4))
