import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sievelab.sieve import build_prime_table


@pytest.fixture(scope="session")
def table_1k():
    return build_prime_table(1_000)


@pytest.fixture(scope="session")
def table_100k():
    return build_prime_table(100_000)


@pytest.fixture(scope="session")
def table_1m():
    return build_prime_table(1_000_000)
