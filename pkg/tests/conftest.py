import pytest

from ppm import build_prime_table

# Shared tables, sized for the heaviest consumer of each:
#   small  - partition censuses and preimages over [1, 1e5]
#   medium - model sequences to n = 1e5 (p_100000 = 1,299,709) and
#            twin/merit statistics up to 1e6
#   big    - index-mode merit census to 1e6 (p_1000001 = 15,485,867),
#            the P-ratio scan to 2e7, and prime bounds for n <= 1e6


@pytest.fixture(scope="session")
def table_small():
    return build_prime_table(100_000)


@pytest.fixture(scope="session")
def table_medium():
    return build_prime_table(1_400_000)


@pytest.fixture(scope="session")
def table_big():
    return build_prime_table(20_000_002)
