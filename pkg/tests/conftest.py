import pytest

from usolcp.gen import gen_k_matrix, gen_q
from usolcp.lcp import LcpInstance
from usolcp.rng import derive_seed
from usolcp.uso import PlcpOracle, morris_table, tabulate


@pytest.fixture(scope="session")
def morris3():
    return morris_table(3)


@pytest.fixture(scope="session")
def morris5():
    return morris_table(5)


def make_k_instance(n, seed):
    m = gen_k_matrix(n, derive_seed(seed, n, 0))
    q = gen_q(m, n, derive_seed(seed, n, 1))
    return LcpInstance(n, m, q)


def k_table(n, seed):
    return tabulate(PlcpOracle(make_k_instance(n, seed)))
