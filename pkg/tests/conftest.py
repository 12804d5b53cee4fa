import pytest

from graph_core.generators import gen_complete, gen_cycle, gen_double_cone
from operators.operator_set import OperatorSet
from triangulation.search import canonical_double_cone_partition, find_partition


@pytest.fixture
def k4():
    return gen_complete(4)


@pytest.fixture
def k4_partition(k4):
    return find_partition(k4)


@pytest.fixture
def k4_ops(k4, k4_partition):
    return OperatorSet(k4, k4_partition)


@pytest.fixture
def c4():
    return gen_cycle(4)


@pytest.fixture
def gamma3():
    return gen_double_cone(3)


@pytest.fixture
def gamma3_ops():
    pi = canonical_double_cone_partition(3)
    return OperatorSet(pi.graph, pi)


@pytest.fixture
def gamma4_ops():
    pi = canonical_double_cone_partition(4)
    return OperatorSet(pi.graph, pi)


@pytest.fixture
def double_cone_ops():
    def build(n):
        pi = canonical_double_cone_partition(n)
        return OperatorSet(pi.graph, pi)
    return build

