import numpy as np
import pytest

import hyperwalk as hw


@pytest.fixture
def worked_example():
    """5-node fixture: hyperedges {0,1,2}, {2,3}, {3,4}, all unit weights.

    Known values: hyperedge degrees (3, 2, 2); node degrees (1, 1, 2, 2, 1);
    with target 3 the frustrated restriction is
    [[11/20, 1/4, 1/5], [1/4, 11/20, 1/5], [1/5, 1/5, 1/2]] with one-step
    vector (0, 0, 1/10) and expected hitting times (35, 35, 30) plus 2 from
    the adherent node 4.
    """
    return hw.build_hypergraph([[0, 1, 2], [2, 3], [3, 4]])


@pytest.fixture(params=hw.available_backends())
def each_backend(request):
    """Run the test once per available kernel backend."""
    previous = hw.backend_name()
    hw.set_backend(request.param)
    yield request.param
    hw.set_backend(previous)


def random_connected_instances(count, seed=0, max_nodes=60):
    """Deterministic stream of random connected weighted hypergraphs."""
    rng = np.random.default_rng(seed)
    return [hw.random_connected(rng, max_nodes=max_nodes) for _ in range(count)]
