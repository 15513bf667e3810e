import pytest

from artin.certifier import certify_free, tree_elliptic
from artin.oracles import oracle_sweep
from artin.quasitree import min_exponent_tree_elliptic_type2
from tests.util import load_graph


@pytest.mark.benchmark(group="oracle_sweep")
@pytest.mark.parametrize('m', [3, 4, 5, 6])
def test_full_oracle_sweep(benchmark, m):
    """
    Every word of length at most 8, about 87 thousand per label.
    """
    report = benchmark.pedantic(oracle_sweep, args=(m, 8), rounds=1, iterations=1)
    assert report.disagreements == 0


@pytest.mark.benchmark(group="oracle_sweep")
@pytest.mark.parametrize('disable_numba', [False, True], ids=['Numba-On', 'Numba-Off'])
def test_sweep_kernel(benchmark, disable_numba):
    report = benchmark(oracle_sweep, 3, 6, disable_numba)
    assert report.disagreements == 0


@pytest.mark.benchmark(group="geometry")
def test_n0_search(benchmark):
    result = benchmark(min_exponent_tree_elliptic_type2, 3, 1)
    assert result.n0 == 4


@pytest.mark.benchmark(group="geometry")
def test_path_certificate(benchmark):
    graph = load_graph('path_raag.json')
    a, c = tree_elliptic(graph, "", "a", 1), tree_elliptic(graph, "", "c", 1)
    certificate = benchmark(certify_free, graph, a, c)
    assert certificate.n == 1
