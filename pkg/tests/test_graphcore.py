import io
import math
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs
from ticov import Graph, ModelParams, ParameterError, ParseError, degrees, read_edge_list, sample_gnp, write_edge_list
from ticov.graphcore import mix64, pair_count, pair_endpoints, pair_index


@pytest.mark.parametrize("n", [2, 3, 5, 17, 60])
def test_pair_codec_matches_lexicographic_order(n):
    ref = list(combinations(range(n), 2))
    m = pair_count(n)
    assert m == len(ref)
    u, v = pair_endpoints(np.arange(m), n)
    assert list(zip(u.tolist(), v.tolist())) == ref
    for t, (a, b) in enumerate(ref):
        assert pair_index(a, b, n) == t


def test_pair_codec_large_n():
    n = 10**6
    m = pair_count(n)
    ts = np.array([0, 1, n - 2, n - 1, m // 3, m // 2, m - 1], dtype=np.int64)
    u, v = pair_endpoints(ts, n)
    for t, a, b in zip(ts.tolist(), u.tolist(), v.tolist()):
        assert 0 <= a < b < n
        assert pair_index(a, b, n) == t


def test_model_params_validation():
    assert ModelParams.from_alpha(50, 2.0).p == 0.04
    assert ModelParams.from_p(10, 0.0).p == 0.0
    assert ModelParams(4, 0.5).expected_edges == 3.0
    with pytest.raises(ParameterError):
        ModelParams(0, 0.5)
    with pytest.raises(ParameterError):
        ModelParams(5, 1.5)
    with pytest.raises(ParameterError):
        ModelParams.from_alpha(5, 6.0)  # p would exceed 1
    with pytest.raises(ParameterError):
        ModelParams.from_alpha(5, 0.0)


def test_graph_validation():
    g = Graph(3, [(0, 1), (2, 1)])
    assert g.edge_count == 2
    assert tuple(degrees(g)) == (1, 2, 1)
    with pytest.raises(ParameterError):
        Graph(3, [(0, 0)])
    with pytest.raises(ParameterError):
        Graph(3, [(0, 3)])
    with pytest.raises(ParameterError):
        Graph(3, [(0, 1), (1, 0)])


def test_degree_examples():
    assert tuple(degrees(Graph(3, []))) == (0, 0, 0)
    assert tuple(degrees(Graph(3, [(0, 1), (1, 2), (0, 2)]))) == (2, 2, 2)
    assert tuple(degrees(Graph(3, [(0, 1), (1, 2)]))) == (1, 2, 1)


@given(graphs())
def test_handshake(g):
    assert int(g.degrees.sum()) == 2 * g.edge_count


def test_graph_immutable_and_hashable():
    g = Graph(3, [(0, 1)])
    with pytest.raises(ValueError):
        g.degrees[0] = 7
    assert g == Graph(3, [(0, 1)])
    assert hash(g) == hash(Graph(3, [(0, 1)]))
    assert g != Graph(3, [(1, 2)])


def test_sample_gnp_determinism():
    params = ModelParams.from_alpha(40, 3.0)
    a = sample_gnp(params, 123456789)
    b = sample_gnp(params, 123456789)
    assert a == b
    c = sample_gnp(params, 987654321)
    assert a != c  # overwhelmingly likely for 40 vertices


def test_sample_gnp_degenerate_p():
    empty = sample_gnp(ModelParams.from_p(5, 0.0), 7)
    assert empty.edge_count == 0
    complete = sample_gnp(ModelParams.from_p(5, 1.0), 7)
    assert complete.edge_count == 10
    assert set(complete.edges()) == set(combinations(range(5), 2))


def test_sample_gnp_mean_edge_count():
    # binomial expectation C(50,2) * 0.04 = 49, checked over many seeds
    params = ModelParams.from_alpha(50, 2.0)
    n_samples = 10**5
    total = 0
    for s in range(n_samples):
        total += sample_gnp(params, s).edge_count
    mean = total / n_samples
    stderr = math.sqrt(49 * (1 - 0.04) / n_samples)
    assert abs(mean - 49.0) < 4 * stderr


def test_edges_per_vertex_approaches_half_alpha():
    alpha = 2.0
    ratios = []
    for n in (50, 200):
        params = ModelParams.from_alpha(n, alpha)
        mean = np.mean([sample_gnp(params, s).edge_count for s in range(2000)])
        ratios.append(mean / n)
    # exact mean is (n-1) * alpha / (2n); the gap to alpha/2 shrinks with n
    assert abs(ratios[1] - alpha / 2) < abs(ratios[0] - alpha / 2) + 0.02
    assert abs(ratios[1] - alpha / 2) < 0.03


def test_read_edge_list_path():
    g = read_edge_list(io.StringIO("n=3\n0 1\n1 2\n"))
    assert tuple(degrees(g)) == (1, 2, 1)


def test_read_edge_list_comments_and_blanks():
    g = read_edge_list(io.StringIO("# a path\nn=3\n\n0 1\n# middle\n1 2\n"))
    assert g.edge_count == 2


@pytest.mark.parametrize(
    "text,frag",
    [
        ("n=2\n0 0\n", "line 2"),
        ("n=2\n0 5\n", "line 2"),
        ("n=3\n0 1\n1 0\n", "line 3"),
        ("n=3\n0 1 2\n", "line 2"),
        ("n=3\nx y\n", "line 2"),
        ("0 1\n", "line 1"),
        ("n=abc\n", "line 1"),
    ],
)
def test_read_edge_list_errors_name_line(text, frag):
    with pytest.raises(ParseError) as err:
        read_edge_list(io.StringIO(text))
    assert frag in str(err.value)


def test_write_read_round_trip_k3():
    k3 = Graph(3, [(0, 1), (1, 2), (0, 2)])
    assert read_edge_list(io.StringIO(write_edge_list(k3))) == k3


@given(graphs())
@settings(max_examples=60)
def test_write_read_round_trip(g):
    assert read_edge_list(io.StringIO(write_edge_list(g))) == g


@given(st.lists(st.integers(0, 2**64 - 1), min_size=1, max_size=4))
def test_mix64_deterministic(parts):
    assert mix64(*parts) == mix64(*parts)
    assert 0 <= mix64(*parts) < 2**64


def test_mix64_spreads_consecutive_indices():
    outs = {mix64(0, i) for i in range(10_000)}
    assert len(outs) == 10_000
