"""
Menger 流割测试：与 networkx 最大流、暴力穷举交叉验证
"""

import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from onion_framework.core.digraph import Direction, MultiDigraph, Path, are_arc_disjoint, boundary, is_simple
from onion_framework.core.flow import decompose_flow, max_disjoint_paths, min_cut, mu
from onion_framework.core.oracle import max_disjoint_brute
from onion_framework.core.utils import ContractViolation
from onion_framework.workflows.generators import counterexample, onion_star, random_digraph


def networkx_mu(d: MultiDigraph, s: int, t: int) -> int:
    graph = nx.DiGraph()
    graph.add_nodes_from(d.vertices)
    for _, tail, head in d.arc_items():
        if graph.has_edge(tail, head):
            graph[tail][head]["capacity"] += 1
        else:
            graph.add_edge(tail, head, capacity=1)
    return int(nx.maximum_flow_value(graph, s, t))


@st.composite
def small_digraphs(draw, max_vertices=6, max_arcs=12):
    n = draw(st.integers(min_value=2, max_value=max_vertices))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    arcs = draw(st.lists(pairs, max_size=max_arcs))
    s = draw(st.integers(0, n - 1))
    t = draw(st.integers(0, n - 2))
    if t >= s:
        t += 1
    return MultiDigraph(range(n), dict(enumerate(arcs))), s, t


def test_onion_flow_values(onion_instance):
    d = onion_instance.digraph
    assert mu(d, 0, 1) == 2
    assert mu(d, 1, 0) == 1
    family = max_disjoint_paths(d, 0, 1)
    assert sorted(p.arcs for p in family) == [(0,), (1,)]
    cut = min_cut(d, 0, 1)
    assert cut.size == 2 and cut.A == frozenset({0}) and cut.B == frozenset({1})


@pytest.mark.parametrize("t", [1, 2, 3])
def test_onion_star_signature(t):
    star = onion_star(t)
    d, center = star.digraph, star.marks["center"]
    assert d.num_vertices == 2 * t + 1 and d.num_arcs == 6 * t
    for y in star.marks["y"]:
        assert mu(d, center, y) == 2 and mu(d, y, center) == 1
    for z in star.marks["z"]:
        assert mu(d, z, center) == 2 and mu(d, center, z) == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_counterexample_flow_values(k):
    instance = counterexample(k)
    x, y = instance.marks["x"], instance.marks["y"]
    assert mu(instance.digraph, x, y) == k
    assert mu(instance.digraph, y, x) == k


def test_set_valued_sources_and_sinks(star2):
    d, center = star2.digraph, star2.marks["center"]
    family = max_disjoint_paths(d, center, star2.marks["y"])
    assert len(family) == 4
    assert family.sink == frozenset(star2.marks["y"])
    assert all(d.source_of(p) == center and d.target_of(p) in family.sink for p in family)
    assert mu(d, star2.marks["z"], center) == 4


def test_invalid_specs(onion_instance):
    d = onion_instance.digraph
    with pytest.raises(ContractViolation):
        mu(d, 0, 0)
    with pytest.raises(ContractViolation):
        mu(d, [0, 1], [1])
    with pytest.raises(ContractViolation):
        mu(d, [], 1)
    with pytest.raises(ContractViolation):
        min_cut(d, 0, 7)


def test_decompose_flow_drops_cycles():
    # 0→1→2→1→3 的支撑：环 1→2→1 被丢弃
    d = MultiDigraph(range(4), {0: (0, 1), 1: (1, 2), 2: (2, 1), 3: (1, 3)})
    paths = decompose_flow(d, {0, 1, 2, 3}, 0, 3)
    assert [p.arcs for p in paths] == [(0, 3)]
    with pytest.raises(ContractViolation):
        decompose_flow(d, {0, 1}, 0, 3)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_digraphs())
def test_menger_against_networkx(case):
    d, s, t = case
    family = max_disjoint_paths(d, s, t)
    assert len(family) == networkx_mu(d, s, t)
    assert are_arc_disjoint(family.paths)
    for p in family:
        assert not p.is_empty and is_simple(p, d)
        assert d.source_of(p) == s and d.target_of(p) == t
    cut = min_cut(d, s, t)
    assert cut.size == len(family)
    assert s in cut.A and t in cut.B
    assert len(boundary(d, cut.A, Direction.OUT)) == cut.size


@settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_digraphs(max_vertices=5, max_arcs=8))
def test_menger_against_brute_force(case):
    d, s, t = case
    assert mu(d, s, t) == max_disjoint_brute(d, s, t)


@pytest.mark.slow
def test_menger_duality_bulk():
    rng = np.random.default_rng(2024)
    for seed in range(10_000):
        n = int(rng.integers(2, 31))
        m = int(rng.integers(0, 3 * n))
        d = random_digraph(n, m, seed).digraph
        s, t = (int(v) for v in rng.choice(n, size=2, replace=False))
        assert len(max_disjoint_paths(d, s, t)) == min_cut(d, s, t).size
        if n <= 5 and m <= 8:
            assert mu(d, s, t) == max_disjoint_brute(d, s, t)
