"""
对偶流水线测试：二分法、连通集到洋葱星、度数受限嵌入
"""

from itertools import product

import numpy as np
import pytest

from onion_framework.config.settings import set_config
from onion_framework.core.digraph import DigraphBuilder, Path, are_arc_disjoint
from onion_framework.core.oracle import immersion_exists, verify_model
from onion_framework.core.utils import ContractViolation
from onion_framework.workflows.duality import (
    LinkedSetInstance, NoCutPipeline, embed_degree_bounded, no_cut_to_onion_star, onion_or_uncross,
)
from onion_framework.workflows.generators import counterexample, crossing_grid, onion, onion_star, random_digraph
from onion_framework.workflows.harvest import harvest_onion_star
from onion_framework.workflows.models import OnionStarModel
from onion_framework.workflows.outcomes import Inconclusive, OutcomeTag


def bundles(multiplicity: int, leaves: int = 1):
    """中心 0 与每个叶子之间各有 multiplicity 条双向平行弧"""
    builder = DigraphBuilder()
    center = builder.add_vertex()
    for leaf in builder.add_vertices(leaves):
        builder.add_parallel(center, leaf, multiplicity)
        builder.add_parallel(leaf, center, multiplicity)
    return builder.build()


# ---- 二分法 ----

def test_dichotomy_on_grid_matches_harvest(grid_7x7):
    d = grid_7x7.digraph
    Z = {d.target_of(p) for p in grid_7x7.P} | {d.source_of(q) for q in grid_7x7.Q}
    outcome = onion_or_uncross(d, grid_7x7.marks["root"], Z, 1, 1, families=(grid_7x7.P, grid_7x7.Q))
    assert outcome.tag is OutcomeTag.ONION_STAR
    expected = harvest_onion_star(grid_7x7.well_crossing_pair(), 1)
    assert outcome.star.y_leaves == expected.y_leaves
    assert outcome.star.z_leaves == expected.z_leaves
    assert verify_model(outcome.star.to_immersion_model(d))
    assert outcome.to_dict()["tag"] == "onion-star"


def test_dichotomy_uncrossed_bundles():
    d = bundles(3)
    outcome = onion_or_uncross(d, 0, {1}, 1, 2)
    assert outcome.tag is OutcomeTag.UNCROSSED
    P, Q = outcome.families
    assert len(P) == 2 and len(Q) == 2
    assert are_arc_disjoint(P + Q)
    assert all(d.source_of(p) == 0 and d.target_of(p) == 1 for p in P)
    assert all(d.source_of(q) == 1 and d.target_of(q) == 0 for q in Q)
    document = outcome.to_dict()
    assert document["tag"] == "uncrossed" and len(document["P"]) == 2


def test_dichotomy_inconclusive_when_families_are_small():
    outcome = onion_or_uncross(bundles(3), 0, {1}, 1, 4)
    assert outcome.tag is OutcomeTag.INCONCLUSIVE
    assert outcome.inconclusive.stage == "thomason"
    assert outcome.inconclusive.details["n"] == 4
    assert outcome.to_dict()["result"] == "inconclusive"


@pytest.mark.parametrize("y, Z, t, k, threshold", [
    (0, set(), 1, 1, None),
    (0, {0, 1}, 1, 1, None),
    (0, {1}, 0, 1, None),
    (0, {1}, 1, 0, None),
    (0, {1}, 1, 1, 0),
])
def test_dichotomy_contract(y, Z, t, k, threshold):
    with pytest.raises(ContractViolation):
        onion_or_uncross(bundles(2), y, Z, t, k, working_threshold=threshold)


def test_dichotomy_rejects_bad_families():
    d = bundles(2)
    forward = [Path.of(0), Path.of(1)]
    backward = [Path.of(2), Path.of(3)]
    with pytest.raises(ContractViolation):
        onion_or_uncross(d, 0, {1}, 1, 1, families=(backward, forward))
    with pytest.raises(ContractViolation):
        onion_or_uncross(d, 0, {1}, 1, 1, families=([Path.of(0), Path.of(0)], backward))


@pytest.mark.parametrize("size, k", list(product([1, 2, 3], [1, 2])))
def test_dichotomy_on_counterexample(size, k):
    instance = counterexample(size)
    d = instance.digraph
    outcome = onion_or_uncross(d, instance.marks["x"], {instance.marks["y"]}, 1, k)
    # 任意 x→y 与 y→x 路径共享瓶颈弧
    assert outcome.tag is not OutcomeTag.UNCROSSED
    if outcome.tag is OutcomeTag.ONION_STAR:
        assert verify_model(outcome.star.to_immersion_model(d))


def _dichotomy_instance(seed: int, rng):
    if seed % 2:
        orders = ["ascending", "descending", "random"]
        p, q = (int(v) for v in rng.integers(1, 8, size=2))
        grid = crossing_grid(p, q, orders[seed % 3], orders[(seed // 3) % 3], seed=seed)
        d = grid.digraph
        Z = {d.target_of(path) for path in grid.P} | {d.source_of(path) for path in grid.Q}
        families = (grid.P, grid.Q) if seed % 4 == 1 else None
        return d, grid.marks["root"], Z, families
    n = int(rng.integers(3, 8))
    m = int(rng.integers(2 * n, 5 * n + 1))
    d = random_digraph(n, m, seed).digraph
    return d, 0, {1, 2}, None


@pytest.mark.slow
def test_dichotomy_soundness_bulk():
    rng = np.random.default_rng(2024)
    for seed in range(1000):
        d, y, Z, families = _dichotomy_instance(seed, rng)
        k = 1 + seed % 2
        outcome = onion_or_uncross(d, y, Z, 1, k, families=families)
        if outcome.tag is OutcomeTag.ONION_STAR:
            assert verify_model(outcome.star.to_immersion_model(d))
        elif outcome.tag is OutcomeTag.UNCROSSED:
            P, Q = outcome.families
            assert len(P) == k and len(Q) == k
            assert are_arc_disjoint(P + Q)
            assert all(d.source_of(p) == y and d.target_of(p) in Z for p in P)
            assert all(d.source_of(q) in Z and d.target_of(q) == y for q in Q)
        else:
            assert outcome.inconclusive.stage


# ---- 连通集到洋葱星 ----

def test_no_cut_assembles_star():
    d = bundles(4, leaves=2)
    star = no_cut_to_onion_star(LinkedSetInstance(d, (2, 0, 1), 1))
    assert isinstance(star, OnionStarModel)
    assert star.center == 0
    assert star.y_leaves == [1] and star.z_leaves == [2]
    assert verify_model(star.to_immersion_model(d))


def test_no_cut_pipeline_summary():
    pipeline = NoCutPipeline(LinkedSetInstance(bundles(4, leaves=2), (0, 1, 2), 1))
    pipeline.execute()
    summary = pipeline.get_execution_summary()
    assert summary["name"] == "NoCutPipeline"
    assert summary["inconclusive_count"] == 0
    assert summary["stages"] > 0


def test_no_cut_defaults_come_from_settings():
    set_config('pipeline.budget', 5)
    set_config('pipeline.working_threshold', 3)
    pipeline = NoCutPipeline(LinkedSetInstance(bundles(4, leaves=2), (0, 1, 2), 1))
    assert pipeline.schedule(0) == 5
    assert pipeline.working_threshold == 3
    explicit = NoCutPipeline(LinkedSetInstance(bundles(4, leaves=2), (0, 1, 2), 1), budget=2, working_threshold=1)
    assert explicit.schedule(0) == 2
    assert explicit.working_threshold == 1


def test_no_cut_hypothesis_gap():
    builder = DigraphBuilder()
    builder.add_vertices(3)
    builder.add_parallel(0, 1, 4)
    builder.add_parallel(1, 0, 4)
    builder.add_parallel(0, 2, 4)
    d = builder.build()
    outcome = no_cut_to_onion_star(LinkedSetInstance(d, (0, 1, 2), 1))
    assert isinstance(outcome, Inconclusive)
    assert outcome.stage == "hypothesis"
    assert outcome.details["mu"] == 0


def test_no_cut_schedule_exhausted():
    d = bundles(4, leaves=2)
    outcome = no_cut_to_onion_star(LinkedSetInstance(d, (0, 1, 2), 1), schedule=lambda step: 2 if step == 0 else 3)
    assert isinstance(outcome, Inconclusive)
    assert outcome.stage == "schedule"


def test_no_cut_contract():
    d = bundles(4, leaves=2)
    with pytest.raises(ContractViolation):
        no_cut_to_onion_star(LinkedSetInstance(d, (0, 1), 1))
    with pytest.raises(ContractViolation):
        no_cut_to_onion_star(LinkedSetInstance(d, (0, 1, 7), 1))
    with pytest.raises(ContractViolation):
        no_cut_to_onion_star(LinkedSetInstance(d, (0, 1, 2), 1), budget=1)
    assert LinkedSetInstance(d, (2, 1, 2, 0), 1).X == (0, 1, 2)


# ---- 度数受限嵌入 ----

def test_embed_single_arc():
    builder = DigraphBuilder()
    builder.add_vertices(2)
    builder.add_arc(0, 1)
    model = embed_degree_bounded(builder.build(), 2)
    assert model.vertex_map == {0: 3, 1: 1}
    assert model.arc_map[0].arcs == (3, 0)


def test_embed_cycle():
    builder = DigraphBuilder()
    builder.add_vertices(3)
    builder.add_arc(0, 1)
    builder.add_arc(1, 2)
    builder.add_arc(2, 0)
    model = embed_degree_bounded(builder.build(), 3)
    assert model.vertex_map == {0: 4, 1: 1, 2: 5}
    assert [model.arc_map[a].arcs for a in range(3)] == [(3, 0), (2, 11), (9, 5)]


def test_embed_onion():
    model = embed_degree_bounded(onion().digraph, 2)
    assert verify_model(model)
    assert model.vertex_map == {0: 3, 1: 1}


def test_embed_contract():
    builder = DigraphBuilder()
    builder.add_vertices(2)
    builder.add_parallel(0, 1, 2)
    builder.add_parallel(1, 0, 2)
    with pytest.raises(ContractViolation) as excinfo:
        embed_degree_bounded(builder.build(), 2)
    assert excinfo.value.error_code == "DEGREE_CONDITION"
    with pytest.raises(ContractViolation):
        embed_degree_bounded(onion().digraph, 1)
    with pytest.raises(ContractViolation):
        embed_degree_bounded(onion().digraph, 0)


def _small_digraphs(n: int):
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    for counts in product(range(3), repeat=len(pairs)):
        builder = DigraphBuilder()
        builder.add_vertices(n)
        for (a, b), count in zip(pairs, counts):
            builder.add_parallel(a, b, count)
        yield builder.build()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_embed_every_admissible_small_digraph(n):
    embedded = 0
    for h in _small_digraphs(n):
        admissible = all(
            (h.out_degree(v) <= 2 and h.in_degree(v) <= 1) or (h.out_degree(v) <= 1 and h.in_degree(v) <= 2)
            for v in h.vertices)
        if not admissible:
            continue
        assert verify_model(embed_degree_bounded(h, 3))
        embedded += 1
    assert embedded > 0


@pytest.mark.slow
def test_embed_agrees_with_brute_force():
    host = onion_star(3).digraph
    for n in (1, 2, 3):
        for h in _small_digraphs(n):
            try:
                embed_degree_bounded(h, 3)
            except ContractViolation:
                continue
            assert immersion_exists(h, host) is not None
